//! Command-line front end: load complexes and cochains from JSON, run
//! products, volumes, discriminant analysis and cross-checks.
//!
//! Exit codes: 0 success, 1 usage/parse errors, 2 validation or convenience
//! failures, 3 internal cross-check mismatches.

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use polycup_core::complex::{CoboundaryWitness, PComplex};
use polycup_core::cup::{cech_cup, cup, sample_convenient, vertex_order_by_covector};
use polycup_core::discriminant::{discriminant, wall_crossing_delta};
use polycup_core::geom::{mixed_volume_by_inclusion_exclusion, mixed_volume_on, volume_by_cup};
use polycup_core::json::{
    cochain_from_file, cochain_to_file, complex_from_file, covector_to_strings, parse_coords,
    ring_kind_name, CochainFile, ComplexFile, PolytopeFile,
};
use polycup_core::rat::{parse_vector, Vector};
use polycup_core::subdivision::{build_subdivision, res, res_product_defect};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "polycup",
    version,
    about = "Exact cup products on polyhedral complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Covector parameter as comma-separated rationals, e.g. "1,-3/2"
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    /// Sample a convenient covector deterministically from this seed
    #[arg(long, conflicts_with = "v")]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the complex axioms of a complex file
    Validate { complex: PathBuf },
    /// Multiply two cochains with a convenient parameter
    Product {
        complex: PathBuf,
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        param: ParamArgs,
        /// Require both cochains to use this ring ("Q" or "ext")
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact volume of a polytope by iterated products, cross-checked
    Volume {
        polytope: PathBuf,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normalized mixed volume of n polytopes in dimension n
    MixedVolume {
        summands: Vec<PathBuf>,
        #[command(flatten)]
        param: ParamArgs,
        /// Cross-check against the inclusion-exclusion oracle
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The discriminant hyperplanes and their generating triples
    Discriminant {
        complex: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Wall-crossing correction for two cocycles across one wall
    Wallcross {
        complex: PathBuf,
        a: PathBuf,
        b: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the parameterized product with the ordered-vertex product
    CechCheck {
        complex: PathBuf,
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Push cochains from a subdivision to the coarse complex; with two
    /// cochains and a parameter, emit the product defect and its witness
    Res {
        fine: PathBuf,
        coarse: PathBuf,
        #[arg(required = true, num_args = 1..=2)]
        cochains: Vec<PathBuf>,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rational cohomology ranks of a complex
    Cohomology {
        complex: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failed run: report payload plus the exit code.
struct Failure {
    code: u8,
    report: serde_json::Value,
}

fn usage_failure(err: anyhow::Error) -> Failure {
    Failure {
        code: 1,
        report: json!({ "error": format!("{err:#}") }),
    }
}

fn domain_failure(message: String) -> Failure {
    Failure {
        code: 2,
        report: json!({ "error": message }),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_complex(path: &Path) -> std::result::Result<Arc<PComplex>, Failure> {
    let file: ComplexFile = read_json(path).map_err(usage_failure)?;
    complex_from_file(&file).map_err(|e| match e {
        polycup_core::json::JsonError::Json(_) | polycup_core::json::JsonError::Rat(_) => {
            usage_failure(anyhow!(e))
        }
        other => domain_failure(other.to_string()),
    })
}

fn load_cochain(
    path: &Path,
    x: &Arc<PComplex>,
) -> std::result::Result<polycup_core::complex::Cochain, Failure> {
    let file: CochainFile = read_json(path).map_err(usage_failure)?;
    cochain_from_file(&file, x).map_err(|e| domain_failure(e.to_string()))
}

fn load_polytope(path: &Path) -> std::result::Result<Vec<Vector>, Failure> {
    let file: PolytopeFile = read_json(path).map_err(usage_failure)?;
    parse_coords(&file.vertices).map_err(|e| usage_failure(anyhow!(e)))
}

fn resolve_parameter(param: &ParamArgs, x: &Arc<PComplex>) -> std::result::Result<Vector, Failure> {
    match (&param.v, param.seed) {
        (Some(text), None) => {
            let v = parse_vector(text).map_err(|e| usage_failure(anyhow!(e)))?;
            if v.len() != x.dim() {
                return Err(usage_failure(anyhow!(
                    "covector has {} coordinates, ambient dimension is {}",
                    v.len(),
                    x.dim()
                )));
            }
            Ok(v)
        }
        (None, Some(seed)) => sample_convenient(x, seed).map_err(|e| domain_failure(e.to_string())),
        _ => Err(usage_failure(anyhow!(
            "exactly one of --v or --seed is required"
        ))),
    }
}

fn emit(report: &serde_json::Value, out: Option<&Path>) -> Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(report)?);
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run(command: &Command) -> std::result::Result<(serde_json::Value, Option<PathBuf>), Failure> {
    match command {
        Command::Validate { complex } => {
            let x = load_complex(complex)?;
            let by_dim: Vec<usize> = (0..=x.max_dim()).map(|p| x.cells_of_dim(p).len()).collect();
            Ok((
                json!({
                    "valid": true,
                    "dim": x.dim(),
                    "cells": x.num_cells(),
                    "cells_by_dim": by_dim,
                }),
                None,
            ))
        }
        Command::Product {
            complex,
            a,
            b,
            param,
            ring,
            out,
        } => {
            let x = load_complex(complex)?;
            let ra = load_cochain(a, &x)?;
            let rb = load_cochain(b, &x)?;
            if let Some(name) = ring {
                for r in [&ra, &rb] {
                    if ring_kind_name(r.ring()) != name {
                        return Err(domain_failure(format!(
                            "cochain ring {} does not match --ring {name}",
                            ring_kind_name(r.ring())
                        )));
                    }
                }
            }
            let v = resolve_parameter(param, &x)?;
            let product = cup(&ra, &rb, &v).map_err(|e| domain_failure(e.to_string()))?;
            Ok((
                json!({
                    "v": covector_to_strings(&v),
                    "product": cochain_to_file(&product),
                }),
                out.clone(),
            ))
        }
        Command::Volume {
            polytope,
            param,
            out,
        } => {
            let points = load_polytope(polytope)?;
            let x = polycup_core::geom::face_complex(&points)
                .map_err(|e| domain_failure(e.to_string()))?;
            let v = resolve_parameter(param, &x)?;
            let (by_cup, by_triangulation) =
                volume_by_cup(&points, &v).map_err(|e| domain_failure(e.to_string()))?;
            let report = json!({
                "v": covector_to_strings(&v),
                "volume": polycup_core::rat::format_rat(&by_cup),
                "volume_by_triangulation": polycup_core::rat::format_rat(&by_triangulation),
            });
            if by_cup != by_triangulation {
                return Err(Failure { code: 3, report });
            }
            Ok((report, out.clone()))
        }
        Command::MixedVolume {
            summands,
            param,
            verify,
            out,
        } => {
            if summands.is_empty() {
                return Err(usage_failure(anyhow!("at least one summand file required")));
            }
            let polys: Vec<Vec<Vector>> = summands
                .iter()
                .map(|p| load_polytope(p))
                .collect::<std::result::Result<_, _>>()?;
            let (x, label) = polycup_core::geom::minkowski_sum_complex(&polys)
                .map_err(|e| domain_failure(e.to_string()))?;
            let v = resolve_parameter(param, &x)?;
            let value = mixed_volume_on(&x, &label, polys.len(), &v)
                .map_err(|e| domain_failure(e.to_string()))?;
            let mut report = json!({
                "v": covector_to_strings(&v),
                "mixed_volume": polycup_core::rat::format_rat(&value),
            });
            if *verify {
                let oracle = mixed_volume_by_inclusion_exclusion(&polys)
                    .map_err(|e| domain_failure(e.to_string()))?;
                report["polarization_check"] = json!(polycup_core::rat::format_rat(&oracle));
                if oracle != value {
                    return Err(Failure { code: 3, report });
                }
            }
            Ok((report, out.clone()))
        }
        Command::Discriminant { complex, out } => {
            let x = load_complex(complex)?;
            let hyperplanes: Vec<serde_json::Value> = discriminant(&x)
                .iter()
                .map(|h| {
                    json!({
                        "normal": covector_to_strings(&h.line),
                        "triples": h.triples.iter().map(|t| {
                            json!({ "delta": t.delta, "lambda": t.lambda, "gamma": t.gamma })
                        }).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok((json!({ "hyperplanes": hyperplanes }), out.clone()))
        }
        Command::Wallcross {
            complex,
            a,
            b,
            u,
            v,
            out,
        } => {
            let x = load_complex(complex)?;
            let ra = load_cochain(a, &x)?;
            let rb = load_cochain(b, &x)?;
            let u = parse_vector(u).map_err(|e| usage_failure(anyhow!(e)))?;
            let v = parse_vector(v).map_err(|e| usage_failure(anyhow!(e)))?;
            let correction =
                wall_crossing_delta(&ra, &rb, &u, &v).map_err(|e| domain_failure(e.to_string()))?;
            let jump = cup(&ra, &rb, &v)
                .and_then(|pv| Ok(pv.sub(&cup(&ra, &rb, &u)?)))
                .map_err(|e| domain_failure(e.to_string()))?;
            let verified = correction == jump;
            let report = json!({
                "u": covector_to_strings(&u),
                "v": covector_to_strings(&v),
                "correction": cochain_to_file(&correction),
                "identity_verified": verified,
            });
            if !verified {
                return Err(Failure { code: 3, report });
            }
            Ok((report, out.clone()))
        }
        Command::CechCheck {
            complex,
            a,
            b,
            param,
            out,
        } => {
            let x = load_complex(complex)?;
            let ra = load_cochain(a, &x)?;
            let rb = load_cochain(b, &x)?;
            let v = resolve_parameter(param, &x)?;
            let by_cup = cup(&ra, &rb, &v).map_err(|e| domain_failure(e.to_string()))?;
            let order = vertex_order_by_covector(&x, &v);
            let by_cech = cech_cup(&ra, &rb, &order).map_err(|e| domain_failure(e.to_string()))?;
            let equal = by_cup == by_cech;
            let report = json!({
                "v": covector_to_strings(&v),
                "equal": equal,
                "cup": cochain_to_file(&by_cup),
                "cech": cochain_to_file(&by_cech),
            });
            if !equal {
                return Err(Failure { code: 3, report });
            }
            Ok((report, out.clone()))
        }
        Command::Res {
            fine,
            coarse,
            cochains,
            param,
            out,
        } => {
            let x = load_complex(fine)?;
            let y = load_complex(coarse)?;
            let map = build_subdivision(&x, &y).map_err(|e| domain_failure(e.to_string()))?;
            match cochains.as_slice() {
                [single] => {
                    let r = load_cochain(single, &x)?;
                    Ok((
                        json!({ "res": cochain_to_file(&res(&r, &map)) }),
                        out.clone(),
                    ))
                }
                [first, second] => {
                    let ra = load_cochain(first, &x)?;
                    let rb = load_cochain(second, &x)?;
                    let v = resolve_parameter(param, &x)?;
                    let (defect, witness) = res_product_defect(&ra, &rb, &v, &map)
                        .map_err(|e| domain_failure(e.to_string()))?;
                    let witness_json = match &witness {
                        CoboundaryWitness::Witness(w) => json!(cochain_to_file(w)),
                        CoboundaryWitness::ZeroInDegreeZero => json!(null),
                        CoboundaryWitness::No => json!(null),
                    };
                    Ok((
                        json!({
                            "v": covector_to_strings(&v),
                            "defect": cochain_to_file(&defect),
                            "is_coboundary": witness.is_coboundary(),
                            "witness": witness_json,
                        }),
                        out.clone(),
                    ))
                }
                _ => Err(usage_failure(anyhow!("res takes one or two cochain files"))),
            }
        }
        Command::Cohomology { complex, out } => {
            let x = load_complex(complex)?;
            let ranks: Vec<usize> = (0..=x.max_dim()).map(|p| x.cohomology_rank(p)).collect();
            Ok((json!({ "ranks": ranks }), out.clone()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((report, out)) => {
            if let Err(e) = emit(&report, out.as_deref()) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let _ = emit(&failure.report, None);
            ExitCode::from(failure.code)
        }
    }
}
