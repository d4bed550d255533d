//! JSON encodings of complexes, polytopes, cochains and ring elements.
//!
//! All numbers cross the boundary as exact rational strings `"p/q"`. Blade
//! indices are 1-based in files and 0-based in memory. Cochain values are
//! keyed by cell id against each cell's stored orientation.

use crate::complex::{CellSpec, Cochain, CochainError, ComplexError, PComplex};
use crate::rat::{format_rat, parse_rat, ParseRatError, Rat, Vector};
use crate::ring::{ExtElement, RingElement, RingKind};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Rat(#[from] ParseRatError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error("unknown ring `{0}` (expected \"Q\" or \"ext\")")]
    UnknownRing(String),
    #[error("cochain references cell {0} outside the complex")]
    UnknownCell(String),
    #[error("blade index {0} is out of range (1-based, ambient dimension {1})")]
    BladeIndex(usize, usize),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellFile {
    pub vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orient: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub cells: Vec<CellFile>,
}

/// A bare polytope: exact vertex coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BladeTerm {
    /// 1-based, strictly increasing axis indices.
    pub blade: Vec<usize>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingElementFile {
    Scalar(String),
    Exterior(Vec<BladeTerm>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CochainFile {
    pub degree: usize,
    pub ring: String,
    pub values: BTreeMap<String, RingElementFile>,
}

pub fn parse_coords(rows: &[Vec<String>]) -> Result<Vec<Vector>, ParseRatError> {
    rows.iter()
        .map(|row| row.iter().map(|s| parse_rat(s)).collect())
        .collect()
}

pub fn format_coords(rows: &[Vector]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|row| row.iter().map(format_rat).collect())
        .collect()
}

pub fn complex_from_file(file: &ComplexFile) -> Result<Arc<PComplex>, JsonError> {
    let vertices = parse_coords(&file.vertices)?;
    let cells = file
        .cells
        .iter()
        .map(|c| CellSpec {
            vertices: c.vertices.clone(),
            orient: c.orient.clone(),
        })
        .collect();
    Ok(PComplex::build(file.dim, vertices, cells)?)
}

pub fn complex_to_file(x: &PComplex) -> ComplexFile {
    ComplexFile {
        dim: x.dim(),
        vertices: format_coords(x.vertices()),
        cells: x
            .cell_ids()
            .map(|c| CellFile {
                vertices: x.cell(c).vertices.clone(),
                orient: Some(x.cell(c).orient.clone()),
            })
            .collect(),
    }
}

pub fn ring_element_to_file(v: &RingElement) -> RingElementFile {
    match v {
        RingElement::Scalar(c) => RingElementFile::Scalar(format_rat(c)),
        RingElement::Exterior(e) => RingElementFile::Exterior(
            e.terms()
                .map(|(blade, c)| BladeTerm {
                    blade: blade.iter().map(|i| i + 1).collect(),
                    coeff: format_rat(c),
                })
                .collect(),
        ),
    }
}

pub fn ring_element_from_file(
    file: &RingElementFile,
    ring: RingKind,
) -> Result<RingElement, JsonError> {
    match (file, ring) {
        (RingElementFile::Scalar(s), RingKind::Rational) => Ok(RingElement::Scalar(parse_rat(s)?)),
        (RingElementFile::Exterior(terms), RingKind::Exterior(n)) => {
            let mut e = ExtElement::zero(n);
            for t in terms {
                let mut blade = Vec::with_capacity(t.blade.len());
                for &i in &t.blade {
                    if i == 0 || i > n {
                        return Err(JsonError::BladeIndex(i, n));
                    }
                    blade.push(i - 1);
                }
                e = e.add(&ExtElement::term(n, blade, parse_rat(&t.coeff)?));
            }
            Ok(RingElement::Exterior(e))
        }
        (RingElementFile::Scalar(_), k) => Err(JsonError::UnknownRing(format!(
            "scalar value in a cochain declared as {k}"
        ))),
        (RingElementFile::Exterior(_), k) => Err(JsonError::UnknownRing(format!(
            "exterior value in a cochain declared as {k}"
        ))),
    }
}

pub fn ring_kind_from_name(name: &str, ambient: usize) -> Result<RingKind, JsonError> {
    match name {
        "Q" => Ok(RingKind::Rational),
        "ext" => Ok(RingKind::Exterior(ambient)),
        other => Err(JsonError::UnknownRing(other.to_string())),
    }
}

pub fn ring_kind_name(ring: RingKind) -> &'static str {
    match ring {
        RingKind::Rational => "Q",
        RingKind::Exterior(_) => "ext",
    }
}

pub fn cochain_from_file(file: &CochainFile, x: &Arc<PComplex>) -> Result<Cochain, JsonError> {
    let ring = ring_kind_from_name(&file.ring, x.dim())?;
    let mut r = Cochain::zero(x, file.degree, ring);
    for (key, value) in &file.values {
        let cell: usize = key
            .parse()
            .map_err(|_| JsonError::UnknownCell(key.clone()))?;
        if cell >= x.num_cells() {
            return Err(JsonError::UnknownCell(key.clone()));
        }
        r.set(cell, ring_element_from_file(value, ring)?)?;
    }
    Ok(r)
}

pub fn cochain_to_file(r: &Cochain) -> CochainFile {
    CochainFile {
        degree: r.degree(),
        ring: ring_kind_name(r.ring()).to_string(),
        values: r
            .values()
            .map(|(c, v)| (c.to_string(), ring_element_to_file(v)))
            .collect(),
    }
}

pub fn covector_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}
