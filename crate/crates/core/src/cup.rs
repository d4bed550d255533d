//! The parameterized cup product of cochains.
//!
//! For a covector parameter `v` and a cell `g` of dimension `p + q`, the
//! product pairs faces `(f, l)` of dimensions `(p, q)` whose dual cones,
//! after shifting the first by the projection of `v`, meet in a single
//! interior point of both. The product of cochains sums the (signed) ring
//! products of their values over this pair set. The parameter is admissible
//! ("convenient") when every such intersection across the complex is
//! transversal and away from all cone boundaries; this module decides that
//! exactly and samples convenient parameters deterministically.

use crate::complex::{same_complex, Cochain, PComplex};
use crate::lp;
use crate::rat::{det_sign, dot, rank, solve_affine, Matrix, Rat, Vector};
use crate::ring::RingElement;
use num::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

/// How a parameter fails to be convenient at one face pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// The shifted cone of `delta` meets the cone of `lambda` in a
    /// positive-dimensional set (their tangent spans overlap).
    NonTransversal,
    /// An intersection point lands on the relative boundary of a cone.
    Boundary,
}

/// Witness of a convenience failure: the cell and face pair where the
/// transversality test failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvenienceFailure {
    pub cell: usize,
    pub delta: usize,
    pub lambda: usize,
    pub kind: FailureKind,
}

/// Verdict of the convenience check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvenienceReport {
    Convenient,
    NotConvenient(ConvenienceFailure),
}

impl ConvenienceReport {
    pub fn is_convenient(&self) -> bool {
        matches!(self, ConvenienceReport::Convenient)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CupError {
    #[error("parameter is not convenient at cell {} (faces {}, {}; {:?})",
            .0.cell, .0.delta, .0.lambda, .0.kind)]
    NotConvenient(ConvenienceFailure),
    #[error("cochains live on different complexes")]
    ComplexMismatch,
    #[error("cochains have different coefficient rings")]
    RingMismatch,
    #[error("covector has wrong dimension")]
    CovectorDimension,
    #[error("complex is not simplicial")]
    NotSimplicial,
    #[error("vertex order must be a permutation of all vertices")]
    BadVertexOrder,
    #[error("no convenient covector found within the retry budget")]
    SampleExhausted,
}

/// One entry of a pair set: an ordered face pair, its orientation sign, and
/// the intersection point in the cell's dual coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairEntry {
    pub delta: usize,
    pub lambda: usize,
    pub sign: i32,
    pub point: Vector,
}

/// The signed face pairs driving the product on one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    pub cell: usize,
    pub p: usize,
    pub q: usize,
    pub entries: Vec<PairEntry>,
}

/// Dimension of the intersection of the tangent spaces of two cells.
pub(crate) fn tangent_intersection_dim(x: &PComplex, a: usize, b: usize) -> usize {
    let mut rows = x.cell(a).tangent.clone();
    rows.extend(x.cell(b).tangent.iter().cloned());
    let joint = rank(&Matrix::new(rows, x.dim()));
    x.cell(a).dim + x.cell(b).dim - joint
}

/// Is `(pi + cone(delta)) meet cone(lambda)` non-empty (closed cones, inside
/// the fan of `cell`)?
pub(crate) fn shifted_cones_intersect(
    x: &PComplex,
    cell: usize,
    delta: usize,
    lambda: usize,
    pi: &[Rat],
) -> bool {
    let m = x.cell(cell).dim;
    let fan = x.fan(cell);
    let mut cons = fan.cone(delta).constraints(Some(pi), m);
    cons.extend(fan.cone(lambda).constraints(None, m));
    lp::feasible_point(m, &cons).is_some()
}

/// Scan one cell for convenience violations of the level `(p, q)`: every
/// face pair within the shifted-q-skeleton / p-skeleton ranges whose tangent
/// spans overlap must have disjoint cones.
fn convenience_violation(
    x: &PComplex,
    cell: usize,
    p: usize,
    q: usize,
    v: &[Rat],
) -> Option<ConvenienceFailure> {
    let m = x.cell(cell).dim;
    let pi = x.project_covector(cell, v);
    let min_delta = m.saturating_sub(q);
    let min_lambda = m.saturating_sub(p);
    for &delta in x.closure(cell) {
        if x.cell(delta).dim < min_delta {
            continue;
        }
        for &lambda in x.closure(cell) {
            if x.cell(lambda).dim < min_lambda {
                continue;
            }
            if tangent_intersection_dim(x, delta, lambda) == 0 {
                continue;
            }
            if shifted_cones_intersect(x, cell, delta, lambda, &pi) {
                let kind = if x.cell(delta).dim + x.cell(lambda).dim == m {
                    FailureKind::NonTransversal
                } else {
                    FailureKind::Boundary
                };
                return Some(ConvenienceFailure {
                    cell,
                    delta,
                    lambda,
                    kind,
                });
            }
        }
    }
    None
}

/// Eagerly decide whether `v` is convenient for every requested `(p, q)`
/// level across the whole complex.
pub fn is_convenient(x: &PComplex, v: &[Rat], levels: &[(usize, usize)]) -> ConvenienceReport {
    assert_eq!(v.len(), x.dim(), "covector has ambient dimension");
    for cell in x.cell_ids() {
        let m = x.cell(cell).dim;
        let pi = x.project_covector(cell, v);
        // One feasibility query per overlapping face pair, shared by all
        // levels that involve the pair.
        let mut cache: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        for &(p, q) in levels {
            let min_delta = m.saturating_sub(q);
            let min_lambda = m.saturating_sub(p);
            for &delta in x.closure(cell) {
                if x.cell(delta).dim < min_delta {
                    continue;
                }
                for &lambda in x.closure(cell) {
                    if x.cell(lambda).dim < min_lambda {
                        continue;
                    }
                    if tangent_intersection_dim(x, delta, lambda) == 0 {
                        continue;
                    }
                    let hit = *cache
                        .entry((delta, lambda))
                        .or_insert_with(|| shifted_cones_intersect(x, cell, delta, lambda, &pi));
                    if hit {
                        let kind = if x.cell(delta).dim + x.cell(lambda).dim == m {
                            FailureKind::NonTransversal
                        } else {
                            FailureKind::Boundary
                        };
                        return ConvenienceReport::NotConvenient(ConvenienceFailure {
                            cell,
                            delta,
                            lambda,
                            kind,
                        });
                    }
                }
            }
        }
    }
    ConvenienceReport::Convenient
}

/// All degree levels relevant to a complex: `p + q` up to the top cell
/// dimension.
pub fn all_levels(x: &PComplex) -> Vec<(usize, usize)> {
    let k = x.max_dim();
    let mut levels = Vec::new();
    for p in 0..=k {
        for q in 0..=k - p {
            levels.push((p, q));
        }
    }
    levels
}

/// Draw integer covectors from a growing box until one is convenient for
/// every level. Deterministic for a fixed seed.
pub fn sample_convenient(x: &PComplex, seed: u64) -> Result<Vector, CupError> {
    sample_convenient_for(x, seed, &all_levels(x))
}

/// Same as `sample_convenient`, restricted to the given levels.
pub fn sample_convenient_for(
    x: &PComplex,
    seed: u64,
    levels: &[(usize, usize)],
) -> Result<Vector, CupError> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..256u32 {
        let half_box = 8i64 << (attempt / 32);
        let v: Vector = (0..x.dim())
            .map(|_| crate::rat::rat_int(rng.gen_range(-half_box..=half_box)))
            .collect();
        if v.iter().all(Rat::is_zero) {
            continue;
        }
        if is_convenient(x, &v, levels).is_convenient() {
            return Ok(v);
        }
    }
    Err(CupError::SampleExhausted)
}

/// The pair set of one cell for degrees `(p, q)` and parameter `v`.
///
/// Fails with the exact witnessing pair when `v` is not convenient on this
/// cell. An intersection point on a cone's relative boundary is an error,
/// never silently included or dropped.
pub fn pair_set(
    x: &PComplex,
    cell: usize,
    p: usize,
    q: usize,
    v: &[Rat],
) -> Result<PairSet, CupError> {
    let m = x.cell(cell).dim;
    assert_eq!(p + q, m, "pair_set needs p + q = dim cell");
    assert_eq!(v.len(), x.dim(), "covector has ambient dimension");
    if let Some(failure) = convenience_violation(x, cell, p, q, v) {
        return Err(CupError::NotConvenient(failure));
    }

    let pi = x.project_covector(cell, v);
    let fan = x.fan(cell);
    let mut entries = Vec::new();
    for &delta in x.closure(cell) {
        if x.cell(delta).dim != p {
            continue;
        }
        let delta_coords = crate::fan::face_tangent_coords(x, cell, delta);
        for &lambda in x.closure(cell) {
            if x.cell(lambda).dim != q {
                continue;
            }
            if tangent_intersection_dim(x, delta, lambda) != 0 {
                continue; // scanned above: cones are disjoint
            }
            let lambda_coords = crate::fan::face_tangent_coords(x, cell, lambda);
            // unique point of (pi + aff cone(delta)) meet aff cone(lambda)
            let mut rows = Vec::with_capacity(m);
            let mut rhs = Vec::with_capacity(m);
            for c in &delta_coords {
                rhs.push(dot(c, &pi));
                rows.push(c.clone());
            }
            for c in &lambda_coords {
                rhs.push(Rat::zero());
                rows.push(c.clone());
            }
            let sol = solve_affine(&Matrix::new(rows, m), &rhs)
                .expect("complementary spans give a consistent square system");
            debug_assert!(sol.nullspace.is_empty());
            let point = sol.particular;
            let in_shifted = {
                let offset = crate::rat::vec_sub(&point, &pi);
                fan.cone(delta).contains(&offset)
            };
            let in_target = fan.cone(lambda).contains(&point);
            if !in_shifted || !in_target {
                continue;
            }
            let strict = {
                let offset = crate::rat::vec_sub(&point, &pi);
                fan.cone(delta).contains_strict(&offset) && fan.cone(lambda).contains_strict(&point)
            };
            if !strict {
                // unreachable after a clean scan; refuse rather than guess
                return Err(CupError::NotConvenient(ConvenienceFailure {
                    cell,
                    delta,
                    lambda,
                    kind: FailureKind::Boundary,
                }));
            }
            let mut cols = delta_coords.clone();
            cols.extend(lambda_coords.iter().cloned());
            let sign = det_sign(&Matrix::from_cols(&cols));
            debug_assert!(sign != 0);
            entries.push(PairEntry {
                delta,
                lambda,
                sign,
                point,
            });
        }
    }
    Ok(PairSet {
        cell,
        p,
        q,
        entries,
    })
}

fn check_compatible(r: &Cochain, s: &Cochain, v: &[Rat]) -> Result<(), CupError> {
    if !same_complex(r.complex(), s.complex()) {
        return Err(CupError::ComplexMismatch);
    }
    if r.ring() != s.ring() {
        return Err(CupError::RingMismatch);
    }
    if v.len() != r.complex().dim() {
        return Err(CupError::CovectorDimension);
    }
    Ok(())
}

/// The parameterized product: on each `(p + q)`-cell, the signed sum of ring
/// products of the two cochains over the pair set.
pub fn cup(r: &Cochain, s: &Cochain, v: &[Rat]) -> Result<Cochain, CupError> {
    check_compatible(r, s, v)?;
    let x = Arc::clone(r.complex());
    let (p, q) = (r.degree(), s.degree());
    let mut out = Cochain::zero(&x, p + q, r.ring());
    for &cell in x.cells_of_dim(p + q) {
        let pairs = pair_set(&x, cell, p, q, v)?;
        let mut acc = RingElement::zero(r.ring());
        for e in &pairs.entries {
            let term = r.value(e.delta).mul(&s.value(e.lambda)).expect("same ring");
            acc = acc.add(&term.signed(e.sign)).expect("same ring");
        }
        out.set(cell, acc).expect("degree and ring fixed");
    }
    Ok(out)
}

/// Total order of vertex ids by ascending value of the covector, ties broken
/// by id (ties never occur inside one cell for a convenient covector).
pub fn vertex_order_by_covector(x: &PComplex, v: &[Rat]) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..x.vertices().len()).collect();
    ids.sort_by(|&a, &b| {
        dot(v, x.vertex(a))
            .cmp(&dot(v, x.vertex(b)))
            .then(a.cmp(&b))
    });
    ids
}

/// The classical front-face/back-face product on a simplicial complex with
/// totally ordered vertices: on the simplex `[u_0 .. u_{p+q}]` (vertices
/// ascending) the value is `r([u_0 .. u_p]) s([u_p .. u_{p+q}])`.
pub fn cech_cup(r: &Cochain, s: &Cochain, order: &[usize]) -> Result<Cochain, CupError> {
    if !same_complex(r.complex(), s.complex()) {
        return Err(CupError::ComplexMismatch);
    }
    if r.ring() != s.ring() {
        return Err(CupError::RingMismatch);
    }
    let x = Arc::clone(r.complex());
    if !x.is_simplicial() {
        return Err(CupError::NotSimplicial);
    }
    let nv = x.vertices().len();
    let mut rank_of = vec![usize::MAX; nv];
    if order.len() != nv {
        return Err(CupError::BadVertexOrder);
    }
    for (i, &id) in order.iter().enumerate() {
        if id >= nv || rank_of[id] != usize::MAX {
            return Err(CupError::BadVertexOrder);
        }
        rank_of[id] = i;
    }
    let (p, q) = (r.degree(), s.degree());
    let mut out = Cochain::zero(&x, p + q, r.ring());
    for &cell in x.cells_of_dim(p + q) {
        let mut verts = x.cell(cell).vertices.clone();
        verts.sort_by_key(|&u| rank_of[u]);
        let front = &verts[..=p];
        let back = &verts[p..];
        let front_cell = x.cell_id_by_vertices(front).expect("simplicial closure");
        let back_cell = x.cell_id_by_vertices(back).expect("simplicial closure");
        let term = r
            .value_on(front_cell, front)
            .mul(&s.value_on(back_cell, back))
            .expect("same ring");
        out.set(cell, term.signed(x.orientation_sign(cell, &verts)))
            .expect("degree and ring fixed");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rat::vec_int;
    use crate::ring::{Parity, RingKind};

    fn square_with_ids() -> (Arc<PComplex>, BTreeMap<&'static str, usize>) {
        let x = fixtures::square();
        let mut ids = BTreeMap::new();
        ids.insert("bottom", x.cell_id_by_vertices(&[0, 1]).unwrap());
        ids.insert("right", x.cell_id_by_vertices(&[1, 2]).unwrap());
        ids.insert("top", x.cell_id_by_vertices(&[2, 3]).unwrap());
        ids.insert("left", x.cell_id_by_vertices(&[0, 3]).unwrap());
        ids.insert("sq", x.cell_id_by_vertices(&[0, 1, 2, 3]).unwrap());
        (x, ids)
    }

    #[test]
    fn square_pair_set_for_v_1_2() {
        let (x, ids) = square_with_ids();
        let pairs = pair_set(&x, ids["sq"], 1, 1, &vec_int(&[1, 2])).unwrap();
        let set: Vec<(usize, usize)> = pairs.entries.iter().map(|e| (e.delta, e.lambda)).collect();
        assert_eq!(set.len(), 2);
        assert!(set.contains(&(ids["bottom"], ids["right"])));
        assert!(set.contains(&(ids["left"], ids["top"])));
    }

    #[test]
    fn degree_zero_pairs_with_the_minimizing_vertex() {
        let (x, ids) = square_with_ids();
        let v = vec_int(&[1, 2]);
        let pairs = pair_set(&x, ids["sq"], 0, 2, &v).unwrap();
        assert_eq!(pairs.entries.len(), 1);
        let e = &pairs.entries[0];
        // v attains its minimum over the square at the origin, vertex 0
        assert_eq!(e.delta, x.vertex_cell_id(0).unwrap());
        assert_eq!(e.lambda, ids["sq"]);
        // and with v = (-1, -2) the minimizing vertex is (1, 1)
        let pairs = pair_set(&x, ids["sq"], 0, 2, &vec_int(&[-1, -2])).unwrap();
        assert_eq!(pairs.entries[0].delta, x.vertex_cell_id(2).unwrap());
    }

    #[test]
    fn simplex_pair_set_is_a_singleton_with_ordered_values() {
        for (x, top) in [
            (fixtures::triangle(), vec![0usize, 1, 2]),
            (fixtures::tetrahedron(), vec![0, 1, 2, 3]),
        ] {
            let cell = x.cell_id_by_vertices(&top).unwrap();
            let d = x.cell(cell).dim;
            for seed in 0..3u64 {
                let v = sample_convenient(&x, 100 + seed).unwrap();
                for p in 0..=d {
                    let q = d - p;
                    let pairs = pair_set(&x, cell, p, q, &v).unwrap();
                    assert_eq!(pairs.entries.len(), 1, "simplex pair set is a singleton");
                    let e = &pairs.entries[0];
                    let max_delta = x
                        .cell(e.delta)
                        .vertices
                        .iter()
                        .map(|&u| dot(&v, x.vertex(u)))
                        .max()
                        .unwrap();
                    let min_lambda = x
                        .cell(e.lambda)
                        .vertices
                        .iter()
                        .map(|&u| dot(&v, x.vertex(u)))
                        .min()
                        .unwrap();
                    assert!(max_delta <= min_lambda, "v-order property");
                }
            }
        }
    }

    #[test]
    fn convenience_examples_on_the_square() {
        let x = fixtures::square();
        assert!(is_convenient(&x, &vec_int(&[1, 2]), &[(1, 1)]).is_convenient());
        // orthogonal to the vertical edges: parallel shifted rays
        match is_convenient(&x, &vec_int(&[1, 0]), &[(1, 1)]) {
            ConvenienceReport::NotConvenient(f) => {
                assert_eq!(x.cell(f.delta).dim.max(x.cell(f.lambda).dim), 1);
            }
            ConvenienceReport::Convenient => panic!("(1,0) must not be convenient"),
        }
        assert!(!is_convenient(&x, &vec_int(&[0, 0]), &[(1, 1)]).is_convenient());
    }

    #[test]
    fn sampling_is_deterministic_and_convenient() {
        let x = fixtures::square();
        let a = sample_convenient(&x, 1).unwrap();
        let b = sample_convenient(&x, 1).unwrap();
        assert_eq!(a, b);
        assert!(is_convenient(&x, &a, &all_levels(&x)).is_convenient());
        let c = sample_convenient(&x, 2).unwrap();
        assert!(is_convenient(&x, &c, &all_levels(&x)).is_convenient());
    }

    #[test]
    fn unit_and_zero_cochains() {
        let x = fixtures::square();
        let mut rng = fixtures::rng(41);
        let v = sample_convenient(&x, 7).unwrap();
        for ring in [RingKind::Rational, RingKind::Exterior(2)] {
            let mut unit = Cochain::zero(&x, 0, ring);
            for &c in x.cells_of_dim(0) {
                unit.set(c, RingElement::one(ring)).unwrap();
            }
            for degree in 0..=2 {
                let r = fixtures::random_cochain(&x, degree, ring, &mut rng);
                assert_eq!(cup(&unit, &r, &v).unwrap(), r, "left unit");
                let zero = Cochain::zero(&x, 0, ring);
                assert!(cup(&zero, &r, &v).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn cup_of_incompatible_cochains_fails() {
        let x = fixtures::square();
        let y = fixtures::triangle();
        let v = vec_int(&[1, 2]);
        let a = Cochain::zero(&x, 1, RingKind::Rational);
        let b = Cochain::zero(&y, 1, RingKind::Rational);
        assert_eq!(cup(&a, &b, &v), Err(CupError::ComplexMismatch));
        let c = Cochain::zero(&x, 1, RingKind::Exterior(2));
        assert_eq!(cup(&a, &c, &v), Err(CupError::RingMismatch));
    }

    #[test]
    fn cech_on_the_triangle_is_the_front_back_formula() {
        let x = fixtures::triangle();
        let mut rng = fixtures::rng(43);
        let r = fixtures::random_cochain(&x, 1, RingKind::Rational, &mut rng);
        let s = fixtures::random_cochain(&x, 1, RingKind::Rational, &mut rng);
        let order = vec![0, 1, 2];
        let prod = cech_cup(&r, &s, &order).unwrap();
        let t = x.cell_id_by_vertices(&[0, 1, 2]).unwrap();
        let e01 = x.cell_id_by_vertices(&[0, 1]).unwrap();
        let e12 = x.cell_id_by_vertices(&[1, 2]).unwrap();
        let expect = r
            .value_on(e01, &[0, 1])
            .mul(&s.value_on(e12, &[1, 2]))
            .unwrap()
            .signed(x.orientation_sign(t, &[0, 1, 2]));
        assert_eq!(prod.value(t), expect);

        // degenerate split p = 0: first vertex times the whole simplex
        let r0 = fixtures::random_cochain(&x, 0, RingKind::Rational, &mut rng);
        let s2 = fixtures::random_cochain(&x, 2, RingKind::Rational, &mut rng);
        let prod = cech_cup(&r0, &s2, &order).unwrap();
        let expect = r0
            .value(x.vertex_cell_id(0).unwrap())
            .mul(&s2.value_on(t, &[0, 1, 2]))
            .unwrap()
            .signed(x.orientation_sign(t, &[0, 1, 2]));
        assert_eq!(prod.value(t), expect);
    }

    #[test]
    fn cech_rejects_non_simplicial_complexes() {
        let x = fixtures::square();
        let r = Cochain::zero(&x, 1, RingKind::Rational);
        assert_eq!(
            cech_cup(&r, &r, &[0, 1, 2, 3]),
            Err(CupError::NotSimplicial)
        );
    }

    #[test]
    fn cech_agrees_with_cup_under_ascending_order() {
        let mut rng = fixtures::rng(47);
        for x in [
            fixtures::triangle(),
            fixtures::tetra_boundary(),
            fixtures::diagonal_split_square(),
        ] {
            let v = sample_convenient(&x, 3).unwrap();
            let order = vertex_order_by_covector(&x, &v);
            let k = x.max_dim();
            for p in 0..=k {
                for q in 0..=k - p {
                    for ring in [RingKind::Rational, RingKind::Exterior(x.dim())] {
                        let r = fixtures::random_cochain(&x, p, ring, &mut rng);
                        let s = fixtures::random_cochain(&x, q, ring, &mut rng);
                        assert_eq!(
                            cup(&r, &s, &v).unwrap(),
                            cech_cup(&r, &s, &order).unwrap(),
                            "degrees ({p},{q})"
                        );
                    }
                }
            }
        }
    }

    // Reversing the factors couples with negating the parameter: the first
    // factor always reads the v-minimal faces (the front-face rule), so
    // r cup_v s = (-1)^(pq+|r||s|) s cup_{-v} r is the exact law.
    #[test]
    fn supercommutativity_sign_law() {
        let mut rng = fixtures::rng(53);
        let x = fixtures::square();
        let v = sample_convenient(&x, 11).unwrap();
        for p in 0..=2usize {
            for q in 0..=2 - p {
                for (pa, pb) in [
                    (Parity::Even, Parity::Even),
                    (Parity::Even, Parity::Odd),
                    (Parity::Odd, Parity::Odd),
                ] {
                    let r = fixtures::random_cochain_with_parity(
                        &x,
                        p,
                        RingKind::Exterior(2),
                        Some(pa),
                        &mut rng,
                    );
                    let s = fixtures::random_cochain_with_parity(
                        &x,
                        q,
                        RingKind::Exterior(2),
                        Some(pb),
                        &mut rng,
                    );
                    let lhs = cup(&r, &s, &v).unwrap();
                    let rhs = cup(&s, &r, &crate::rat::vec_neg(&v)).unwrap();
                    let sign = p * q + (pa.degree().unwrap() * pb.degree().unwrap()) as usize;
                    let rhs = if sign.is_multiple_of(2) {
                        rhs
                    } else {
                        rhs.neg()
                    };
                    assert_eq!(lhs, rhs, "degrees ({p},{q})");
                }
            }
        }
    }

    #[test]
    fn leibniz_rule() {
        let mut rng = fixtures::rng(59);
        for x in [fixtures::square(), fixtures::triangle()] {
            let v = sample_convenient(&x, 13).unwrap();
            for ring in [RingKind::Rational, RingKind::Exterior(2)] {
                for p in 0..=1usize {
                    for q in 0..=1usize {
                        if p + q + 1 > x.max_dim() {
                            continue;
                        }
                        let r = fixtures::random_cochain(&x, p, ring, &mut rng);
                        let s = fixtures::random_cochain(&x, q, ring, &mut rng);
                        let lhs = cup(&r, &s, &v).unwrap().coboundary();
                        let a = cup(&r.coboundary(), &s, &v).unwrap();
                        let b = cup(&r, &s.coboundary(), &v).unwrap();
                        let b = if p % 2 == 0 { b } else { b.neg() };
                        assert_eq!(lhs, a.add(&b), "degrees ({p},{q})");
                    }
                }
            }
        }
    }

    #[test]
    fn products_of_cocycles_are_cocycles() {
        let mut rng = fixtures::rng(61);
        let x = fixtures::cube();
        let v = sample_convenient(&x, 17).unwrap();
        let r = fixtures::random_cocycle(&x, 1, RingKind::Rational, &mut rng);
        let s = fixtures::random_cocycle(&x, 1, RingKind::Rational, &mut rng);
        assert!(cup(&r, &s, &v).unwrap().is_cocycle());
        // ideal property: d r_{p-1} cup s = d (r_{p-1} cup s) for closed s
        let w = fixtures::random_cochain(&x, 0, RingKind::Rational, &mut rng);
        let lhs = cup(&w.coboundary(), &s, &v).unwrap();
        let rhs = cup(&w, &s, &v).unwrap().coboundary();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cup_on_one_dimensional_complex() {
        // a single segment complex: products of 0-cochains with 1-cochains
        let x = PComplex::build(
            1,
            vec![vec_int(&[0]), vec_int(&[2])],
            vec![
                crate::complex::CellSpec::new(vec![0]),
                crate::complex::CellSpec::new(vec![1]),
                crate::complex::CellSpec::new(vec![0, 1]),
            ],
        )
        .unwrap();
        let v = sample_convenient(&x, 23).unwrap();
        let mut rng = fixtures::rng(67);
        let r = fixtures::random_cochain(&x, 0, RingKind::Rational, &mut rng);
        let s = fixtures::random_cochain(&x, 1, RingKind::Rational, &mut rng);
        let prod = cup(&r, &s, &v).unwrap();
        let seg = x.cell_id_by_vertices(&[0, 1]).unwrap();
        // the product picks r at the v-minimizing endpoint
        let min_vertex = if dot(&v, x.vertex(0)) < dot(&v, x.vertex(1)) {
            0
        } else {
            1
        };
        let expect = r
            .value(x.vertex_cell_id(min_vertex).unwrap())
            .mul(&s.value(seg))
            .unwrap();
        assert_eq!(prod.value(seg), expect);
    }
}
