//! Geometric cocycles and volume algorithms.
//!
//! The multivector `b_U` of a bounded piece of a q-dimensional oriented
//! subspace integrates constant exterior q-forms; `vol_q` assigns `q! b` to
//! every q-cell and is a cocycle (equivalently, the outward facet normals of
//! every cell, scaled by facet volume, cancel). Iterated products of `vol_1`
//! compute polytope volumes; products of edge-decomposition cochains on a
//! Minkowski sum compute mixed volumes.

use crate::complex::{geometric_facets, CellSpec, Cochain, ComplexError, PComplex};
use crate::cup::{cup, CupError};
use crate::lp::{self, Constraint};
use crate::rat::{coords_in_basis, dot, rank, vec_neg, vec_sub, zero_vector, Matrix, Rat, Vector};
use crate::ring::{ExtElement, RingElement, RingKind};
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeomError {
    #[error("expected {expected} summands of ambient dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("summand {summand} has a vertex of dimension {got}, ambient dimension is {expected}")]
    BadSummand {
        summand: usize,
        got: usize,
        expected: usize,
    },
    #[error("an edge of the Minkowski sum has an inconsistent decomposition")]
    DegenerateSum,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cup(#[from] CupError),
}

/// Exact volume of a full-dimensional polytope in its own coordinate space,
/// by recursive triangulation from the first listed point. `points` must be
/// the extreme points.
pub fn full_dim_volume(points: &[Vector]) -> Rat {
    let d = points.first().map_or(0, Vec::len);
    if points.len() <= d {
        return Rat::zero();
    }
    let simplices = triangulate(points);
    let mut total = Rat::zero();
    let factorial: Rat = (1..=d as i64).map(crate::rat::rat_int).product();
    for s in &simplices {
        let diffs: Vec<Vector> = s[1..]
            .iter()
            .map(|&i| vec_sub(&points[i], &points[s[0]]))
            .collect();
        let det = determinant(&Matrix::new(diffs, d));
        total += det.abs() / &factorial;
    }
    total
}

fn determinant(m: &Matrix) -> Rat {
    let n = m.nrows();
    let mut a: Vec<Vector> = m.rows().to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        det *= &a[col][col];
        let pivot = a[col][col].clone();
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            if !row[col].is_zero() {
                let factor = &row[col] / &pivot;
                for (v, pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *v = &*v - &factor * pv;
                }
            }
        }
    }
    det
}

/// Triangulation of a polytope (given by extreme points) into simplices of
/// local point indices, coning from the first point over recursively
/// triangulated facets.
fn triangulate(points: &[Vector]) -> Vec<Vec<usize>> {
    let diffs: Vec<Vector> = points[1..].iter().map(|p| vec_sub(p, &points[0])).collect();
    let d = rank(&Matrix::new(diffs, points[0].len()));
    if points.len() == d + 1 {
        return vec![(0..points.len()).collect()];
    }
    let mut out = Vec::new();
    for facet in geometric_facets(points) {
        if facet.contains(&0) {
            continue;
        }
        let facet_points: Vec<Vector> = facet.iter().map(|&i| points[i].clone()).collect();
        for simplex in triangulate(&facet_points) {
            let mut s = vec![0];
            s.extend(simplex.into_iter().map(|i| facet[i]));
            out.push(s);
        }
    }
    out
}

/// The multivector of an oriented cell: its volume measured in the cell's
/// tangent basis times the wedge of that basis. Changes sign with the cell
/// orientation.
pub fn cell_multivector(x: &PComplex, cell: usize) -> ExtElement {
    let c = x.cell(cell);
    if c.dim == 0 {
        return ExtElement::scalar(x.dim(), Rat::one());
    }
    let base = x.vertex(c.orient[0]);
    let mut coords: Vec<Vector> = Vec::with_capacity(c.vertices.len());
    coords.push(zero_vector(c.dim));
    for &v in c.vertices.iter().filter(|&&v| v != c.orient[0]) {
        coords.push(
            x.tangent_coords(cell, &vec_sub(x.vertex(v), base))
                .expect("cell vertices lie in the affine hull"),
        );
    }
    let volume = full_dim_volume(&coords);
    ExtElement::wedge_of_vectors(x.dim(), &c.tangent).scale(&volume)
}

/// The cochain assigning `q! * multivector` to every q-cell. A cocycle.
pub fn vol_cocycle(x: &Arc<PComplex>, q: usize) -> Cochain {
    let n = x.dim();
    let factorial: Rat = (1..=q as i64).map(crate::rat::rat_int).product();
    let mut r = Cochain::zero(x, q, RingKind::Exterior(n));
    for &cell in x.cells_of_dim(q) {
        let value = cell_multivector(x, cell).scale(&factorial);
        r.set(cell, RingElement::Exterior(value))
            .expect("degree and ring fixed");
    }
    r
}

/// The vector pairing a grade-(n-1) exterior element against grade-1
/// elements into the top grade: `tau ^ e_i = w_i * e_top`.
fn top_pairing_vector(tau: &ExtElement, n: usize) -> Vector {
    let mut w = zero_vector(n);
    for (blade, c) in tau.terms() {
        if blade.len() != n - 1 {
            continue;
        }
        let missing = (0..n)
            .find(|i| !blade.contains(i))
            .expect("one index missing");
        let sign = if (n - 1 - missing).is_multiple_of(2) {
            1
        } else {
            -1
        };
        w[missing] = if sign > 0 { c.clone() } else { -c.clone() };
    }
    w
}

/// Verify the facet-cancellation equations on every cell: the coboundary of
/// each `vol` cochain vanishes, and on full-dimensional cells the outward
/// facet normals scaled by facet volume sum to zero (checked directly via
/// the exterior pairing). Both routes must agree; `true` for every valid
/// complex.
pub fn facet_normals_cancel(x: &Arc<PComplex>) -> bool {
    // route 1: d(vol_{k-1}) restricted to each k-cell
    for k in 1..=x.max_dim() {
        let vol = vol_cocycle(x, k - 1);
        for &cell in x.cells_of_dim(k) {
            let mut acc = ExtElement::zero(x.dim());
            for &f in x.facets(cell) {
                let term = match vol.value(f).signed(x.incidence(cell, f)) {
                    RingElement::Exterior(e) => e,
                    RingElement::Scalar(_) => unreachable!(),
                };
                acc = acc.add(&term);
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    // route 2: direct normal sums on full-dimensional cells
    let n = x.dim();
    for &cell in x.cells_of_dim(n) {
        let mut total = zero_vector(n);
        for &f in x.facets(cell) {
            let beta = cell_multivector(x, f);
            let w = top_pairing_vector(&beta, n);
            // orient outward: the pairing vector spans the facet normal line
            let outward_hint = vec_sub(&x.barycenter_of(f), &x.barycenter_of(cell));
            let d = dot(&w, &outward_hint);
            assert!(!d.is_zero(), "pairing vector must be normal to the facet");
            let area_normal = if d.is_positive() { w } else { vec_neg(&w) };
            total = crate::rat::vec_add(&total, &area_normal);
        }
        if !crate::rat::is_zero_vector(&total) {
            return false;
        }
    }
    true
}

/// Membership in the tangent-valued cocycle subring: closed, and the value
/// on each cell is a rational multiple of the wedge of that cell's tangent
/// basis. Products of such cocycles do not depend on the parameter.
pub fn in_tangent_ring(r: &Cochain) -> bool {
    let RingKind::Exterior(n) = r.ring() else {
        return false;
    };
    let x = r.complex();
    for (cell, v) in r.values() {
        let RingElement::Exterior(e) = v else {
            unreachable!("ring checked")
        };
        let wedge = ExtElement::wedge_of_vectors(n, &x.cell(cell).tangent);
        if e.ratio_to(&wedge).is_none() {
            return false;
        }
    }
    r.is_cocycle()
}

/// All faces of a polytope (given by extreme points) as sorted local point
/// index sets, the full set included.
fn enumerate_faces(points: &[Vector]) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..points.len()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([all.clone()]);
    let mut queue = vec![all];
    while let Some(face) = queue.pop() {
        let face_points: Vec<Vector> = face.iter().map(|&i| points[i].clone()).collect();
        for sub in geometric_facets(&face_points) {
            let mut global: Vec<usize> = sub.iter().map(|&l| face[l]).collect();
            global.sort_unstable();
            if seen.insert(global.clone()) {
                queue.push(global);
            }
        }
    }
    seen.into_iter().collect()
}

/// The face complex of a single polytope given by its extreme points.
pub fn face_complex(points: &[Vector]) -> Result<Arc<PComplex>, ComplexError> {
    let dim = points.first().map_or(0, Vec::len);
    let cells = enumerate_faces(points)
        .into_iter()
        .map(CellSpec::new)
        .collect();
    PComplex::build(dim, points.to_vec(), cells)
}

/// Per-edge decomposition of a Minkowski sum: for each edge of the sum
/// complex, one entry per summand holding either the summand's edge vector
/// oriented along the sum edge, or `None` when the summand contributes a
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiLabel {
    pub edge_parts: BTreeMap<usize, Vec<Option<Vector>>>,
}

/// Extreme points of a finite point set: deduplicate, then keep the points
/// that some covector strictly separates from the rest.
fn extreme_points_of(points: &[Vector]) -> Vec<Vector> {
    let n = points.first().map_or(0, Vec::len);
    let mut dedup: Vec<Vector> = Vec::new();
    for p in points {
        if !dedup.contains(p) {
            dedup.push(p.clone());
        }
    }
    dedup
        .iter()
        .filter(|p| {
            let cons: Vec<Constraint> = dedup
                .iter()
                .filter(|q| q != p)
                .map(|q| Constraint::lt(vec_sub(q, p), Rat::zero()))
                .collect();
            lp::feasible_point(n, &cons).is_some()
        })
        .cloned()
        .collect()
}

/// An ambient covector restricting to the given functional on a cell's
/// tangent space (in the cell's dual coordinates) and vanishing on the
/// orthogonal complement.
fn ambient_covector(x: &PComplex, cell: usize, coords: &[Rat]) -> Vector {
    let tangent = &x.cell(cell).tangent;
    let mut rows: Vec<Vector> = tangent.clone();
    let mut rhs: Vector = coords.to_vec();
    for c in crate::rat::orthogonal_complement(tangent, x.dim()) {
        rows.push(c);
        rhs.push(Rat::zero());
    }
    crate::rat::solve_affine(&Matrix::new(rows, x.dim()), &rhs)
        .expect("tangent basis plus complement is a spanning set")
        .particular
}

/// Build the face complex of a Minkowski sum of polytopes together with the
/// unique edge decompositions. The sum's vertices are the extreme summed
/// vertex tuples; each edge's decomposition is read off from a covector in
/// the relative interior of its normal cone, which selects one face per
/// summand.
pub fn minkowski_sum_complex(
    summands: &[Vec<Vector>],
) -> Result<(Arc<PComplex>, MinkowskiLabel), GeomError> {
    assert!(!summands.is_empty(), "at least one summand");
    let n = summands[0][0].len();
    for (k, s) in summands.iter().enumerate() {
        for p in s {
            if p.len() != n {
                return Err(GeomError::BadSummand {
                    summand: k,
                    got: p.len(),
                    expected: n,
                });
            }
        }
    }
    // work with extreme points only; interior input points would confuse
    // the argmax face reading below
    let summands: Vec<Vec<Vector>> = summands.iter().map(|s| extreme_points_of(s)).collect();
    let mut sums: Vec<Vector> = vec![zero_vector(n)];
    for s in &summands {
        let mut next = Vec::with_capacity(sums.len() * s.len());
        for p in &sums {
            for q in s {
                next.push(crate::rat::vec_add(p, q));
            }
        }
        sums = next;
    }
    let vertices = extreme_points_of(&sums);
    let complex = face_complex(&vertices)?;

    // one maximal cell carries every face of the sum polytope
    let top = *complex
        .cells_of_dim(complex.max_dim())
        .first()
        .expect("the sum polytope is a cell");
    let mut edge_parts = BTreeMap::new();
    for &edge in complex.cells_of_dim(1) {
        // a covector maximized exactly on this edge selects the unique
        // summand decomposition
        let u = ambient_covector(&complex, top, &complex.fan(top).cone(edge).relint);
        let stored_dir = complex.cell(edge).tangent[0].clone();
        let mut parts: Vec<Option<Vector>> = Vec::with_capacity(summands.len());
        let mut total = zero_vector(n);
        for s in &summands {
            let values: Vec<Rat> = s.iter().map(|p| dot(&u, p)).collect();
            let best = values.iter().max().expect("summand has vertices").clone();
            let face: Vec<&Vector> = s
                .iter()
                .zip(&values)
                .filter(|(_, v)| **v == best)
                .map(|(p, _)| p)
                .collect();
            match face.as_slice() {
                [_] => parts.push(None),
                [a, b] => {
                    let e = vec_sub(b, a);
                    let coord = coords_in_basis(&[stored_dir.clone()], &e)
                        .ok_or(GeomError::DegenerateSum)?;
                    let oriented = if coord[0].is_positive() {
                        e
                    } else {
                        vec_neg(&e)
                    };
                    total = crate::rat::vec_add(&total, &oriented);
                    parts.push(Some(oriented));
                }
                _ => return Err(GeomError::DegenerateSum),
            }
        }
        if total != stored_dir {
            return Err(GeomError::DegenerateSum);
        }
        edge_parts.insert(edge, parts);
    }
    Ok((complex, MinkowskiLabel { edge_parts }))
}

/// The edge-decomposition 1-cochains of a labeled Minkowski sum: the k-th
/// cochain assigns to each edge the k-th summand's edge vector (or zero).
/// Each is a cocycle.
pub fn minkowski_edge_cochains(
    x: &Arc<PComplex>,
    label: &MinkowskiLabel,
    num_summands: usize,
) -> Vec<Cochain> {
    let n = x.dim();
    (0..num_summands)
        .map(|k| {
            let mut r = Cochain::zero(x, 1, RingKind::Exterior(n));
            for (&edge, parts) in &label.edge_parts {
                if let Some(e) = &parts[k] {
                    r.set(edge, RingElement::Exterior(ExtElement::from_vector(e)))
                        .expect("degree and ring fixed");
                }
            }
            r
        })
        .collect()
}

/// Read a top-degree exterior cochain as a signed volume-form coefficient on
/// the unique top cell, corrected to the positive ambient orientation.
fn top_coefficient(x: &Arc<PComplex>, r: &Cochain) -> Rat {
    let n = x.dim();
    let mut total = Rat::zero();
    for &cell in x.cells_of_dim(n) {
        let RingElement::Exterior(e) = r.value(cell) else {
            return Rat::zero();
        };
        let or = crate::rat::det_sign(&Matrix::new(x.cell(cell).tangent.clone(), n));
        let c = e.top_coefficient();
        total += if or < 0 { -c } else { c };
    }
    total
}

/// Mixed volume of `n` polytopes in dimension `n`, normalized so that
/// `V(P, ..., P) = vol(P)`: the edge-decomposition cochains of the Minkowski
/// sum are cupped left to right and the top coefficient divided by `n!`.
pub fn mixed_volume(summands: &[Vec<Vector>], v: &[Rat]) -> Result<Rat, GeomError> {
    let n = summands.first().map_or(0, |s| s[0].len());
    if summands.len() != n {
        return Err(GeomError::DimensionMismatch {
            expected: n,
            got: summands.len(),
        });
    }
    let (x, label) = minkowski_sum_complex(summands)?;
    mixed_volume_on(&x, &label, n, v)
}

/// Mixed volume on an already-built labeled sum complex.
pub fn mixed_volume_on(
    x: &Arc<PComplex>,
    label: &MinkowskiLabel,
    num_summands: usize,
    v: &[Rat],
) -> Result<Rat, GeomError> {
    let n = x.dim();
    if num_summands != n {
        return Err(GeomError::DimensionMismatch {
            expected: n,
            got: num_summands,
        });
    }
    if x.max_dim() < n {
        return Ok(Rat::zero()); // degenerate sum has no n-dimensional volume
    }
    let cochains = minkowski_edge_cochains(x, label, n);
    let mut acc = cochains[0].clone();
    for c in &cochains[1..] {
        acc = cup(&acc, c, v)?;
    }
    let factorial: Rat = (1..=n as i64).map(crate::rat::rat_int).product();
    Ok(top_coefficient(x, &acc) / factorial)
}

/// Ambient-dimension volume of the convex hull of a point set (not
/// necessarily extreme); zero when the hull is lower-dimensional.
pub fn hull_volume(points: &[Vector]) -> Rat {
    let n = points.first().map_or(0, Vec::len);
    let mut dedup: Vec<Vector> = Vec::new();
    for p in points {
        if !dedup.contains(p) {
            dedup.push(p.clone());
        }
    }
    let extremes: Vec<Vector> = dedup
        .iter()
        .filter(|p| {
            // p is extreme iff some functional strictly separates it
            let cons: Vec<Constraint> = dedup
                .iter()
                .filter(|q| q != p)
                .map(|q| Constraint::lt(vec_sub(q, p), Rat::zero()))
                .collect();
            lp::feasible_point(n, &cons).is_some()
        })
        .cloned()
        .collect();
    if extremes.is_empty() {
        return Rat::zero();
    }
    let diffs: Vec<Vector> = extremes[1..]
        .iter()
        .map(|p| vec_sub(p, &extremes[0]))
        .collect();
    if rank(&Matrix::new(diffs, n)) < n {
        return Rat::zero();
    }
    full_dim_volume(&extremes)
}

/// Mixed volume by inclusion-exclusion over Minkowski sums of subsets,
/// normalized like `mixed_volume`. Independent of the cup-product route;
/// used as a cross-check.
pub fn mixed_volume_by_inclusion_exclusion(summands: &[Vec<Vector>]) -> Result<Rat, GeomError> {
    let n = summands.first().map_or(0, |s| s[0].len());
    if summands.len() != n {
        return Err(GeomError::DimensionMismatch {
            expected: n,
            got: summands.len(),
        });
    }
    let factorial: Rat = (1..=n as i64).map(crate::rat::rat_int).product();
    let mut total = Rat::zero();
    for mask in 1u32..1 << n {
        let members: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        let mut points: Vec<Vector> = vec![zero_vector(n)];
        for &k in &members {
            let mut next = Vec::new();
            for p in &points {
                for q in &summands[k] {
                    next.push(crate::rat::vec_add(p, q));
                }
            }
            points = next;
        }
        let vol = hull_volume(&points);
        let sign = if (n - members.len()).is_multiple_of(2) {
            Rat::one()
        } else {
            -Rat::one()
        };
        total += sign * vol;
    }
    Ok(total / factorial)
}

/// Volume of a full-dimensional polytope two ways: by the iterated cup
/// product of `vol_1` on its face complex (left) and by direct triangulation
/// (right). The two must agree on every valid input.
pub fn volume_by_cup(points: &[Vector], v: &[Rat]) -> Result<(Rat, Rat), GeomError> {
    let n = points.first().map_or(0, Vec::len);
    let x = face_complex(points)?;
    let triangulated = hull_volume(points);
    if x.max_dim() < n {
        return Ok((Rat::zero(), triangulated));
    }
    let vol1 = vol_cocycle(&x, 1);
    let mut acc = vol1.clone();
    for _ in 1..n {
        acc = cup(&acc, &vol1, v)?;
    }
    let factorial: Rat = (1..=n as i64).map(crate::rat::rat_int).product();
    Ok((top_coefficient(&x, &acc) / factorial, triangulated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cup::sample_convenient;
    use crate::fixtures;
    use crate::rat::{rat, rat_int, vec_int};

    #[test]
    fn multivector_of_a_segment() {
        let x = fixtures::square();
        let e = x.cell_id_by_vertices(&[0, 1]).unwrap(); // oriented 0 -> 1
        let beta = cell_multivector(&x, e);
        assert_eq!(beta, ExtElement::from_vector(&vec_int(&[1, 0])));
    }

    #[test]
    fn multivector_of_the_square() {
        let x = fixtures::square();
        let sq = x.cell_id_by_vertices(&[0, 1, 2, 3]).unwrap();
        let beta = cell_multivector(&x, sq);
        assert_eq!(beta, ExtElement::term(2, vec![0, 1], rat_int(1)));
    }

    #[test]
    fn multivector_flips_with_orientation() {
        use crate::complex::CellSpec;
        let vertices = vec![vec_int(&[0, 0]), vec_int(&[1, 0]), vec_int(&[0, 1])];
        let mk = |orient: Vec<usize>| {
            let cells = vec![
                CellSpec::new(vec![0]),
                CellSpec::new(vec![1]),
                CellSpec::new(vec![2]),
                CellSpec::new(vec![0, 1]),
                CellSpec::new(vec![1, 2]),
                CellSpec::new(vec![0, 2]),
                CellSpec::oriented(vec![0, 1, 2], orient),
            ];
            PComplex::build(2, vertices.clone(), cells).unwrap()
        };
        let pos = mk(vec![0, 1, 2]);
        let neg = mk(vec![0, 2, 1]);
        let t = pos.cell_id_by_vertices(&[0, 1, 2]).unwrap();
        assert_eq!(cell_multivector(&pos, t), cell_multivector(&neg, t).neg());
        assert_eq!(
            cell_multivector(&pos, t),
            ExtElement::term(2, vec![0, 1], rat(1, 2))
        );
    }

    #[test]
    fn vol_cocycle_values() {
        let x = fixtures::square();
        let v0 = vol_cocycle(&x, 0);
        for &c in x.cells_of_dim(0) {
            assert_eq!(
                v0.value(c),
                RingElement::Exterior(ExtElement::scalar(2, rat_int(1)))
            );
        }
        let v2 = vol_cocycle(&x, 2);
        let sq = x.cell_id_by_vertices(&[0, 1, 2, 3]).unwrap();
        assert_eq!(
            v2.value(sq),
            RingElement::Exterior(ExtElement::term(2, vec![0, 1], rat_int(2)))
        );
    }

    #[test]
    fn vol_cochains_are_cocycles() {
        for x in [
            fixtures::square(),
            fixtures::cube(),
            fixtures::tetrahedron(),
            fixtures::cylinder(),
            fixtures::barycentric_triangle(),
        ] {
            for q in 0..=x.max_dim().saturating_sub(1) {
                assert!(vol_cocycle(&x, q).is_cocycle(), "vol_{q} must be closed");
            }
        }
    }

    #[test]
    fn facet_normal_sums_cancel() {
        let mut rng = fixtures::rng(71);
        let poly = fixtures::polygon_complex(&fixtures::random_lattice_polygon(&mut rng));
        for x in [
            fixtures::square(),
            fixtures::tetrahedron(),
            fixtures::cube(),
            poly,
        ] {
            assert!(facet_normals_cancel(&x));
        }
    }

    #[test]
    fn tangent_ring_membership() {
        let x = fixtures::square();
        for q in 0..=2 {
            assert!(
                in_tangent_ring(&vol_cocycle(&x, q)),
                "vol_{q} lies in the subring"
            );
        }
        let zero = Cochain::zero(&x, 1, RingKind::Exterior(2));
        assert!(in_tangent_ring(&zero));
        // e2 assigned to an edge along e1 is not tangent-valued
        let mut bad = Cochain::zero(&x, 1, RingKind::Exterior(2));
        let e = x.cell_id_by_vertices(&[0, 1]).unwrap();
        bad.set(
            e,
            RingElement::Exterior(ExtElement::from_vector(&vec_int(&[0, 1]))),
        )
        .unwrap();
        assert!(!in_tangent_ring(&bad));
        let scalar = Cochain::zero(&x, 1, RingKind::Rational);
        assert!(!in_tangent_ring(&scalar));
    }

    #[test]
    fn face_complex_of_the_cube_matches_fixture() {
        let points: Vec<Vector> = (0..8i64)
            .map(|m| vec_int(&[m & 1, m >> 1 & 1, m >> 2 & 1]))
            .collect();
        let x = face_complex(&points).unwrap();
        assert_eq!(x.num_cells(), 27);
        assert_eq!(x.cells_of_dim(2).len(), 6);
    }

    #[test]
    fn minkowski_of_two_segments_is_the_square() {
        let a = vec![vec_int(&[0, 0]), vec_int(&[1, 0])];
        let b = vec![vec_int(&[0, 0]), vec_int(&[0, 1])];
        let (x, label) = minkowski_sum_complex(&[a, b]).unwrap();
        assert_eq!(x.cells_of_dim(0).len(), 4);
        assert_eq!(x.cells_of_dim(1).len(), 4);
        assert_eq!(x.cells_of_dim(2).len(), 1);
        // bottom edge (y = 0) decomposes as (the first segment, a vertex)
        let bottom = x
            .cell_ids()
            .find(|&c| {
                x.cell(c).dim == 1 && x.cell(c).vertices.iter().all(|&v| x.vertex(v)[1].is_zero())
            })
            .unwrap();
        let parts = &label.edge_parts[&bottom];
        assert_eq!(parts[0], Some(vec_int(&[1, 0])));
        assert_eq!(parts[1], None);
    }

    #[test]
    fn minkowski_identity_and_parallel_sums() {
        let seg = vec![vec_int(&[0, 0]), vec_int(&[2, 1])];
        let (x, label) = minkowski_sum_complex(std::slice::from_ref(&seg)).unwrap();
        assert_eq!(x.cells_of_dim(1).len(), 1);
        let edge = x.cells_of_dim(1)[0];
        assert_eq!(label.edge_parts[&edge][0], Some(vec_int(&[2, 1])));

        let (x2, label2) = minkowski_sum_complex(&[seg.clone(), seg]).unwrap();
        let edge = x2.cells_of_dim(1)[0];
        let parts = &label2.edge_parts[&edge];
        assert_eq!(parts[0], Some(vec_int(&[2, 1])));
        assert_eq!(parts[1], Some(vec_int(&[2, 1])));
        // doubled segment
        assert_eq!(x2.cell(edge).tangent[0], vec_int(&[4, 2]));
    }

    #[test]
    fn mixed_volume_of_axis_segments() {
        let a = vec![vec_int(&[0, 0]), vec_int(&[1, 0])];
        let b = vec![vec_int(&[0, 0]), vec_int(&[0, 1])];
        let (x, _) = minkowski_sum_complex(&[a.clone(), b.clone()]).unwrap();
        let v = sample_convenient(&x, 2).unwrap();
        assert_eq!(
            mixed_volume(&[a.clone(), b.clone()], &v).unwrap(),
            rat(1, 2)
        );
        // symmetry under permutation
        assert_eq!(mixed_volume(&[b, a], &v).unwrap(), rat(1, 2));
    }

    #[test]
    fn mixed_volume_of_equal_summands_is_the_volume() {
        let square: Vec<Vector> = vec![
            vec_int(&[0, 0]),
            vec_int(&[1, 0]),
            vec_int(&[1, 1]),
            vec_int(&[0, 1]),
        ];
        let (x, _) = minkowski_sum_complex(&[square.clone(), square.clone()]).unwrap();
        let v = sample_convenient(&x, 3).unwrap();
        assert_eq!(
            mixed_volume(&[square.clone(), square], &v).unwrap(),
            rat_int(1)
        );
    }

    #[test]
    fn degenerate_mixed_volume_is_zero() {
        let seg = vec![vec_int(&[0, 0]), vec_int(&[1, 0])];
        assert_eq!(
            mixed_volume(&[seg.clone(), seg.clone()], &vec_int(&[1, 2])).unwrap(),
            rat_int(0)
        );
        // wrong summand count
        assert_eq!(
            mixed_volume(&[seg], &vec_int(&[1, 2])),
            Err(GeomError::DimensionMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn inclusion_exclusion_agrees_on_segments_and_squares() {
        let a = vec![vec_int(&[0, 0]), vec_int(&[1, 0])];
        let b = vec![vec_int(&[0, 0]), vec_int(&[0, 1])];
        assert_eq!(
            mixed_volume_by_inclusion_exclusion(&[a, b]).unwrap(),
            rat(1, 2)
        );
        let sq: Vec<Vector> = vec![
            vec_int(&[0, 0]),
            vec_int(&[1, 0]),
            vec_int(&[1, 1]),
            vec_int(&[0, 1]),
        ];
        assert_eq!(
            mixed_volume_by_inclusion_exclusion(&[sq.clone(), sq]).unwrap(),
            rat_int(1)
        );
    }

    #[test]
    fn volume_of_cube_and_simplex() {
        let cube_pts: Vec<Vector> = (0..8i64)
            .map(|m| vec_int(&[m & 1, m >> 1 & 1, m >> 2 & 1]))
            .collect();
        let x = face_complex(&cube_pts).unwrap();
        let v = sample_convenient(&x, 5).unwrap();
        let (by_cup, by_tri) = volume_by_cup(&cube_pts, &v).unwrap();
        assert_eq!(by_cup, rat_int(1));
        assert_eq!(by_tri, rat_int(1));

        let simplex = vec![
            vec_int(&[0, 0, 0]),
            vec_int(&[1, 0, 0]),
            vec_int(&[0, 1, 0]),
            vec_int(&[0, 0, 1]),
        ];
        let y = face_complex(&simplex).unwrap();
        let v = sample_convenient(&y, 6).unwrap();
        let (by_cup, by_tri) = volume_by_cup(&simplex, &v).unwrap();
        assert_eq!(by_cup, rat(1, 6));
        assert_eq!(by_tri, rat(1, 6));
    }

    #[test]
    fn flat_polytope_has_zero_volume() {
        let flat = vec![vec_int(&[0, 0]), vec_int(&[1, 1])];
        let (by_cup, by_tri) = volume_by_cup(&flat, &vec_int(&[1, 2])).unwrap();
        assert_eq!(by_cup, rat_int(0));
        assert_eq!(by_tri, rat_int(0));
    }

    #[test]
    fn mixed_volume_of_cube_with_itself() {
        let cube: Vec<Vector> = (0..8i64)
            .map(|m| vec_int(&[m & 1, m >> 1 & 1, m >> 2 & 1]))
            .collect();
        let (x, label) =
            minkowski_sum_complex(&[cube.clone(), cube.clone(), cube.clone()]).unwrap();
        let v = sample_convenient(&x, 1).unwrap();
        assert_eq!(mixed_volume_on(&x, &label, 3, &v).unwrap(), rat_int(1));
    }

    #[test]
    fn mixed_volume_is_multilinear_under_dilation() {
        let mut rng = fixtures::rng(139);
        for _ in 0..3 {
            let a = fixtures::random_lattice_polygon(&mut rng);
            let b = fixtures::random_lattice_polygon(&mut rng);
            let a3: Vec<Vector> = a
                .iter()
                .map(|p| crate::rat::vec_scale(&rat_int(3), p))
                .collect();
            let (x, _) = minkowski_sum_complex(&[a3.clone(), b.clone()]).unwrap();
            let v = sample_convenient(&x, 9).unwrap();
            let (y, _) = minkowski_sum_complex(&[a.clone(), b.clone()]).unwrap();
            let w = sample_convenient(&y, 9).unwrap();
            let scaled = mixed_volume(&[a3, b.clone()], &v).unwrap();
            let base = mixed_volume(&[a, b], &w).unwrap();
            assert_eq!(scaled, rat_int(3) * base);
        }
    }

    #[test]
    fn hull_volume_ignores_interior_points() {
        let pts = vec![
            vec_int(&[0, 0]),
            vec_int(&[2, 0]),
            vec_int(&[0, 2]),
            vec_int(&[2, 2]),
            vec_int(&[1, 1]),
            vec_int(&[1, 0]),
        ];
        assert_eq!(hull_volume(&pts), rat_int(4));
    }
}
