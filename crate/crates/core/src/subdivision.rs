//! Subdivisions of complexes and the push-forward of cochains.
//!
//! When every cell of a fine complex lies inside a cell of a coarse one and
//! the coarse cells are tiled exactly, cochains push forward by signed
//! summation over same-dimension pieces. The push-forward commutes with the
//! coboundary, preserves the volume cochains, and respects products up to an
//! exact coboundary when the fine complex is simplicial.

use crate::complex::{same_complex, CoboundaryWitness, Cochain, PComplex};
use crate::cup::{all_levels, cup, is_convenient, CupError};
use crate::geom::cell_multivector;
use crate::rat::{det_sign, Matrix, Rat, Vector};
use crate::ring::RingElement;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SubdivisionError {
    #[error("complexes live in different ambient dimensions")]
    AmbientMismatch,
    #[error("cell {cell} of the fine complex lies in no cell of the coarse complex")]
    NoCarrier { cell: usize },
    #[error("cell {cell} of the coarse complex is not tiled by fine cells")]
    NotTiled { cell: usize },
    #[error("the fine complex is not simplicial")]
    NotSimplicial,
    #[error("both cochains must be cocycles")]
    NotCocycle,
    #[error("the parameter is not convenient for both complexes")]
    NotConvenient,
    #[error(transparent)]
    Cup(#[from] CupError),
}

/// A verified subdivision relation between a fine complex and a coarse one.
#[derive(Clone, Debug)]
pub struct SubdivisionMap {
    fine: Arc<PComplex>,
    coarse: Arc<PComplex>,
    /// Minimal coarse cell containing each fine cell.
    carrier: Vec<usize>,
    /// Same-dimension fine cells inside each coarse cell, with the relative
    /// orientation sign of their tangent bases.
    pieces: Vec<Vec<(usize, i32)>>,
}

impl SubdivisionMap {
    pub fn fine(&self) -> &Arc<PComplex> {
        &self.fine
    }

    pub fn coarse(&self) -> &Arc<PComplex> {
        &self.coarse
    }

    pub fn carrier(&self, fine_cell: usize) -> usize {
        self.carrier[fine_cell]
    }

    pub fn pieces(&self, coarse_cell: usize) -> &[(usize, i32)] {
        &self.pieces[coarse_cell]
    }
}

fn cell_contains_point(x: &PComplex, cell: usize, point: &[Rat]) -> bool {
    let (eqs, ineqs) = x.h_rep(cell);
    eqs.iter().chain(&ineqs).all(|c| c.satisfied_by(point))
}

/// Verify that `fine` subdivides `coarse` and record carriers, pieces and
/// orientation signs. Tiling is checked through the multivector identity:
/// the signed multivectors of the same-dimension pieces of a coarse cell sum
/// to the coarse cell's multivector.
pub fn build_subdivision(
    fine: &Arc<PComplex>,
    coarse: &Arc<PComplex>,
) -> Result<SubdivisionMap, SubdivisionError> {
    if fine.dim() != coarse.dim() {
        return Err(SubdivisionError::AmbientMismatch);
    }
    let mut carrier = Vec::with_capacity(fine.num_cells());
    for cell in fine.cell_ids() {
        let contains = |y: usize| {
            fine.cell(cell)
                .vertices
                .iter()
                .all(|&v| cell_contains_point(coarse, y, fine.vertex(v)))
        };
        let best = coarse
            .cell_ids()
            .filter(|&y| contains(y))
            .min_by_key(|&y| coarse.cell(y).dim)
            .ok_or(SubdivisionError::NoCarrier { cell })?;
        carrier.push(best);
    }

    let mut pieces: Vec<Vec<(usize, i32)>> = vec![Vec::new(); coarse.num_cells()];
    for cell in fine.cell_ids() {
        let y = carrier[cell];
        if fine.cell(cell).dim != coarse.cell(y).dim {
            continue;
        }
        let cols: Vec<Vector> = fine
            .cell(cell)
            .tangent
            .iter()
            .map(|t| {
                coarse
                    .tangent_coords(y, t)
                    .expect("piece tangent lies in the carrier tangent space")
            })
            .collect();
        let sign = det_sign(&Matrix::from_cols(&cols));
        debug_assert!(sign != 0);
        pieces[y].push((cell, sign));
    }

    for y in coarse.cell_ids() {
        let mut total = crate::ring::ExtElement::zero(coarse.dim());
        for &(cell, sign) in &pieces[y] {
            let beta = cell_multivector(fine, cell);
            total = total.add(&if sign < 0 { beta.neg() } else { beta });
        }
        if total != cell_multivector(coarse, y) {
            return Err(SubdivisionError::NotTiled { cell: y });
        }
    }

    Ok(SubdivisionMap {
        fine: Arc::clone(fine),
        coarse: Arc::clone(coarse),
        carrier,
        pieces,
    })
}

/// Push a cochain forward along a subdivision: the value on a coarse cell is
/// the orientation-signed sum over its same-dimension pieces.
pub fn res(r: &Cochain, map: &SubdivisionMap) -> Cochain {
    assert!(
        same_complex(r.complex(), &map.fine),
        "cochain lives on the fine complex"
    );
    let p = r.degree();
    let mut out = Cochain::zero(&map.coarse, p, r.ring());
    for &y in map.coarse.cells_of_dim(p) {
        let mut acc = RingElement::zero(r.ring());
        for &(cell, sign) in &map.pieces[y] {
            acc = acc.add(&r.value(cell).signed(sign)).expect("same ring");
        }
        out.set(y, acc).expect("degree and ring fixed");
    }
    out
}

/// The product defect of the push-forward: for cocycles on a simplicial fine
/// complex and a parameter convenient for both complexes,
/// `cup(res r, res s, v) - res(cup(r, s, v))` together with an exact
/// coboundary witness for it.
pub fn res_product_defect(
    r: &Cochain,
    s: &Cochain,
    v: &[Rat],
    map: &SubdivisionMap,
) -> Result<(Cochain, CoboundaryWitness), SubdivisionError> {
    if !map.fine.is_simplicial() {
        return Err(SubdivisionError::NotSimplicial);
    }
    if !r.is_cocycle() || !s.is_cocycle() {
        return Err(SubdivisionError::NotCocycle);
    }
    if !is_convenient(&map.fine, v, &all_levels(&map.fine)).is_convenient()
        || !is_convenient(&map.coarse, v, &all_levels(&map.coarse)).is_convenient()
    {
        return Err(SubdivisionError::NotConvenient);
    }
    let coarse_product = cup(&res(r, map), &res(s, map), v)?;
    let fine_product = res(&cup(r, s, v)?, map);
    let defect = coarse_product.sub(&fine_product);
    let witness = defect.coboundary_witness();
    Ok((defect, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cup::sample_convenient;
    use crate::fixtures;
    use crate::geom::{in_tangent_ring, vol_cocycle};
    use crate::ring::RingKind;

    fn split_square() -> (SubdivisionMap, Arc<PComplex>, Arc<PComplex>) {
        let fine = fixtures::diagonal_split_square();
        let coarse = fixtures::square();
        let map = build_subdivision(&fine, &coarse).unwrap();
        (map, fine, coarse)
    }

    #[test]
    fn diagonal_split_square_subdivides_the_square() {
        let (map, fine, coarse) = split_square();
        let top = coarse.cell_id_by_vertices(&[0, 1, 2, 3]).unwrap();
        assert_eq!(map.pieces(top).len(), 2);
        let t1 = fine.cell_id_by_vertices(&[0, 1, 2]).unwrap();
        assert_eq!(map.carrier(t1), top);
        // the diagonal's carrier is the square itself
        let diag = fine.cell_id_by_vertices(&[0, 2]).unwrap();
        assert_eq!(map.carrier(diag), top);
    }

    #[test]
    fn identity_subdivision() {
        let x = fixtures::square();
        let map = build_subdivision(&x, &x).unwrap();
        for c in x.cell_ids() {
            assert_eq!(map.carrier(c), c);
            assert_eq!(map.pieces(c), &[(c, 1)]);
        }
        let mut rng = fixtures::rng(113);
        let r = fixtures::random_cochain(&x, 1, RingKind::Rational, &mut rng);
        assert_eq!(res(&r, &map), r);
    }

    #[test]
    fn unrelated_complexes_are_rejected() {
        let fine = fixtures::triangle();
        let coarse = fixtures::square();
        match build_subdivision(&fine, &coarse) {
            Err(SubdivisionError::NotTiled { .. }) => {}
            other => panic!("expected NotTiled, got {other:?}"),
        }
        // a complex that sticks out of the coarse one has no carrier
        let big = fixtures::polygon_complex(&[
            crate::rat::vec_int(&[0, 0]),
            crate::rat::vec_int(&[3, 0]),
            crate::rat::vec_int(&[0, 3]),
        ]);
        match build_subdivision(&big, &coarse) {
            Err(SubdivisionError::NoCarrier { .. }) => {}
            other => panic!("expected NoCarrier, got {other:?}"),
        }
    }

    #[test]
    fn res_preserves_volume_cochains() {
        let (map, fine, coarse) = split_square();
        for p in 0..=2 {
            assert_eq!(res(&vol_cocycle(&fine, p), &map), vol_cocycle(&coarse, p));
        }
        let fine = fixtures::barycentric_triangle();
        let coarse = fixtures::triangle();
        let map = build_subdivision(&fine, &coarse).unwrap();
        for p in 0..=2 {
            assert_eq!(res(&vol_cocycle(&fine, p), &map), vol_cocycle(&coarse, p));
        }
    }

    #[test]
    fn res_commutes_with_the_coboundary() {
        let (map, fine, _) = split_square();
        let mut rng = fixtures::rng(127);
        for p in 0..=1 {
            for ring in [RingKind::Rational, RingKind::Exterior(2)] {
                let r = fixtures::random_cochain(&fine, p, ring, &mut rng);
                assert_eq!(res(&r.coboundary(), &map), res(&r, &map).coboundary());
            }
        }
    }

    #[test]
    fn subdivision_preserves_cohomology_ranks() {
        let (_, fine, coarse) = split_square();
        for p in 0..=2 {
            assert_eq!(fine.cohomology_rank(p), coarse.cohomology_rank(p));
        }
        let fine = fixtures::barycentric_triangle();
        let coarse = fixtures::triangle();
        for p in 0..=2 {
            assert_eq!(fine.cohomology_rank(p), coarse.cohomology_rank(p));
        }
    }

    #[test]
    fn defect_vanishes_for_volume_cochains() {
        let (map, fine, _) = split_square();
        let v = sample_convenient(&fine, 31).unwrap();
        let vol1 = vol_cocycle(&fine, 1);
        assert!(in_tangent_ring(&vol1));
        let (defect, witness) = res_product_defect(&vol1, &vol1, &v, &map).unwrap();
        assert!(defect.is_zero());
        assert!(witness.is_coboundary());
    }

    #[test]
    fn defect_of_random_cocycles_is_a_coboundary() {
        let (map, fine, _) = split_square();
        let mut rng = fixtures::rng(131);
        let v = sample_convenient(&fine, 37).unwrap();
        for _ in 0..5 {
            let r = fixtures::random_cocycle(&fine, 1, RingKind::Rational, &mut rng);
            let s = fixtures::random_cocycle(&fine, 1, RingKind::Rational, &mut rng);
            let (defect, witness) = res_product_defect(&r, &s, &v, &map).unwrap();
            match witness {
                CoboundaryWitness::Witness(w) => assert_eq!(w.coboundary(), defect),
                other => panic!("expected a witness, got {other:?}"),
            }
        }
        // zero cocycles give a zero defect
        let zero = Cochain::zero(&fine, 1, RingKind::Rational);
        let (defect, _) = res_product_defect(&zero, &zero, &v, &map).unwrap();
        assert!(defect.is_zero());
    }

    #[test]
    fn defect_requires_a_simplicial_fine_complex() {
        let x = fixtures::square();
        let map = build_subdivision(&x, &x).unwrap();
        let r = Cochain::zero(&x, 1, RingKind::Rational);
        let v = sample_convenient(&x, 41).unwrap();
        assert!(matches!(
            res_product_defect(&r, &r, &v, &map),
            Err(SubdivisionError::NotSimplicial)
        ));
    }
}
