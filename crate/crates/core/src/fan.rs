//! Normal fans: the dual cone of each face of a convex cell, the projection
//! of ambient covectors into a cell, and the local duality between cochains
//! on a cell's face complex and chains on its normal fan.
//!
//! All cone data for one cell lives in the coordinates of that cell's
//! oriented tangent basis, so every membership test is a small exact linear
//! computation.

use crate::complex::{Cochain, PComplex};
use crate::rat::{
    coords_in_basis, det_sign, dot, orthogonal_complement, primitive_integer, rank, vec_add,
    vec_neg, vec_sub, zero_vector, Matrix, Rat, Vector,
};
use crate::ring::{RingElement, RingKind};
use num::{Signed, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// The dual cone of one face `f` of a cell `g`: all covectors on the cell's
/// tangent space whose maximum over the cell is attained on the whole face.
/// Stored in H-representation relative to the cell's tangent basis.
#[derive(Clone, Debug)]
pub struct NormalCone {
    /// Originating face id.
    pub face: usize,
    /// Cone dimension: `dim g - dim f`.
    pub dim: usize,
    /// Basis of the cone's linear span, oriented so that (face tangent
    /// coordinates | span) is positive in the cell's tangent basis.
    pub span: Vec<Vector>,
    /// Covectors `u` of the cone satisfy `c . u = 0` for each row.
    pub equalities: Vec<Vector>,
    /// Covectors `u` of the cone satisfy `c . u <= 0` for each row.
    pub inequalities: Vec<Vector>,
    /// Inequalities implied by the equalities (tightness allowed in the
    /// relative interior); aligned with `inequalities`.
    pub forced: Vec<bool>,
    /// A point of the relative interior.
    pub relint: Vector,
}

impl NormalCone {
    /// Exact membership of a covector (in cell tangent coordinates).
    pub fn contains(&self, u: &[Rat]) -> bool {
        self.equalities.iter().all(|c| dot(c, u).is_zero())
            && self.inequalities.iter().all(|c| !dot(c, u).is_positive())
    }

    /// Membership in the relative interior: every non-forced inequality must
    /// hold strictly.
    pub fn contains_strict(&self, u: &[Rat]) -> bool {
        if !self.equalities.iter().all(|c| dot(c, u).is_zero()) {
            return false;
        }
        self.inequalities
            .iter()
            .zip(&self.forced)
            .all(|(c, &forced)| {
                let v = dot(c, u);
                if forced {
                    !v.is_positive()
                } else {
                    v.is_negative()
                }
            })
    }

    /// True when the covector lies in the cone but not in its relative
    /// interior.
    pub fn on_boundary(&self, u: &[Rat]) -> bool {
        self.contains(u) && !self.contains_strict(u)
    }

    /// Linear constraints cutting out `shift + cone` over variables `u` in
    /// the cell's tangent coordinates (possibly padded with extra trailing
    /// variables that the cone does not constrain).
    pub fn constraints(
        &self,
        shift: Option<&[Rat]>,
        total_vars: usize,
    ) -> Vec<crate::lp::Constraint> {
        let d = self.relint.len();
        assert!(total_vars >= d);
        let pad = |c: &Vector| {
            let mut v = c.clone();
            v.resize(total_vars, Rat::zero());
            v
        };
        let mut cons = Vec::with_capacity(self.equalities.len() + self.inequalities.len());
        for c in &self.equalities {
            let rhs = shift.map_or_else(Rat::zero, |s| dot(c, s));
            cons.push(crate::lp::Constraint::eq(pad(c), rhs));
        }
        for c in &self.inequalities {
            let rhs = shift.map_or_else(Rat::zero, |s| dot(c, s));
            cons.push(crate::lp::Constraint::le(pad(c), rhs));
        }
        cons
    }
}

/// The complete normal fan of one cell: one dual cone per face.
#[derive(Clone, Debug)]
pub struct NormalFan {
    cell: usize,
    dim: usize,
    cones: BTreeMap<usize, NormalCone>,
}

impl NormalFan {
    pub(crate) fn build(x: &PComplex, cell: usize) -> NormalFan {
        let d = x.cell(cell).dim;
        // Outer normal of each facet of the cell, in tangent coordinates.
        let mut facet_normals: BTreeMap<usize, Vector> = BTreeMap::new();
        for &f in x.facets(cell) {
            let f_coords = face_tangent_coords(x, cell, f);
            let normal = orthogonal_complement(&f_coords, d);
            debug_assert_eq!(normal.len(), 1);
            let outward = x
                .tangent_coords(cell, &vec_sub(&x.barycenter_of(f), &x.barycenter_of(cell)))
                .expect("facet barycenter offset lies in the cell tangent space");
            let n = if dot(&normal[0], &outward).is_positive() {
                normal[0].clone()
            } else {
                vec_neg(&normal[0])
            };
            facet_normals.insert(f, n);
        }

        let mut cones = BTreeMap::new();
        for &face in x.closure(cell) {
            cones.insert(face, build_cone(x, cell, face, d, &facet_normals));
        }
        NormalFan {
            cell,
            dim: d,
            cones,
        }
    }

    pub fn cell(&self) -> usize {
        self.cell
    }

    /// Dimension of the ambient space of the fan (the cell's dimension).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cone(&self, face: usize) -> &NormalCone {
        &self.cones[&face]
    }

    pub fn cones(&self) -> impl Iterator<Item = (usize, &NormalCone)> {
        self.cones.iter().map(|(&f, c)| (f, c))
    }

    /// Incidence sign between the cone of `face` and the cone of `cofaces`
    /// facet cone, computed from cone geometry exactly like polytope
    /// incidence: sign of (outward vector | facet cone basis) in the cone's
    /// oriented span. `coface` must be a coface of `face` of one dimension
    /// higher, so its cone is a facet of the cone of `face`.
    pub fn cone_incidence(&self, face: usize, coface: usize) -> i32 {
        let sigma = &self.cones[&face];
        let tau = &self.cones[&coface];
        assert_eq!(tau.dim + 1, sigma.dim, "cone dimensions must be adjacent");
        let nu = vec_sub(&tau.relint, &sigma.relint);
        let mut cols = vec![coords_in_basis(&sigma.span, &nu)
            .expect("incidence offset lies in the larger cone's span")];
        for s in &tau.span {
            cols.push(coords_in_basis(&sigma.span, s).expect("facet cone span is contained"));
        }
        det_sign(&Matrix::from_cols(&cols))
    }
}

/// Tangent basis vectors of a face expressed in the cell's tangent
/// coordinates.
pub(crate) fn face_tangent_coords(x: &PComplex, cell: usize, face: usize) -> Vec<Vector> {
    x.cell(face)
        .tangent
        .iter()
        .map(|t| {
            x.tangent_coords(cell, t)
                .expect("face tangent lies in the cell tangent space")
        })
        .collect()
}

fn build_cone(
    x: &PComplex,
    cell: usize,
    face: usize,
    d: usize,
    facet_normals: &BTreeMap<usize, Vector>,
) -> NormalCone {
    let equalities = face_tangent_coords(x, cell, face);
    let base_vertex = x.cell(face).orient[0];
    let base = x.vertex(base_vertex).clone();

    let mut inequalities: Vec<Vector> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &w in &x.cell(cell).vertices {
        if x.cell(face).vertices.contains(&w) {
            continue;
        }
        let c = x
            .tangent_coords(cell, &vec_sub(x.vertex(w), &base))
            .expect("vertex offset lies in the cell tangent space");
        if seen.insert(primitive_integer(&c)) {
            inequalities.push(c);
        }
    }

    let eq_rank = rank(&Matrix::new(equalities.clone(), d));
    let forced = inequalities
        .iter()
        .map(|c| {
            let mut rows = equalities.clone();
            rows.push(c.clone());
            rank(&Matrix::new(rows, d)) == eq_rank
        })
        .collect();

    let mut span = orthogonal_complement(&equalities, d);
    if !span.is_empty() {
        let mut cols: Vec<Vector> = equalities.clone();
        cols.extend(span.iter().cloned());
        let sign = det_sign(&Matrix::from_cols(&cols));
        debug_assert!(sign != 0);
        if sign < 0 {
            span[0] = vec_neg(&span[0]);
        }
    }

    // Relative interior point: sum of the outer normals of the facets
    // containing the face (zero for the cell itself).
    let mut relint = zero_vector(d);
    for (&f, n) in facet_normals {
        if x.closure(f).contains(&face) {
            relint = vec_add(&relint, n);
        }
    }

    NormalCone {
        face,
        dim: d - x.cell(face).dim,
        span,
        equalities,
        inequalities,
        forced,
        relint,
    }
}

impl PComplex {
    /// The (cached) normal fan of a cell.
    pub fn fan(&self, cell: usize) -> &NormalFan {
        self.fans[cell].get_or_init(|| NormalFan::build(self, cell))
    }

    /// Dual cone of a face of a cell.
    pub fn dual_cone(&self, cell: usize, face: usize) -> &NormalCone {
        assert!(
            self.is_face(face, cell),
            "dual_cone: not a face of the cell"
        );
        self.fan(cell).cone(face)
    }

    /// Restriction of an ambient covector to a cell's tangent space, in the
    /// coordinates paired with the cell's tangent basis.
    pub fn project_covector(&self, cell: usize, v: &[Rat]) -> Vector {
        assert_eq!(v.len(), self.dim(), "covector has ambient dimension");
        self.cell(cell).tangent.iter().map(|t| dot(v, t)).collect()
    }
}

/// A chain on the normal fan of one cell, keyed by originating face.
#[derive(Clone, Debug)]
pub struct FanChain {
    complex: Arc<PComplex>,
    cell: usize,
    /// Cone dimension carrying the values.
    degree: usize,
    ring: RingKind,
    values: BTreeMap<usize, RingElement>,
}

impl PartialEq for FanChain {
    fn eq(&self, other: &Self) -> bool {
        self.cell == other.cell
            && self.degree == other.degree
            && self.ring == other.ring
            && self.values == other.values
            && crate::complex::same_complex(&self.complex, &other.complex)
    }
}

impl FanChain {
    pub fn zero(complex: &Arc<PComplex>, cell: usize, degree: usize, ring: RingKind) -> Self {
        FanChain {
            complex: Arc::clone(complex),
            cell,
            degree,
            ring,
            values: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Value on the cone dual to the given face.
    pub fn value(&self, face: usize) -> RingElement {
        self.values
            .get(&face)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(self.ring))
    }

    pub fn set(&mut self, face: usize, value: RingElement) {
        let fan = self.complex.fan(self.cell);
        assert_eq!(fan.cone(face).dim, self.degree, "cone dimension mismatch");
        if value.is_zero() {
            self.values.remove(&face);
        } else {
            self.values.insert(face, value);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.values.values_mut() {
            *v = v.neg();
        }
        out
    }

    /// Boundary on the fan: `(bc)(t) = sum over cones s with facet t of
    /// incidence(s, t) c(s)`, with incidence computed from cone geometry.
    pub fn boundary(&self) -> FanChain {
        assert!(self.degree > 0, "boundary of a 0-chain on the fan");
        let x = &self.complex;
        let fan = x.fan(self.cell);
        let mut out = FanChain::zero(x, self.cell, self.degree - 1, self.ring);
        for (face, cone) in fan.cones() {
            if cone.dim != self.degree - 1 {
                continue;
            }
            // cones containing this one as a facet come from facets of the face
            let mut acc = RingElement::zero(self.ring);
            for &delta in x.facets(face) {
                if !x.is_face(delta, self.cell) {
                    continue;
                }
                let inc = fan.cone_incidence(delta, face);
                acc = acc.add(&self.value(delta).signed(inc)).expect("same ring");
            }
            out.set(face, acc);
        }
        out
    }
}

/// Transport a cochain on the face complex of `cell` to a chain on the
/// normal fan: the cone dual to a face carries the cochain's value on that
/// face. With the span orientation convention above, this intertwines the
/// coboundary with the fan boundary up to the sign `dual_boundary_sign`.
pub fn dualize_cochain(r: &Cochain, cell: usize) -> FanChain {
    let x = r.complex();
    let d = x.cell(cell).dim;
    let p = r.degree();
    assert!(p <= d, "cochain degree exceeds the cell dimension");
    let mut out = FanChain::zero(x, cell, d - p, r.ring());
    for &face in x.closure(cell) {
        if x.cell(face).dim == p {
            out.set(face, r.value(face));
        }
    }
    out
}

/// The global degree-dependent sign `s(p, d)` with
/// `dualize(d r) = s * boundary(dualize(r))` for a `p`-cochain on the face
/// complex of a `d`-cell. With this crate's orientation conventions (outward
/// vector first in incidence signs, face basis before cone span in the cone
/// orientation) the discrepancy is `(-1)^(p+1)`, independent of the cell
/// dimension.
pub fn dual_boundary_sign(p: usize, _cell_dim: usize) -> i32 {
    if p.is_multiple_of(2) {
        -1
    } else {
        1
    }
}
