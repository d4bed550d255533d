//! Polyhedral complexes: cells, the two complex axioms, orientations,
//! incidence signs, boundary/coboundary operators and cohomology ranks.
//!
//! A complex is a finite set of compact convex polytopes (cells) such that
//! every face of a cell is a cell and every non-empty intersection of two
//! cells is a common face. Both axioms are verified exactly at build time.

use crate::lp::{self, Constraint};
use crate::rat::{
    barycenter, coords_in_basis, dot, rank, solve_affine, vec_sub, zero_vector, Matrix, Rat, Vector,
};
use crate::ring::{Parity, RingElement, RingKind};
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex {vertex} has {got} coordinates, ambient dimension is {expected}")]
    DimensionMismatch {
        vertex: usize,
        got: usize,
        expected: usize,
    },
    #[error("vertices {first} and {second} have identical coordinates")]
    DuplicateVertexCoords { first: usize, second: usize },
    #[error("cell {cell} lists vertex {vertex} which does not exist")]
    UnknownVertex { cell: usize, vertex: usize },
    #[error("cell {cell} lists a vertex twice")]
    RepeatedVertexInCell { cell: usize },
    #[error("cell {cell} is empty")]
    EmptyCell { cell: usize },
    #[error("cells {first} and {second} have the same vertex set")]
    DuplicateCell { first: usize, second: usize },
    #[error("vertex {vertex} of cell {cell} is not an extreme point of the cell")]
    RedundantVertex { cell: usize, vertex: usize },
    #[error("cell {cell} has an invalid orientation tuple")]
    BadOrientation { cell: usize },
    #[error("cell {cell} has a geometric facet {facet_vertices:?} that is not a listed cell")]
    NotAFaceClosure {
        cell: usize,
        facet_vertices: Vec<usize>,
    },
    #[error("cells {first} and {second} intersect outside a common face")]
    BadIntersection { first: usize, second: usize },
}

/// Input description of one cell: its vertex ids and an optional orientation
/// tuple (`dim + 1` affinely independent vertices of the cell). When absent,
/// a deterministic tuple is chosen from the sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSpec {
    pub vertices: Vec<usize>,
    pub orient: Option<Vec<usize>>,
}

impl CellSpec {
    pub fn new(vertices: Vec<usize>) -> Self {
        CellSpec {
            vertices,
            orient: None,
        }
    }

    pub fn oriented(vertices: Vec<usize>, orient: Vec<usize>) -> Self {
        CellSpec {
            vertices,
            orient: Some(orient),
        }
    }
}

/// One cell of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Sorted vertex ids; the cell is their convex hull and they are all
    /// extreme.
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Orientation tuple: `dim + 1` affinely independent vertex ids.
    pub orient: Vec<usize>,
    /// Tangent basis of the cell: `orient[i] - orient[0]` for `i >= 1`.
    pub tangent: Vec<Vector>,
}

pub struct PComplex {
    dim: usize,
    vertices: Vec<Vector>,
    cells: Vec<Cell>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
    closures: Vec<BTreeSet<usize>>,
    by_dim: Vec<Vec<usize>>,
    cell_by_vertices: BTreeMap<Vec<usize>, usize>,
    pub(crate) fans: Vec<OnceLock<crate::fan::NormalFan>>,
}

impl std::fmt::Debug for PComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PComplex")
            .field("dim", &self.dim)
            .field("vertices", &self.vertices.len())
            .field("cells", &self.cells.len())
            .finish()
    }
}

impl PartialEq for PComplex {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices && self.cells == other.cells
    }
}

impl PComplex {
    /// Build and fully validate a complex from vertex coordinates and cell
    /// descriptions. Fails with a diagnostic naming the offending cells when
    /// either complex axiom is violated.
    pub fn build(
        dim: usize,
        vertices: Vec<Vector>,
        specs: Vec<CellSpec>,
    ) -> Result<Arc<PComplex>, ComplexError> {
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != dim {
                return Err(ComplexError::DimensionMismatch {
                    vertex: i,
                    got: v.len(),
                    expected: dim,
                });
            }
            if let Some(j) = vertices[..i].iter().position(|w| w == v) {
                return Err(ComplexError::DuplicateVertexCoords {
                    first: j,
                    second: i,
                });
            }
        }

        let mut cells = Vec::with_capacity(specs.len());
        let mut cell_by_vertices = BTreeMap::new();
        for (id, spec) in specs.iter().enumerate() {
            let cell = validate_cell(id, spec, &vertices)?;
            if let Some(&first) = cell_by_vertices.get(&cell.vertices) {
                return Err(ComplexError::DuplicateCell { first, second: id });
            }
            cell_by_vertices.insert(cell.vertices.clone(), id);
            cells.push(cell);
        }

        // Axiom 1: every geometric facet of every cell must be a listed cell.
        let mut facets = vec![Vec::new(); cells.len()];
        let mut cofacets = vec![Vec::new(); cells.len()];
        for id in 0..cells.len() {
            let points = cell_points_of(&vertices, &cells[id]);
            for local in geometric_facets(&points) {
                let mut global: Vec<usize> = local.iter().map(|&l| cells[id].vertices[l]).collect();
                global.sort_unstable();
                let Some(&fid) = cell_by_vertices.get(&global) else {
                    return Err(ComplexError::NotAFaceClosure {
                        cell: id,
                        facet_vertices: global,
                    });
                };
                facets[id].push(fid);
                cofacets[fid].push(id);
            }
            facets[id].sort_unstable();
        }
        for c in cofacets.iter_mut() {
            c.sort_unstable();
        }

        let mut closures: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cells.len()];
        let mut order: Vec<usize> = (0..cells.len()).collect();
        order.sort_by_key(|&c| cells[c].dim);
        for id in order {
            let mut closure = BTreeSet::from([id]);
            for &f in &facets[id] {
                closure.extend(closures[f].iter().copied());
            }
            closures[id] = closure;
        }

        let max_dim = cells.iter().map(|c| c.dim).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); max_dim + 1];
        for (id, c) in cells.iter().enumerate() {
            by_dim[c.dim].push(id);
        }

        let fans = (0..cells.len()).map(|_| OnceLock::new()).collect();
        let complex = PComplex {
            dim,
            vertices,
            cells,
            facets,
            cofacets,
            closures,
            by_dim,
            cell_by_vertices,
            fans,
        };
        complex.check_pairwise_intersections()?;
        Ok(Arc::new(complex))
    }

    /// Axiom 2: every non-empty pairwise intersection is a common face.
    fn check_pairwise_intersections(&self) -> Result<(), ComplexError> {
        let boxes: Vec<(Vector, Vector)> = (0..self.cells.len())
            .map(|c| bounding_box(&self.cell_points(c)))
            .collect();
        for a in 0..self.cells.len() {
            for b in a + 1..self.cells.len() {
                if self.closures[a].contains(&b) || self.closures[b].contains(&a) {
                    continue; // a face of the other: intersection is that face
                }
                if !boxes_overlap(&boxes[a], &boxes[b]) {
                    continue;
                }
                self.check_pair(a, b)?;
            }
        }
        Ok(())
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<(), ComplexError> {
        let bad = || ComplexError::BadIntersection {
            first: a,
            second: b,
        };
        let (mut eqs, mut ineqs) = self.h_rep(a);
        let (eqs_b, ineqs_b) = self.h_rep(b);
        eqs.extend(eqs_b);
        ineqs.extend(ineqs_b);
        let points = extreme_points(self.dim, &eqs, &ineqs);
        if points.is_empty() {
            return Ok(()); // disjoint
        }
        let mut ids = Vec::with_capacity(points.len());
        for p in &points {
            match self.vertices.iter().position(|v| v == p) {
                Some(id) => ids.push(id),
                None => return Err(bad()),
            }
        }
        ids.sort_unstable();
        let Some(&cell) = self.cell_by_vertices.get(&ids) else {
            return Err(bad());
        };
        if self.closures[a].contains(&cell) && self.closures[b].contains(&cell) {
            Ok(())
        } else {
            Err(bad())
        }
    }

    /// H-representation of a cell in ambient coordinates: affine hull
    /// equations plus one inequality per facet.
    pub fn h_rep(&self, cell: usize) -> (Vec<Constraint>, Vec<Constraint>) {
        let c = &self.cells[cell];
        let v0 = &self.vertices[c.orient[0]];
        let eqs = crate::rat::orthogonal_complement(&c.tangent, self.dim)
            .into_iter()
            .map(|u| {
                let rhs = dot(&u, v0);
                Constraint::eq(u, rhs)
            })
            .collect();
        let mut ineqs = Vec::new();
        for &f in &self.facets[cell] {
            let (u, rhs) = self.facet_halfspace(cell, f);
            ineqs.push(Constraint::le(u, rhs));
        }
        (eqs, ineqs)
    }

    /// Outer supporting halfspace of a facet: `u . x <= rhs` holds on the
    /// cell with equality exactly on the facet.
    fn facet_halfspace(&self, cell: usize, facet: usize) -> (Vector, Rat) {
        let f = &self.cells[facet];
        let complement = crate::rat::orthogonal_complement(&f.tangent, self.dim);
        let outward = vec_sub(&self.barycenter_of(facet), &self.barycenter_of(cell));
        let u = complement
            .into_iter()
            .find(|u| !dot(u, &outward).is_zero())
            .expect("facet is a proper face, a separating functional exists");
        let u = if dot(&u, &outward).is_positive() {
            u
        } else {
            crate::rat::vec_neg(&u)
        };
        let rhs = dot(&u, &self.vertices[f.orient[0]]);
        (u, rhs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &Vector {
        &self.vertices[id]
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    pub fn cell_ids(&self) -> impl Iterator<Item = usize> {
        0..self.cells.len()
    }

    /// Largest cell dimension present.
    pub fn max_dim(&self) -> usize {
        self.by_dim.len() - 1
    }

    pub fn cells_of_dim(&self, p: usize) -> &[usize] {
        self.by_dim.get(p).map_or(&[], Vec::as_slice)
    }

    /// All codimension-1 faces of a cell.
    pub fn facets(&self, cell: usize) -> &[usize] {
        &self.facets[cell]
    }

    pub fn cofacets(&self, cell: usize) -> &[usize] {
        &self.cofacets[cell]
    }

    /// All faces of a cell, including the cell itself.
    pub fn closure(&self, cell: usize) -> &BTreeSet<usize> {
        &self.closures[cell]
    }

    pub fn is_face(&self, face: usize, cell: usize) -> bool {
        self.closures[cell].contains(&face)
    }

    /// Faces of `cell` of the given dimension.
    pub fn faces_of_dim(&self, cell: usize, p: usize) -> Vec<usize> {
        self.closures[cell]
            .iter()
            .copied()
            .filter(|&f| self.cells[f].dim == p)
            .collect()
    }

    pub fn cell_id_by_vertices(&self, vertices: &[usize]) -> Option<usize> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        self.cell_by_vertices.get(&vs).copied()
    }

    /// The 0-cell carried by a vertex, when listed.
    pub fn vertex_cell_id(&self, vertex: usize) -> Option<usize> {
        self.cell_by_vertices.get(&vec![vertex]).copied()
    }

    pub fn cell_points(&self, cell: usize) -> Vec<Vector> {
        cell_points_of(&self.vertices, &self.cells[cell])
    }

    pub fn barycenter_of(&self, cell: usize) -> Vector {
        let pts: Vec<&Vector> = self.cells[cell]
            .vertices
            .iter()
            .map(|&v| &self.vertices[v])
            .collect();
        barycenter(&pts)
    }

    /// Coordinates of an ambient vector lying in the cell's tangent space,
    /// relative to the cell's oriented tangent basis.
    pub fn tangent_coords(&self, cell: usize, w: &[Rat]) -> Option<Vector> {
        coords_in_basis(&self.cells[cell].tangent, w)
    }

    /// Sign of incidence between a cell and one of its facets: the sign, in
    /// the cell's oriented tangent basis, of (outward vector | facet basis).
    pub fn incidence(&self, gamma: usize, delta: usize) -> i32 {
        assert!(
            self.facets[gamma].contains(&delta),
            "incidence: cell {delta} is not a facet of {gamma}"
        );
        let nu = vec_sub(&self.barycenter_of(delta), &self.barycenter_of(gamma));
        let mut cols = vec![self
            .tangent_coords(gamma, &nu)
            .expect("outward vector lies in the cell's tangent space")];
        for t in &self.cells[delta].tangent {
            cols.push(
                self.tangent_coords(gamma, t)
                    .expect("facet tangent lies in cell tangent"),
            );
        }
        crate::rat::det_sign(&Matrix::from_cols(&cols))
    }

    /// Relative orientation of an alternative orientation tuple of a cell
    /// against the stored one: +1 or -1.
    pub fn orientation_sign(&self, cell: usize, tuple: &[usize]) -> i32 {
        let c = &self.cells[cell];
        assert_eq!(tuple.len(), c.dim + 1, "orientation tuple length");
        for &v in tuple {
            assert!(c.vertices.contains(&v), "tuple vertex not in cell");
        }
        let base = &self.vertices[tuple[0]];
        let cols: Vec<Vector> = tuple[1..]
            .iter()
            .map(|&v| {
                self.tangent_coords(cell, &vec_sub(&self.vertices[v], base))
                    .expect("tuple vertex differences lie in the tangent space")
            })
            .collect();
        let sign = crate::rat::det_sign(&Matrix::from_cols(&cols));
        assert!(sign != 0, "orientation tuple is affinely dependent");
        sign
    }

    pub fn is_simplicial(&self) -> bool {
        self.cells.iter().all(|c| c.vertices.len() == c.dim + 1)
    }

    /// Incidence matrix of d: C^p -> C^(p+1); rows are (p+1)-cells, columns
    /// are p-cells.
    pub fn coboundary_matrix(&self, p: usize) -> Matrix {
        let rows_cells = self.cells_of_dim(p + 1);
        let cols_cells = self.cells_of_dim(p);
        let col_of: BTreeMap<usize, usize> = cols_cells
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i))
            .collect();
        let mut rows = Vec::with_capacity(rows_cells.len());
        for &g in rows_cells {
            let mut row = zero_vector(cols_cells.len());
            for &f in &self.facets[g] {
                row[col_of[&f]] = crate::rat::rat_int(self.incidence(g, f) as i64);
            }
            rows.push(row);
        }
        Matrix::new(rows, cols_cells.len())
    }

    /// Rank of H^p over the rationals.
    pub fn cohomology_rank(&self, p: usize) -> usize {
        if p > self.max_dim() {
            return 0;
        }
        let ker = self.cells_of_dim(p).len() - rank(&self.coboundary_matrix(p));
        let im = if p == 0 {
            0
        } else {
            rank(&self.coboundary_matrix(p - 1))
        };
        ker - im
    }
}

fn cell_points_of(vertices: &[Vector], cell: &Cell) -> Vec<Vector> {
    cell.vertices.iter().map(|&v| vertices[v].clone()).collect()
}

fn validate_cell(id: usize, spec: &CellSpec, vertices: &[Vector]) -> Result<Cell, ComplexError> {
    if spec.vertices.is_empty() {
        return Err(ComplexError::EmptyCell { cell: id });
    }
    let mut vs = spec.vertices.clone();
    for &v in &vs {
        if v >= vertices.len() {
            return Err(ComplexError::UnknownVertex {
                cell: id,
                vertex: v,
            });
        }
    }
    vs.sort_unstable();
    if vs.windows(2).any(|w| w[0] == w[1]) {
        return Err(ComplexError::RepeatedVertexInCell { cell: id });
    }

    // Every listed vertex must be an extreme point of the hull.
    let points: Vec<&Vector> = vs.iter().map(|&v| &vertices[v]).collect();
    for (i, &v) in vs.iter().enumerate() {
        if in_convex_hull(
            points[i],
            points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| *p),
        ) {
            return Err(ComplexError::RedundantVertex {
                cell: id,
                vertex: v,
            });
        }
    }

    let diffs: Vec<Vector> = points[1..].iter().map(|p| vec_sub(p, points[0])).collect();
    let dim = rank(&Matrix::new(diffs, vertices[vs[0]].len()));

    let orient = match &spec.orient {
        Some(o) => o.clone(),
        None => greedy_orientation(&vs, vertices, dim),
    };
    if orient.len() != dim + 1 || orient.iter().any(|v| !vs.contains(v)) {
        return Err(ComplexError::BadOrientation { cell: id });
    }
    let base = &vertices[orient[0]];
    let tangent: Vec<Vector> = orient[1..]
        .iter()
        .map(|&v| vec_sub(&vertices[v], base))
        .collect();
    if rank(&Matrix::new(tangent.clone(), base.len())) != dim {
        return Err(ComplexError::BadOrientation { cell: id });
    }
    Ok(Cell {
        vertices: vs,
        dim,
        orient,
        tangent,
    })
}

/// Exact test whether a point lies in the convex hull of the given points.
fn in_convex_hull<'a>(point: &Vector, others: impl Iterator<Item = &'a Vector>) -> bool {
    let others: Vec<&Vector> = others.collect();
    if others.is_empty() {
        return false;
    }
    let n = point.len();
    let nvars = others.len();
    let mut cons = Vec::with_capacity(n + 1 + nvars);
    for coord in 0..n {
        let coeffs: Vector = others.iter().map(|p| p[coord].clone()).collect();
        cons.push(Constraint::eq(coeffs, point[coord].clone()));
    }
    cons.push(Constraint::eq(vec![Rat::one(); nvars], Rat::one()));
    for i in 0..nvars {
        let mut coeffs = zero_vector(nvars);
        coeffs[i] = -Rat::one();
        cons.push(Constraint::le(coeffs, Rat::zero()));
    }
    lp::feasible_point(nvars, &cons).is_some()
}

fn greedy_orientation(vs: &[usize], vertices: &[Vector], dim: usize) -> Vec<usize> {
    let mut orient = vec![vs[0]];
    let mut tangent: Vec<Vector> = Vec::new();
    let base = &vertices[vs[0]];
    for &v in &vs[1..] {
        if orient.len() == dim + 1 {
            break;
        }
        let d = vec_sub(&vertices[v], base);
        let mut trial = tangent.clone();
        trial.push(d.clone());
        if rank(&Matrix::new(trial, base.len())) > tangent.len() {
            tangent.push(d);
            orient.push(v);
        }
    }
    orient
}

/// Geometric facets of a polytope given by its extreme points, as sets of
/// local point indices. Brute force: every `d`-subset spanning a hyperplane
/// of the affine hull with all remaining points strictly on one side.
pub(crate) fn geometric_facets(points: &[Vector]) -> Vec<Vec<usize>> {
    let k = points.len();
    if k <= 1 {
        return Vec::new();
    }
    let diffs: Vec<Vector> = points[1..].iter().map(|p| vec_sub(p, &points[0])).collect();
    let (reduced, pivots) = Matrix::new(diffs, points[0].len()).rref();
    let d = pivots.len();
    let basis: Vec<Vector> = reduced.rows()[..d].to_vec();
    let coords: Vec<Vector> = points
        .iter()
        .map(|p| coords_in_basis(&basis, &vec_sub(p, &points[0])).expect("point in affine hull"))
        .collect();

    let mut seen = BTreeSet::new();
    let mut facets = Vec::new();
    for subset in combinations(k, d) {
        let sub_diffs: Vec<Vector> = subset[1..]
            .iter()
            .map(|&i| vec_sub(&coords[i], &coords[subset[0]]))
            .collect();
        if rank(&Matrix::new(sub_diffs.clone(), d)) != d - 1 {
            continue;
        }
        let normal = crate::rat::orthogonal_complement(&sub_diffs, d);
        debug_assert_eq!(normal.len(), 1);
        let normal = &normal[0];
        let mut on = Vec::new();
        let mut pos = false;
        let mut neg = false;
        for (i, c) in coords.iter().enumerate() {
            let val = dot(normal, &vec_sub(c, &coords[subset[0]]));
            if val.is_zero() {
                on.push(i);
            } else if val.is_positive() {
                pos = true;
            } else {
                neg = true;
            }
        }
        if pos && neg {
            continue; // not a supporting hyperplane
        }
        if seen.insert(on.clone()) {
            facets.push(on);
        }
    }
    facets
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

fn bounding_box(points: &[Vector]) -> (Vector, Vector) {
    let n = points[0].len();
    let mut lo = points[0].clone();
    let mut hi = points[0].clone();
    for p in &points[1..] {
        for i in 0..n {
            if p[i] < lo[i] {
                lo[i] = p[i].clone();
            }
            if p[i] > hi[i] {
                hi[i] = p[i].clone();
            }
        }
    }
    (lo, hi)
}

fn boxes_overlap(a: &(Vector, Vector), b: &(Vector, Vector)) -> bool {
    a.0.iter().zip(&b.1).all(|(lo, hi)| lo <= hi) && b.0.iter().zip(&a.1).all(|(lo, hi)| lo <= hi)
}

/// Extreme points of the polytope cut out by the given equations and
/// inequalities, by brute-force enumeration of tight constraint subsets.
fn extreme_points(n: usize, eqs: &[Constraint], ineqs: &[Constraint]) -> Vec<Vector> {
    let eq_rows: Vec<Vector> = eqs.iter().map(|c| c.coeffs.clone()).collect();
    let eq_rank = rank(&Matrix::new(eq_rows, n));
    let need = n - eq_rank;
    let mut points: Vec<Vector> = Vec::new();
    for subset in combinations(ineqs.len(), need) {
        let mut rows = Vec::with_capacity(eqs.len() + need);
        let mut rhs = Vec::with_capacity(eqs.len() + need);
        for c in eqs {
            rows.push(c.coeffs.clone());
            rhs.push(c.rhs.clone());
        }
        for &i in &subset {
            rows.push(ineqs[i].coeffs.clone());
            rhs.push(ineqs[i].rhs.clone());
        }
        let Ok(sol) = solve_affine(&Matrix::new(rows, n), &rhs) else {
            continue;
        };
        if !sol.nullspace.is_empty() {
            continue; // tight set does not pin a point
        }
        let p = sol.particular;
        let feasible = eqs.iter().chain(ineqs).all(|c| c.satisfied_by(&p));
        if feasible && !points.contains(&p) {
            points.push(p);
        }
    }
    points
}

/// A cochain: an odd function from oriented `p`-cells to a coefficient ring.
/// Values are stored against each cell's stored orientation; reversing the
/// orientation negates the value.
#[derive(Clone, Debug)]
pub struct Cochain {
    complex: Arc<PComplex>,
    degree: usize,
    ring: RingKind,
    values: BTreeMap<usize, RingElement>,
}

/// A chain: same shape as a cochain, with the boundary operator instead of
/// the coboundary.
#[derive(Clone, Debug)]
pub struct Chain {
    complex: Arc<PComplex>,
    degree: usize,
    ring: RingKind,
    values: BTreeMap<usize, RingElement>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CochainError {
    #[error("cell {cell} has dimension {got}, expected degree {expected}")]
    DegreeMismatch {
        cell: usize,
        got: usize,
        expected: usize,
    },
    #[error("value ring {got} does not match cochain ring {expected}")]
    RingMismatch { got: RingKind, expected: RingKind },
}

pub(crate) fn same_complex(a: &Arc<PComplex>, b: &Arc<PComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.ring == other.ring
            && self.values == other.values
            && same_complex(&self.complex, &other.complex)
    }
}

impl Cochain {
    pub fn zero(complex: &Arc<PComplex>, degree: usize, ring: RingKind) -> Self {
        Cochain {
            complex: Arc::clone(complex),
            degree,
            ring,
            values: BTreeMap::new(),
        }
    }

    pub fn complex(&self) -> &Arc<PComplex> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> RingKind {
        self.ring
    }

    /// Set the value on a cell (against its stored orientation).
    pub fn set(&mut self, cell: usize, value: RingElement) -> Result<(), CochainError> {
        let got = self.complex.cell(cell).dim;
        if got != self.degree {
            return Err(CochainError::DegreeMismatch {
                cell,
                got,
                expected: self.degree,
            });
        }
        if value.kind() != self.ring {
            return Err(CochainError::RingMismatch {
                got: value.kind(),
                expected: self.ring,
            });
        }
        if value.is_zero() {
            self.values.remove(&cell);
        } else {
            self.values.insert(cell, value);
        }
        Ok(())
    }

    /// Value on a cell against its stored orientation.
    pub fn value(&self, cell: usize) -> RingElement {
        self.values
            .get(&cell)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(self.ring))
    }

    /// Value on a cell against an explicit orientation tuple.
    pub fn value_on(&self, cell: usize, orient: &[usize]) -> RingElement {
        self.value(cell)
            .signed(self.complex.orientation_sign(cell, orient))
    }

    pub fn values(&self) -> impl Iterator<Item = (usize, &RingElement)> {
        self.values.iter().map(|(&c, v)| (c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Joint parity of all values.
    pub fn parity(&self) -> Parity {
        self.values
            .values()
            .map(RingElement::parity)
            .reduce(Parity::join)
            .unwrap_or(Parity::Even)
    }

    /// The coboundary `(dr)(g) = sum over facets f of incidence(g, f) r(f)`.
    pub fn coboundary(&self) -> Cochain {
        let mut out = Cochain::zero(&self.complex, self.degree + 1, self.ring);
        for &g in self.complex.cells_of_dim(self.degree + 1) {
            let mut acc = RingElement::zero(self.ring);
            for &f in self.complex.facets(g) {
                let term = self.value(f).signed(self.complex.incidence(g, f));
                acc = acc.add(&term).expect("same ring");
            }
            out.set(g, acc).expect("degree and ring fixed");
        }
        out
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }

    /// Decide exactly whether this cochain is a coboundary, producing a
    /// witness `w` with `dw = self` when it is.
    pub fn coboundary_witness(&self) -> CoboundaryWitness {
        if self.degree == 0 {
            return if self.is_zero() {
                CoboundaryWitness::ZeroInDegreeZero
            } else {
                CoboundaryWitness::No
            };
        }
        let p = self.degree;
        let rows_cells = self.complex.cells_of_dim(p);
        let cols_cells = self.complex.cells_of_dim(p - 1);
        let matrix = self.complex.coboundary_matrix(p - 1);
        let mut witness = Cochain::zero(&self.complex, p - 1, self.ring);
        match self.ring {
            RingKind::Rational => {
                let rhs: Vector = rows_cells
                    .iter()
                    .map(|&c| match self.value(c) {
                        RingElement::Scalar(s) => s,
                        RingElement::Exterior(_) => unreachable!("ring checked on set"),
                    })
                    .collect();
                let Ok(sol) = solve_affine(&matrix, &rhs) else {
                    return CoboundaryWitness::No;
                };
                for (i, &c) in cols_cells.iter().enumerate() {
                    witness
                        .set(c, RingElement::Scalar(sol.particular[i].clone()))
                        .unwrap();
                }
            }
            RingKind::Exterior(n) => {
                // d acts blade-by-blade; solve one rational system per blade.
                let mut blades = BTreeSet::new();
                for v in self.values.values() {
                    if let RingElement::Exterior(e) = v {
                        blades.extend(e.terms().map(|(b, _)| b.clone()));
                    }
                }
                let mut per_cell: Vec<crate::ring::ExtElement> =
                    vec![crate::ring::ExtElement::zero(n); cols_cells.len()];
                for blade in blades {
                    let rhs: Vector = rows_cells
                        .iter()
                        .map(|&c| match self.value(c) {
                            RingElement::Exterior(e) => e.coefficient(&blade),
                            RingElement::Scalar(_) => unreachable!("ring checked on set"),
                        })
                        .collect();
                    let Ok(sol) = solve_affine(&matrix, &rhs) else {
                        return CoboundaryWitness::No;
                    };
                    for (i, coeff) in sol.particular.into_iter().enumerate() {
                        let term = crate::ring::ExtElement::term(n, blade.clone(), coeff);
                        per_cell[i] = per_cell[i].add(&term);
                    }
                }
                for (i, &c) in cols_cells.iter().enumerate() {
                    witness
                        .set(c, RingElement::Exterior(per_cell[i].clone()))
                        .unwrap();
                }
            }
        }
        debug_assert_eq!(witness.coboundary(), *self);
        CoboundaryWitness::Witness(witness)
    }
}

/// Outcome of the exact coboundary decision.
#[derive(Clone, Debug, PartialEq)]
pub enum CoboundaryWitness {
    /// A degree-(p-1) cochain whose coboundary is the input.
    Witness(Cochain),
    /// The input is the zero cochain in degree 0; the witness module is
    /// trivial there.
    ZeroInDegreeZero,
    /// Certified negative: the linear system is infeasible.
    No,
}

impl CoboundaryWitness {
    pub fn is_coboundary(&self) -> bool {
        !matches!(self, CoboundaryWitness::No)
    }
}

macro_rules! cochain_linear_ops {
    ($ty:ident) => {
        impl $ty {
            /// Pointwise sum; panics on complex/degree/ring mismatch.
            pub fn add(&self, other: &Self) -> Self {
                assert!(
                    same_complex(&self.complex, &other.complex),
                    "complex mismatch"
                );
                assert_eq!(self.degree, other.degree, "degree mismatch");
                assert_eq!(self.ring, other.ring, "ring mismatch");
                let mut out = self.clone();
                for (&c, v) in &other.values {
                    let sum = out.value(c).add(v).expect("same ring");
                    if sum.is_zero() {
                        out.values.remove(&c);
                    } else {
                        out.values.insert(c, sum);
                    }
                }
                out
            }

            pub fn neg(&self) -> Self {
                let mut out = self.clone();
                for v in out.values.values_mut() {
                    *v = v.neg();
                }
                out
            }

            pub fn sub(&self, other: &Self) -> Self {
                self.add(&other.neg())
            }

            pub fn scale(&self, c: &Rat) -> Self {
                let mut out = self.clone();
                if c.is_zero() {
                    out.values.clear();
                    return out;
                }
                for v in out.values.values_mut() {
                    *v = v.scale(c);
                }
                out
            }
        }
    };
}

cochain_linear_ops!(Cochain);
cochain_linear_ops!(Chain);

impl PartialEq for Chain {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.ring == other.ring
            && self.values == other.values
            && same_complex(&self.complex, &other.complex)
    }
}

impl Chain {
    pub fn zero(complex: &Arc<PComplex>, degree: usize, ring: RingKind) -> Self {
        Chain {
            complex: Arc::clone(complex),
            degree,
            ring,
            values: BTreeMap::new(),
        }
    }

    pub fn complex(&self) -> &Arc<PComplex> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> RingKind {
        self.ring
    }

    pub fn set(&mut self, cell: usize, value: RingElement) -> Result<(), CochainError> {
        let got = self.complex.cell(cell).dim;
        if got != self.degree {
            return Err(CochainError::DegreeMismatch {
                cell,
                got,
                expected: self.degree,
            });
        }
        if value.kind() != self.ring {
            return Err(CochainError::RingMismatch {
                got: value.kind(),
                expected: self.ring,
            });
        }
        if value.is_zero() {
            self.values.remove(&cell);
        } else {
            self.values.insert(cell, value);
        }
        Ok(())
    }

    pub fn value(&self, cell: usize) -> RingElement {
        self.values
            .get(&cell)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(self.ring))
    }

    pub fn values(&self) -> impl Iterator<Item = (usize, &RingElement)> {
        self.values.iter().map(|(&c, v)| (c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// The boundary `(dc)(f) = sum over cofacets g of incidence(g, f) c(g)`.
    pub fn boundary(&self) -> Chain {
        assert!(self.degree > 0, "boundary of a 0-chain");
        let mut out = Chain::zero(&self.complex, self.degree - 1, self.ring);
        for &f in self.complex.cells_of_dim(self.degree - 1) {
            let mut acc = RingElement::zero(self.ring);
            for &g in self.complex.cofacets(f) {
                if self.complex.cell(g).dim != self.degree {
                    continue;
                }
                let term = self.value(g).signed(self.complex.incidence(g, f));
                acc = acc.add(&term).expect("same ring");
            }
            out.set(f, acc).expect("degree and ring fixed");
        }
        out
    }
}
