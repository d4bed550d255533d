//! Ready-made complexes and randomized cochain generators.
//!
//! These are small, exactly-representable inputs used by the test suites and
//! handy when exploring the library from code or Python.

use crate::complex::{CellSpec, Cochain, PComplex};
use crate::rat::{rat_int, vec_int, Matrix, Rat, Vector};
use crate::ring::{ExtElement, Parity, RingElement, RingKind};
use num::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Deterministic RNG for reproducible randomized tests.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cell specs for all faces of the listed simplices (inclusive).
pub fn simplicial_closure(simplices: &[Vec<usize>]) -> Vec<CellSpec> {
    let mut seen = BTreeSet::new();
    for s in simplices {
        let k = s.len();
        for mask in 1u32..1 << k {
            let mut face: Vec<usize> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| s[i])
                .collect();
            face.sort_unstable();
            seen.insert(face);
        }
    }
    seen.into_iter().map(CellSpec::new).collect()
}

/// The full face complex of the unit square, counterclockwise top cell.
pub fn square() -> Arc<PComplex> {
    let vertices = vec![
        vec_int(&[0, 0]),
        vec_int(&[1, 0]),
        vec_int(&[1, 1]),
        vec_int(&[0, 1]),
    ];
    let cells = vec![
        CellSpec::new(vec![0]),
        CellSpec::new(vec![1]),
        CellSpec::new(vec![2]),
        CellSpec::new(vec![3]),
        CellSpec::oriented(vec![0, 1], vec![0, 1]),
        CellSpec::oriented(vec![1, 2], vec![1, 2]),
        CellSpec::oriented(vec![2, 3], vec![3, 2]),
        CellSpec::oriented(vec![0, 3], vec![0, 3]),
        CellSpec::oriented(vec![0, 1, 2, 3], vec![0, 1, 3]),
    ];
    PComplex::build(2, vertices, cells).expect("valid fixture")
}

/// Boundary of the unit square (a polygonal circle).
pub fn square_boundary() -> Arc<PComplex> {
    let vertices = vec![
        vec_int(&[0, 0]),
        vec_int(&[1, 0]),
        vec_int(&[1, 1]),
        vec_int(&[0, 1]),
    ];
    let cells = vec![
        CellSpec::new(vec![0]),
        CellSpec::new(vec![1]),
        CellSpec::new(vec![2]),
        CellSpec::new(vec![3]),
        CellSpec::oriented(vec![0, 1], vec![0, 1]),
        CellSpec::oriented(vec![1, 2], vec![1, 2]),
        CellSpec::oriented(vec![2, 3], vec![3, 2]),
        CellSpec::oriented(vec![0, 3], vec![0, 3]),
    ];
    PComplex::build(2, vertices, cells).expect("valid fixture")
}

/// Full face complex of a triangle.
pub fn triangle() -> Arc<PComplex> {
    let vertices = vec![vec_int(&[0, 0]), vec_int(&[1, 0]), vec_int(&[0, 1])];
    PComplex::build(2, vertices, simplicial_closure(&[vec![0, 1, 2]])).expect("valid fixture")
}

/// Full face complex of the standard 3-simplex (solid tetrahedron).
pub fn tetrahedron() -> Arc<PComplex> {
    let vertices = vec![
        vec_int(&[0, 0, 0]),
        vec_int(&[1, 0, 0]),
        vec_int(&[0, 1, 0]),
        vec_int(&[0, 0, 1]),
    ];
    PComplex::build(3, vertices, simplicial_closure(&[vec![0, 1, 2, 3]])).expect("valid fixture")
}

/// Boundary complex of the tetrahedron (a simplicial 2-sphere).
pub fn tetra_boundary() -> Arc<PComplex> {
    let vertices = vec![
        vec_int(&[0, 0, 0]),
        vec_int(&[1, 0, 0]),
        vec_int(&[0, 1, 0]),
        vec_int(&[0, 0, 1]),
    ];
    let triangles: Vec<Vec<usize>> =
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
    PComplex::build(3, vertices, simplicial_closure(&triangles)).expect("valid fixture")
}

/// Full face complex of the unit cube: 8 + 12 + 6 + 1 cells.
pub fn cube() -> Arc<PComplex> {
    let vertices: Vec<Vector> = (0..8)
        .map(|m| vec_int(&[m & 1, m >> 1 & 1, m >> 2 & 1]))
        .collect();
    let mut cells = Vec::new();
    // faces are subsets of coordinates pinned to 0 or 1
    for fixed_mask in 0u8..8 {
        for values in 0u8..1 << fixed_mask.count_ones() {
            let mut pinned = [None; 3];
            let mut vi = 0;
            for (c, p) in pinned.iter_mut().enumerate() {
                if fixed_mask >> c & 1 == 1 {
                    *p = Some(values >> vi & 1);
                    vi += 1;
                }
            }
            let verts: Vec<usize> = (0..8usize)
                .filter(|&m| {
                    (0..3).all(|c| match pinned[c] {
                        Some(b) => (m >> c & 1) as u8 == b,
                        None => true,
                    })
                })
                .collect();
            cells.push(CellSpec::new(verts));
        }
    }
    PComplex::build(3, vertices, cells).expect("valid fixture")
}

/// Square boundary crossed with a segment: the side surface of a box in R^3.
/// Has H^0 = H^1 = 1 and supports degree-2 products.
pub fn cylinder() -> Arc<PComplex> {
    let mut vertices = Vec::new();
    for z in 0..2i64 {
        for (x, y) in [(0, 0), (1, 0), (1, 1), (0, 1)] {
            vertices.push(vec_int(&[x, y, z]));
        }
    }
    let ring = [0usize, 1, 2, 3];
    let mut cells: Vec<CellSpec> = (0..8).map(|v| CellSpec::new(vec![v])).collect();
    for z in 0..2usize {
        for (i, &r) in ring.iter().enumerate() {
            cells.push(CellSpec::new(vec![4 * z + r, 4 * z + ring[(i + 1) % 4]]));
        }
    }
    for &r in &ring {
        cells.push(CellSpec::new(vec![r, 4 + r]));
    }
    for (i, &a) in ring.iter().enumerate() {
        let b = ring[(i + 1) % 4];
        cells.push(CellSpec::new(vec![a, b, 4 + a, 4 + b]));
    }
    PComplex::build(3, vertices, cells).expect("valid fixture")
}

/// A triangular prism: the triangle fixture crossed with a unit segment.
/// Its discriminant has a wall that is not a coordinate hyperplane.
pub fn prism() -> Arc<PComplex> {
    let mut vertices = Vec::new();
    for z in 0..2i64 {
        for (x, y) in [(0, 0), (1, 0), (0, 1)] {
            vertices.push(vec_int(&[x, y, z]));
        }
    }
    let mut cells: Vec<CellSpec> = (0..6).map(|v| CellSpec::new(vec![v])).collect();
    for z in 0..2usize {
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            cells.push(CellSpec::new(vec![3 * z + a, 3 * z + b]));
        }
    }
    for v in 0..3 {
        cells.push(CellSpec::new(vec![v, v + 3]));
    }
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        cells.push(CellSpec::new(vec![a, b, a + 3, b + 3]));
    }
    cells.push(CellSpec::new(vec![0, 1, 2]));
    cells.push(CellSpec::new(vec![3, 4, 5]));
    cells.push(CellSpec::new((0..6).collect()));
    PComplex::build(3, vertices, cells).expect("valid fixture")
}

/// The unit square subdivided by the main diagonal into two triangles.
pub fn diagonal_split_square() -> Arc<PComplex> {
    let vertices = vec![
        vec_int(&[0, 0]),
        vec_int(&[1, 0]),
        vec_int(&[1, 1]),
        vec_int(&[0, 1]),
    ];
    let cells = simplicial_closure(&[vec![0, 1, 2], vec![0, 2, 3]]);
    PComplex::build(2, vertices, cells).expect("valid fixture")
}

/// Barycentric subdivision of the triangle fixture.
pub fn barycentric_triangle() -> Arc<PComplex> {
    let half = || Rat::new(1.into(), 2.into());
    let third = || Rat::new(1.into(), 3.into());
    let vertices: Vec<Vector> = vec![
        vec_int(&[0, 0]),          // 0: A
        vec_int(&[1, 0]),          // 1: B
        vec_int(&[0, 1]),          // 2: C
        vec![half(), Rat::zero()], // 3: mid AB
        vec![half(), half()],      // 4: mid BC
        vec![Rat::zero(), half()], // 5: mid CA
        vec![third(), third()],    // 6: barycenter
    ];
    let triangles = vec![
        vec![0, 3, 6],
        vec![1, 3, 6],
        vec![1, 4, 6],
        vec![2, 4, 6],
        vec![2, 5, 6],
        vec![0, 5, 6],
    ];
    PComplex::build(2, vertices, simplicial_closure(&triangles)).expect("valid fixture")
}

/// Random triangulation of an n-by-m grid of unit squares, with each square
/// split along a randomly chosen diagonal and an optional unimodular shear
/// applied to the vertex lattice.
pub fn grid_triangulation(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Arc<PComplex> {
    let shear: i64 = rng.gen_range(-1..=1);
    let mut vertices = Vec::new();
    for j in 0..=m as i64 {
        for i in 0..=n as i64 {
            vertices.push(vec_int(&[i + shear * j, j]));
        }
    }
    let id = |i: usize, j: usize| j * (n + 1) + i;
    let mut triangles = Vec::new();
    for j in 0..m {
        for i in 0..n {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            if rng.gen_bool(0.5) {
                triangles.push(vec![a, b, c]);
                triangles.push(vec![a, c, d]);
            } else {
                triangles.push(vec![a, b, d]);
                triangles.push(vec![b, c, d]);
            }
        }
    }
    PComplex::build(2, vertices, simplicial_closure(&triangles)).expect("valid fixture")
}

/// Exact 2D convex hull (monotone chain), counterclockwise, no collinear
/// points kept.
pub fn convex_hull_2d(points: &[Vector]) -> Vec<Vector> {
    let mut pts: Vec<Vector> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: &Vector, a: &Vector, b: &Vector| -> Rat {
        (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
    };
    let build = |iter: Box<dyn Iterator<Item = &Vector>>| {
        let mut chain: Vec<Vector> = Vec::new();
        for p in iter {
            while chain.len() >= 2
                && !cross(&chain[chain.len() - 2], &chain[chain.len() - 1], p).is_positive()
            {
                chain.pop();
            }
            chain.push(p.clone());
        }
        chain.pop();
        chain
    };
    let mut hull = build(Box::new(pts.iter()));
    hull.extend(build(Box::new(pts.iter().rev())));
    hull
}

/// Face complex of a (full-dimensional) convex polygon given in
/// counterclockwise vertex order.
pub fn polygon_complex(hull: &[Vector]) -> Arc<PComplex> {
    let k = hull.len();
    assert!(k >= 3, "polygon needs at least 3 vertices");
    let mut cells: Vec<CellSpec> = (0..k).map(|v| CellSpec::new(vec![v])).collect();
    for i in 0..k {
        cells.push(CellSpec::oriented(
            vec![i, (i + 1) % k],
            vec![i, (i + 1) % k],
        ));
    }
    cells.push(CellSpec::new((0..k).collect()));
    PComplex::build(2, hull.to_vec(), cells).expect("valid polygon complex")
}

/// A random convex lattice polygon with at least 3 vertices.
pub fn random_lattice_polygon(rng: &mut ChaCha8Rng) -> Vec<Vector> {
    loop {
        let count = rng.gen_range(4..10);
        let pts: Vec<Vector> = (0..count)
            .map(|_| vec_int(&[rng.gen_range(-4..=4), rng.gen_range(-4..=4)]))
            .collect();
        let hull = convex_hull_2d(&pts);
        if hull.len() >= 3 {
            return hull;
        }
    }
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat_int(rng.gen_range(-4..=4))
}

fn random_ext(dim: usize, rng: &mut ChaCha8Rng, parity: Option<Parity>) -> ExtElement {
    let mut e = ExtElement::zero(dim);
    for _ in 0..rng.gen_range(1..=3) {
        let mut blade: Vec<usize> = (0..dim).filter(|_| rng.gen_bool(0.5)).collect();
        if let Some(p) = parity {
            let want_odd = p == Parity::Odd;
            if blade.len() % 2 == (if want_odd { 0 } else { 1 }) {
                if blade.is_empty() || (blade.len() < dim && rng.gen_bool(0.5)) {
                    let extra = (0..dim).find(|i| !blade.contains(i)).unwrap();
                    blade.push(extra);
                    blade.sort_unstable();
                } else {
                    blade.pop();
                }
            }
        }
        e = e.add(&ExtElement::term(dim, blade, random_rat(rng)));
    }
    e
}

/// Random cochain with small coefficients.
pub fn random_cochain(
    x: &Arc<PComplex>,
    degree: usize,
    ring: RingKind,
    rng: &mut ChaCha8Rng,
) -> Cochain {
    random_cochain_with_parity(x, degree, ring, None, rng)
}

/// Random cochain whose values all share one parity (when the ring allows).
pub fn random_cochain_with_parity(
    x: &Arc<PComplex>,
    degree: usize,
    ring: RingKind,
    parity: Option<Parity>,
    rng: &mut ChaCha8Rng,
) -> Cochain {
    let mut r = Cochain::zero(x, degree, ring);
    for &c in x.cells_of_dim(degree) {
        let v = match ring {
            RingKind::Rational => RingElement::Scalar(random_rat(rng)),
            RingKind::Exterior(n) => RingElement::Exterior(random_ext(n, rng, parity)),
        };
        r.set(c, v).unwrap();
    }
    r
}

/// Random cocycle: a random exact combination of a kernel basis of d.
pub fn random_cocycle(
    x: &Arc<PComplex>,
    degree: usize,
    ring: RingKind,
    rng: &mut ChaCha8Rng,
) -> Cochain {
    let cells = x.cells_of_dim(degree);
    let d = x.coboundary_matrix(degree);
    let kernel = crate::rat::solve_affine(&d, &crate::rat::zero_vector(d.nrows()))
        .expect("homogeneous system")
        .nullspace;
    let mut r = Cochain::zero(x, degree, ring);
    let add_component = |coeffs: &[Rat], blade: Option<&[usize]>, r: &mut Cochain| {
        for (i, &cell) in cells.iter().enumerate() {
            if coeffs[i].is_zero() {
                continue;
            }
            let v = match (ring, blade) {
                (RingKind::Rational, None) => RingElement::Scalar(coeffs[i].clone()),
                (RingKind::Exterior(n), Some(b)) => {
                    RingElement::Exterior(ExtElement::term(n, b.to_vec(), coeffs[i].clone()))
                }
                _ => unreachable!(),
            };
            let sum = r.value(cell).add(&v).expect("same ring");
            r.set(cell, sum).unwrap();
        }
    };
    let random_kernel_vector = |rng: &mut ChaCha8Rng| -> Vector {
        let mut acc = crate::rat::zero_vector(cells.len());
        for k in &kernel {
            let c = random_rat(rng);
            for (a, b) in acc.iter_mut().zip(k) {
                *a = &*a + &c * b;
            }
        }
        acc
    };
    match ring {
        RingKind::Rational => {
            let coeffs = random_kernel_vector(rng);
            add_component(&coeffs, None, &mut r);
        }
        RingKind::Exterior(n) => {
            for _ in 0..2 {
                let blade: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                let coeffs = random_kernel_vector(rng);
                add_component(&coeffs, Some(&blade), &mut r);
            }
        }
    }
    debug_assert!(r.is_cocycle());
    r
}

/// Random element of the subring of exterior cocycles whose value on each
/// cell is a multiple of the wedge of that cell's tangent basis.
pub fn random_tangent_cocycle(x: &Arc<PComplex>, degree: usize, rng: &mut ChaCha8Rng) -> Cochain {
    let n = x.dim();
    let cells = x.cells_of_dim(degree);
    // closedness of c |-> sum c_cell * wedge(tangent) is a rational linear
    // condition per ((degree+1)-cell, blade) pair
    let wedges: Vec<ExtElement> = cells
        .iter()
        .map(|&c| ExtElement::wedge_of_vectors(n, &x.cell(c).tangent))
        .collect();
    let mut blades = BTreeSet::new();
    for w in &wedges {
        blades.extend(w.terms().map(|(b, _)| b.clone()));
    }
    let mut rows = Vec::new();
    for &g in x.cells_of_dim(degree + 1) {
        for blade in &blades {
            let mut row = crate::rat::zero_vector(cells.len());
            for (i, &c) in cells.iter().enumerate() {
                if x.facets(g).contains(&c) {
                    let inc = rat_int(x.incidence(g, c) as i64);
                    row[i] = inc * wedges[i].coefficient(blade);
                }
            }
            rows.push(row);
        }
    }
    let matrix = Matrix::new(rows, cells.len());
    let kernel = crate::rat::solve_affine(&matrix, &crate::rat::zero_vector(matrix.nrows()))
        .expect("homogeneous system")
        .nullspace;
    let mut coeffs = crate::rat::zero_vector(cells.len());
    for k in &kernel {
        let c = random_rat(rng);
        for (a, b) in coeffs.iter_mut().zip(k) {
            *a = &*a + &c * b;
        }
    }
    let mut r = Cochain::zero(x, degree, RingKind::Exterior(n));
    for (i, &cell) in cells.iter().enumerate() {
        r.set(cell, RingElement::Exterior(wedges[i].scale(&coeffs[i])))
            .unwrap();
    }
    debug_assert!(r.is_cocycle());
    r
}
