//! Exact rational scalars, vectors and matrices.
//!
//! Everything downstream (cones, pair sets, discriminants) reduces to sign
//! decisions, so the whole kernel works over arbitrary-precision rationals.
//! No floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar. Always stored reduced with a positive denominator.
pub type Rat = BigRational;

/// A point of the ambient space or a covector, as a dense list of rationals.
pub type Vector = Vec<Rat>;

/// Build a rational from an integer numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from an integer.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// Build a vector from integer coordinates.
pub fn vec_int(coords: &[i64]) -> Vector {
    coords.iter().map(|&c| rat_int(c)).collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse `{0}` as a rational (expected `p` or `p/q`)")]
pub struct ParseRatError(String);

/// Parse `"p"` or `"p/q"` into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    let mk_err = || ParseRatError(s.to_string());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| mk_err())?;
            let d: BigInt = den.trim().parse().map_err(|_| mk_err())?;
            if d.is_zero() {
                return Err(mk_err());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Format a rational as `"p"` or `"p/q"`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse a comma-separated list of rationals, e.g. `"1/2,-3,0"`.
pub fn parse_vector(s: &str) -> Result<Vector, ParseRatError> {
    s.split(',').map(parse_rat).collect()
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Rat::zero(); n]
}

pub fn is_zero_vector(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Rat, a: &[Rat]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_neg(a: &[Rat]) -> Vector {
    a.iter().map(|x| -x).collect()
}

/// Barycenter of a non-empty set of points.
pub fn barycenter(points: &[&Vector]) -> Vector {
    assert!(!points.is_empty());
    let n = points[0].len();
    let k = rat_int(points.len() as i64);
    let mut acc = zero_vector(n);
    for p in points {
        acc = vec_add(&acc, p);
    }
    acc.iter().map(|c| c / &k).collect()
}

/// Scale a nonzero rational vector to integer entries with gcd 1 and first
/// nonzero entry positive. Used to canonicalize lines for deduplication.
pub fn primitive_integer(v: &[Rat]) -> Vector {
    assert!(!is_zero_vector(v), "primitive_integer of zero vector");
    let mut lcm = BigInt::one();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut gcd = BigInt::zero();
    for i in &ints {
        gcd = gcd.gcd(i);
    }
    let lead_neg = ints.iter().find(|i| !i.is_zero()).map(|i| i.is_negative());
    let sign = if lead_neg == Some(true) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter()
        .map(|i| Rat::from_integer(i / &gcd * &sign))
        .collect()
}

/// Dense row-major rational matrix. The column count is explicit because
/// matrices with zero rows still carry a dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: Vec<Vector>,
    cols: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("the affine system has no solution")]
pub struct Infeasible;

/// An exact solution of `a x = b` together with a kernel basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vector,
    pub nullspace: Vec<Vector>,
}

impl Matrix {
    pub fn new(rows: Vec<Vector>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
        }
        Matrix { rows, cols }
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::new(rows, cols)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vector]) -> Self {
        if cols.is_empty() {
            return Matrix::new(Vec::new(), 0);
        }
        let n = cols[0].len();
        let rows = (0..n)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Matrix::new(rows, cols.len())
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = zero_vector(n);
                r[i] = Rat::one();
                r
            })
            .collect();
        Matrix::new(rows, n)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Matrix::new(rows, self.nrows())
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vector {
        assert_eq!(x.len(), self.cols);
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    /// In-place reduction to reduced row echelon form.
    /// Returns the pivot columns (one per nonzero row, in order).
    fn rref_in_place(&mut self) -> Vec<usize> {
        let (m, n) = (self.rows.len(), self.cols);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row >= m {
                break;
            }
            let Some(p) = (row..m).find(|&r| !self.rows[r][col].is_zero()) else {
                continue;
            };
            self.rows.swap(row, p);
            let inv = self.rows[row][col].clone();
            for j in col..n {
                let v = &self.rows[row][j] / &inv;
                self.rows[row][j] = v;
            }
            for r in 0..m {
                if r != row && !self.rows[r][col].is_zero() {
                    let factor = self.rows[r][col].clone();
                    for j in col..n {
                        let v = &self.rows[r][j] - &factor * &self.rows[row][j];
                        self.rows[r][j] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }
}

/// Rank over the rationals, exact.
pub fn rank(m: &Matrix) -> usize {
    m.rref().1.len()
}

/// Exact sign of the determinant of a square matrix: -1, 0 or +1.
pub fn det_sign(m: &Matrix) -> i32 {
    assert_eq!(m.nrows(), m.ncols(), "det_sign of a non-square matrix");
    let n = m.nrows();
    let mut a = m.rows.clone();
    let mut sign = 1i32;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return 0;
        };
        if p != col {
            a.swap(col, p);
            sign = -sign;
        }
        if a[col][col].is_negative() {
            sign = -sign;
        }
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
    sign
}

/// Solve `a x = b` exactly. Returns one particular solution (free variables
/// set to zero) and a canonical basis of `ker a`.
pub fn solve_affine(a: &Matrix, b: &[Rat]) -> Result<AffineSolution, Infeasible> {
    assert_eq!(a.nrows(), b.len(), "solve_affine: rhs length mismatch");
    let n = a.ncols();
    let mut aug = Matrix::new(
        a.rows
            .iter()
            .zip(b)
            .map(|(r, v)| {
                let mut row = r.clone();
                row.push(v.clone());
                row
            })
            .collect(),
        n + 1,
    );
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&n) {
        return Err(Infeasible); // a zero row with nonzero rhs
    }
    let mut particular = zero_vector(n);
    for (r, &col) in pivots.iter().enumerate() {
        particular[col] = aug.rows[r][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = zero_vector(n);
            v[f] = Rat::one();
            for (r, &col) in pivots.iter().enumerate() {
                v[col] = -aug.rows[r][f].clone();
            }
            v
        })
        .collect();
    Ok(AffineSolution {
        particular,
        nullspace,
    })
}

/// Basis of `{u : u . w = 0 for every input w}` inside dimension `n`,
/// canonicalized by row reduction so repeated calls are deterministic.
pub fn orthogonal_complement(vectors: &[Vector], n: usize) -> Vec<Vector> {
    for v in vectors {
        assert_eq!(v.len(), n, "orthogonal_complement: dimension mismatch");
    }
    let m = Matrix::new(vectors.to_vec(), n);
    let sol = solve_affine(&m, &zero_vector(vectors.len())).expect("homogeneous system");
    let basis = Matrix::new(sol.nullspace, n);
    let (reduced, pivots) = basis.rref();
    reduced.rows[..pivots.len()].to_vec()
}

/// Coordinates of `w` in the given basis (solves `sum x_i b_i = w`), or
/// `None` when `w` lies outside the span.
pub fn coords_in_basis(basis: &[Vector], w: &[Rat]) -> Option<Vector> {
    if basis.is_empty() {
        return is_zero_vector(w).then(Vec::new);
    }
    let m = Matrix::from_cols(basis);
    solve_affine(&m, w).ok().map(|s| s.particular)
}
