//! Exact linear feasibility and optimization over the rationals.
//!
//! A small dense two-phase simplex with Bland's rule. Every cone membership,
//! cone intersection and segment query in the crate reduces to instances of
//! this; sizes stay tiny (a handful of variables), so a textbook tableau is
//! the right tool.

use crate::rat::{zero_vector, Rat, Vector};
use num::{One, Signed, Zero};

/// Relation of one linear constraint `coeffs . x REL rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Lt,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vector,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vector, rel: Rel, rhs: Rat) -> Self {
        Constraint { coeffs, rel, rhs }
    }

    pub fn le(coeffs: Vector, rhs: Rat) -> Self {
        Self::new(coeffs, Rel::Le, rhs)
    }

    pub fn lt(coeffs: Vector, rhs: Rat) -> Self {
        Self::new(coeffs, Rel::Lt, rhs)
    }

    pub fn eq(coeffs: Vector, rhs: Rat) -> Self {
        Self::new(coeffs, Rel::Eq, rhs)
    }

    pub fn satisfied_by(&self, x: &[Rat]) -> bool {
        let lhs = crate::rat::dot(&self.coeffs, x);
        match self.rel {
            Rel::Le => lhs <= self.rhs,
            Rel::Lt => lhs < self.rhs,
            Rel::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: Vector },
}

/// A feasible point of the system, or `None`. Variables are free (not sign
/// restricted). Strict (`Lt`) rows are honored exactly: the solver maximizes
/// a slack margin and accepts only a strictly positive one.
pub fn feasible_point(nvars: usize, cons: &[Constraint]) -> Option<Vector> {
    let has_strict = cons.iter().any(|c| c.rel == Rel::Lt);
    if !has_strict {
        return match solve(nvars, None, cons, false) {
            LpResult::Optimal { point, .. } => Some(point),
            LpResult::Infeasible => None,
            LpResult::Unbounded => unreachable!("phase 1 cannot be unbounded"),
        };
    }
    // x is strictly feasible iff max { t : a.x + t <= b on strict rows, t <= 1 } > 0.
    let mut relaxed: Vec<Constraint> = Vec::with_capacity(cons.len() + 1);
    for c in cons {
        let mut coeffs = c.coeffs.clone();
        coeffs.push(if c.rel == Rel::Lt {
            Rat::one()
        } else {
            Rat::zero()
        });
        let rel = if c.rel == Rel::Eq { Rel::Eq } else { Rel::Le };
        relaxed.push(Constraint::new(coeffs, rel, c.rhs.clone()));
    }
    let mut cap = zero_vector(nvars);
    cap.push(Rat::one());
    relaxed.push(Constraint::le(cap, Rat::one()));
    let mut objective = zero_vector(nvars);
    objective.push(Rat::one());
    match solve(nvars + 1, Some(&objective), &relaxed, true) {
        LpResult::Optimal { value, mut point } if value.is_positive() => {
            point.pop();
            Some(point)
        }
        _ => None,
    }
}

/// Minimize or maximize `objective . x` over a closed system (`Lt` rejected).
pub fn optimize(nvars: usize, objective: &[Rat], cons: &[Constraint], maximize: bool) -> LpResult {
    assert!(
        cons.iter().all(|c| c.rel != Rel::Lt),
        "optimize expects a closed system"
    );
    solve(nvars, Some(objective), cons, maximize)
}

/// Two-phase tableau simplex. Free variables are split as `x = p - q`.
fn solve(nvars: usize, objective: Option<&[Rat]>, cons: &[Constraint], maximize: bool) -> LpResult {
    for c in cons {
        assert_eq!(c.coeffs.len(), nvars, "constraint arity mismatch");
    }
    let nsplit = 2 * nvars;
    let nslack = cons.iter().filter(|c| c.rel != Rel::Eq).count();
    let ncols = nsplit + nslack + cons.len(); // + one artificial per row
    let mut rows: Vec<Vector> = Vec::with_capacity(cons.len());
    let mut basis: Vec<usize> = Vec::with_capacity(cons.len());
    let mut slack_idx = 0;
    for (r, c) in cons.iter().enumerate() {
        let mut row = zero_vector(ncols + 1);
        for (j, a) in c.coeffs.iter().enumerate() {
            row[j] = a.clone();
            row[nvars + j] = -a.clone();
        }
        let mut slack_col = None;
        if c.rel != Rel::Eq {
            let col = nsplit + slack_idx;
            row[col] = Rat::one();
            slack_col = Some(col);
            slack_idx += 1;
        }
        row[ncols] = c.rhs.clone();
        if row[ncols].is_negative() {
            for v in row.iter_mut() {
                *v = -std::mem::take(v);
            }
        }
        // Slack with +1 coefficient and nonnegative rhs can start basic;
        // otherwise an artificial carries the row.
        match slack_col {
            Some(col) if row[col].is_one() => basis.push(col),
            _ => {
                let art = nsplit + nslack + r;
                row[art] = Rat::one();
                basis.push(art);
            }
        }
        rows.push(row);
    }

    let art_start = nsplit + nslack;
    // Phase 1: minimize the sum of artificials.
    let mut cost = zero_vector(ncols + 1);
    for c in cost[art_start..ncols].iter_mut() {
        *c = Rat::one();
    }
    reduce_cost_row(&mut cost, &rows, &basis);
    run_simplex(&mut rows, &mut basis, &mut cost, ncols);
    if cost[ncols].is_negative() {
        return LpResult::Infeasible; // leftover artificial value
    }
    // Drive artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < rows.len() {
        if basis[r] >= art_start {
            if let Some(col) = (0..art_start).find(|&c| !rows[r][c].is_zero()) {
                pivot(&mut rows, &mut basis, &mut cost, r, col);
                r += 1;
            } else {
                rows.remove(r);
                basis.remove(r);
            }
        } else {
            r += 1;
        }
    }

    // Phase 2.
    let mut cost = zero_vector(ncols + 1);
    if let Some(obj) = objective {
        assert_eq!(obj.len(), nvars, "objective arity mismatch");
        for (j, c) in obj.iter().enumerate() {
            let c = if maximize { -c.clone() } else { c.clone() };
            cost[j] = c.clone();
            cost[nvars + j] = -c;
        }
    }
    reduce_cost_row(&mut cost, &rows, &basis);
    if !run_simplex(&mut rows, &mut basis, &mut cost, art_start) {
        return LpResult::Unbounded;
    }
    let mut point = zero_vector(nvars);
    for (r, &b) in basis.iter().enumerate() {
        if b < nvars {
            point[b] = &point[b] + &rows[r][ncols];
        } else if b < nsplit {
            point[b - nvars] = &point[b - nvars] - &rows[r][ncols];
        }
    }
    let mut value = -cost[ncols].clone();
    if maximize {
        value = -value;
    }
    LpResult::Optimal { value, point }
}

fn reduce_cost_row(cost: &mut Vector, rows: &[Vector], basis: &[usize]) {
    for (r, &b) in basis.iter().enumerate() {
        if !cost[b].is_zero() {
            let factor = cost[b].clone();
            for (cv, rv) in cost.iter_mut().zip(&rows[r]) {
                *cv = &*cv - &factor * rv;
            }
        }
    }
}

fn pivot(rows: &mut [Vector], basis: &mut [usize], cost: &mut Vector, r: usize, col: usize) {
    let inv = rows[r][col].clone();
    for v in rows[r].iter_mut() {
        *v = &*v / &inv;
    }
    for rr in 0..rows.len() {
        if rr != r && !rows[rr][col].is_zero() {
            let factor = rows[rr][col].clone();
            for j in 0..rows[r].len() {
                let v = &rows[rr][j] - &factor * &rows[r][j];
                rows[rr][j] = v;
            }
        }
    }
    if !cost[col].is_zero() {
        let factor = cost[col].clone();
        for (cv, rv) in cost.iter_mut().zip(&rows[r]) {
            *cv = &*cv - &factor * rv;
        }
    }
    basis[r] = col;
}

/// Bland's rule simplex on the reduced tableau. Returns false on unbounded.
fn run_simplex(
    rows: &mut [Vector],
    basis: &mut [usize],
    cost: &mut Vector,
    allowed: usize,
) -> bool {
    let rhs = rows.first().map_or(0, |r| r.len() - 1);
    loop {
        let Some(col) = (0..allowed).find(|&j| cost[j].is_negative()) else {
            return true;
        };
        let mut leave: Option<usize> = None;
        for r in 0..rows.len() {
            if rows[r][col].is_positive() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let ratio_r = &rows[r][rhs] / &rows[r][col];
                        let ratio_l = &rows[l][rhs] / &rows[l][col];
                        ratio_r < ratio_l || (ratio_r == ratio_l && basis[r] < basis[l])
                    }
                };
                if better {
                    leave = Some(r);
                }
            }
        }
        let Some(r) = leave else {
            return false;
        };
        pivot(rows, basis, cost, r, col);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int, vec_int};

    fn le(coeffs: &[i64], rhs: i64) -> Constraint {
        Constraint::le(vec_int(coeffs), rat_int(rhs))
    }

    fn eq(coeffs: &[i64], rhs: i64) -> Constraint {
        Constraint::eq(vec_int(coeffs), rat_int(rhs))
    }

    #[test]
    fn feasible_box() {
        let cons = vec![
            le(&[1, 0], 1),
            le(&[-1, 0], 0),
            le(&[0, 1], 1),
            le(&[0, -1], 0),
        ];
        let p = feasible_point(2, &cons).unwrap();
        assert!(cons.iter().all(|c| c.satisfied_by(&p)));
    }

    #[test]
    fn infeasible_pair() {
        let cons = vec![le(&[1], 0), le(&[-1], -1)]; // x <= 0 and x >= 1
        assert_eq!(feasible_point(1, &cons), None);
    }

    #[test]
    fn strict_needs_interior() {
        // x >= 0, x <= 0, x < 1 is feasible (x = 0) but x > 0, x <= 0 is not.
        let ok = vec![
            le(&[-1], 0),
            le(&[1], 0),
            Constraint::lt(vec_int(&[1]), rat_int(1)),
        ];
        assert!(feasible_point(1, &ok).is_some());
        let bad = vec![Constraint::lt(vec_int(&[-1]), rat_int(0)), le(&[1], 0)];
        assert_eq!(feasible_point(1, &bad), None);
    }

    #[test]
    fn strict_on_a_ray() {
        // relative interior of the ray {(t, 0) : t >= 0}
        let cons = vec![
            eq(&[0, 1], 0),
            Constraint::lt(vec_int(&[-1, 0]), rat_int(0)),
        ];
        let p = feasible_point(2, &cons).unwrap();
        assert!(p[0].is_positive());
        assert!(p[1].is_zero());
    }

    #[test]
    fn optimize_interval() {
        // t in [1/3, 3/2] expressed through a chain of inequalities
        let cons = vec![
            Constraint::le(vec![rat_int(-3)], rat_int(-1)),
            Constraint::le(vec![rat_int(2)], rat_int(3)),
        ];
        let lo = optimize(1, &[rat_int(1)], &cons, false);
        let hi = optimize(1, &[rat_int(1)], &cons, true);
        assert_eq!(
            lo,
            LpResult::Optimal {
                value: rat(1, 3),
                point: vec![rat(1, 3)]
            }
        );
        assert_eq!(
            hi,
            LpResult::Optimal {
                value: rat(3, 2),
                point: vec![rat(3, 2)]
            }
        );
    }

    #[test]
    fn optimize_unbounded() {
        let cons = vec![le(&[-1], 0)];
        assert_eq!(optimize(1, &[rat_int(1)], &cons, true), LpResult::Unbounded);
    }

    #[test]
    fn optimize_with_equalities() {
        // max x + y on the segment x + y = 2, 0 <= x <= 1, y <= 5
        let cons = vec![
            eq(&[1, 1], 2),
            le(&[1, 0], 1),
            le(&[-1, 0], 0),
            le(&[0, 1], 5),
        ];
        match optimize(2, &vec_int(&[1, 1]), &cons, true) {
            LpResult::Optimal { value, point } => {
                assert_eq!(value, rat_int(2));
                assert!(cons.iter().all(|c| c.satisfied_by(&point)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_variables() {
        assert!(feasible_point(0, &[]).is_some());
        assert!(feasible_point(0, &[eq(&[], 1)]).is_none());
    }

    #[test]
    fn degenerate_redundant_rows() {
        let cons = vec![
            eq(&[1, 1], 1),
            eq(&[2, 2], 2),
            le(&[0, 1], 0),
            le(&[0, -1], 0),
        ];
        let p = feasible_point(2, &cons).unwrap();
        assert_eq!(p, vec![rat_int(1), rat_int(0)]);
    }
}
