//! Exact two-phase simplex over arbitrary-precision rationals.
#![allow(clippy::needless_range_loop)] // tableau code is index-driven
//!
//! Solves min c.x subject to A x = b, x >= 0. Bland's rule guarantees
//! termination. Problem sizes here are tiny (tens of variables), so the
//! tableau form with `BigRational` entries is fast enough and exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Lp {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, x: Vec<Rat> },
}

struct Tableau {
    // rows x (nvars + 1); last column is the RHS.
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    nvars: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.nvars]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.rows[row][col].clone();
        debug_assert!(!piv.is_zero());
        for v in self.rows[row].iter_mut() {
            *v /= &piv;
        }
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for j in 0..=self.nvars {
                let delta = &factor * &self.rows[row][j];
                self.rows[i][j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Minimizes obj (length nvars+1, last entry = current negated value)
    /// over the tableau, allowing only columns < enter_limit to enter.
    /// Bland's rule: smallest eligible indices.
    fn run(&mut self, obj: &mut [Rat], enter_limit: usize) -> bool {
        loop {
            let mut enter = None;
            for j in 0..enter_limit {
                if obj[j].is_negative() {
                    enter = Some(j);
                    break;
                }
            }
            let Some(col) = enter else { return true };
            let mut leave: Option<usize> = None;
            let mut best: Option<Rat> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = self.rhs(i) / &self.rows[i][col];
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            ratio < *b
                                || (ratio == *b && self.basis[i] < self.basis[leave.unwrap()])
                        }
                    };
                    if better {
                        best = Some(ratio);
                        leave = Some(i);
                    }
                }
            }
            let Some(row) = leave else { return false }; // unbounded
            self.pivot(row, col);
            // Eliminate the entering column from the objective.
            if !obj[col].is_zero() {
                let factor = obj[col].clone();
                for j in 0..=self.nvars {
                    let delta = &factor * &self.rows[row][j];
                    obj[j] -= delta;
                }
            }
        }
    }
}

/// min c.x s.t. a x = b, x >= 0.
pub fn solve_min(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> Lp {
    let m = a.len();
    let n = c.len();
    debug_assert_eq!(b.len(), m);

    // Phase 1: artificial variable per row, rows normalized to b >= 0.
    let nvars = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rat::zero(); nvars + 1];
        let flip = b[i].is_negative();
        for j in 0..n {
            row[j] = if flip {
                -a[i][j].clone()
            } else {
                a[i][j].clone()
            };
        }
        row[n + i] = Rat::one();
        row[nvars] = if flip { -b[i].clone() } else { b[i].clone() };
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        nvars,
    };
    // Phase-1 objective: minimize the sum of artificials. Reduced costs start
    // as -(column sums over the constraint rows).
    let mut obj = vec![Rat::zero(); nvars + 1];
    for j in 0..=nvars {
        let mut s = Rat::zero();
        for i in 0..m {
            s += &t.rows[i][j];
        }
        obj[j] = -s;
    }
    for j in n..nvars {
        obj[j] = Rat::zero();
    }
    let finished = t.run(&mut obj, nvars);
    debug_assert!(finished, "phase 1 is bounded below by zero");
    // Optimal phase-1 value is -obj[nvars].
    if !obj[nvars].is_zero() {
        return Lp::Infeasible;
    }
    // Drive remaining artificial variables out of the basis.
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(col) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, col);
            }
            // A fully zero structural row is redundant; the artificial stays
            // basic at value zero, which is harmless for phase 2 as long as
            // artificial columns never re-enter (they are priced at zero
            // reduced cost below only if we include them; we do not).
        }
    }

    // Phase 2 objective on structural variables only.
    let mut obj2 = vec![Rat::zero(); nvars + 1];
    for (j, cj) in c.iter().enumerate() {
        obj2[j] = cj.clone();
    }
    // Make the objective consistent with the current basis.
    for i in 0..m {
        let bi = t.basis[i];
        if bi < n && !obj2[bi].is_zero() {
            let factor = obj2[bi].clone();
            for j in 0..=nvars {
                let delta = &factor * &t.rows[i][j];
                obj2[j] -= delta;
            }
        }
    }
    if !t.run(&mut obj2, n) {
        return Lp::Unbounded;
    }

    let mut x = vec![Rat::zero(); n];
    for i in 0..m {
        if t.basis[i] < n {
            x[t.basis[i]] = t.rhs(i).clone();
        }
    }
    let value = c
        .iter()
        .zip(x.iter())
        .fold(Rat::zero(), |acc, (cj, xj)| acc + cj * xj);
    Lp::Optimal { value, x }
}

/// max c.x s.t. a x = b, x >= 0.
pub fn solve_max(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> Lp {
    let neg: Vec<Rat> = c.iter().map(|v| -v.clone()).collect();
    match solve_min(a, b, &neg) {
        Lp::Optimal { value, x } => Lp::Optimal { value: -value, x },
        other => other,
    }
}
