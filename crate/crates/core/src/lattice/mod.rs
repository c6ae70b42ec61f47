//! Polyhedral and integer-lattice computations.
#![allow(clippy::needless_range_loop)] // coordinate loops are index-driven
//!
//! Convex-hull membership is decided in the generator representation: a point
//! lies in λ·Conv(A) iff it is a convex combination of the dilated generators,
//! a linear feasibility problem solved exactly over rationals (see [`lp`]).
//! Lattice points of a dilation are enumerated coordinate by coordinate; at
//! each level the feasible range of the next coordinate is an interval whose
//! endpoints come from two small LPs, so pruning is exact and no bounding-box
//! scan is needed.

mod lp;
mod snf;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{cpow, Exponent, Support, C64};

use lp::{rat, Lp, Rat};

/// Generating points of a full-dimensional lattice polytope P = Conv(A).
///
/// The generators need not be vertices; full-dimensionality (affine rank n)
/// is checked at construction.
#[derive(Clone, Debug)]
pub struct LatticePolytopeSpec {
    generators: Support,
}

impl LatticePolytopeSpec {
    pub fn new(generators: Support) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptySupport);
        }
        let n = generators.dim();
        let rank = affine_rank(&generators);
        if rank != n {
            return Err(Error::NotFullDimensional { rank, dim: n });
        }
        // Dropping non-extreme generators keeps the hull identical and keeps
        // every later LP small. Skip the one-time reduction for huge inputs
        // where it would itself dominate.
        let generators = if generators.len() > n + 1 && generators.len() <= 2048 {
            extreme_points(&generators)
        } else {
            generators
        };
        Ok(LatticePolytopeSpec { generators })
    }

    pub fn from_rows(dim: usize, rows: &[Vec<u32>]) -> Result<Self> {
        LatticePolytopeSpec::new(Support::from_rows(dim, rows)?)
    }

    /// Standard simplex Conv{0, e_1, ..., e_n}.
    pub fn simplex(n: usize) -> Self {
        let mut rows = vec![vec![0u32; n]];
        for l in 0..n {
            let mut e = vec![0u32; n];
            e[l] = 1;
            rows.push(e);
        }
        LatticePolytopeSpec::from_rows(n, &rows).expect("simplex is full-dimensional")
    }

    pub fn dim(&self) -> usize {
        self.generators.dim()
    }

    pub fn generators(&self) -> &Support {
        &self.generators
    }
}

/// Affine rank of a set of integer points (dimension of their affine hull).
fn affine_rank(points: &Support) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let n = points.dim();
    let base = points.get(0);
    let mut rows: Vec<Vec<BigInt>> = points
        .iter()
        .skip(1)
        .map(|p| {
            (0..n)
                .map(|l| BigInt::from(p.entries()[l] as i64 - base.entries()[l] as i64))
                .collect()
        })
        .collect();
    // Fraction-free Gaussian elimination.
    let m = rows.len();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..m).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for r in tail.iter_mut() {
            if r[col].is_zero() {
                continue;
            }
            let a = r[col].clone();
            let b = prow[col].clone();
            for j in 0..n {
                r[j] = &r[j] * &b - &prow[j] * &a;
            }
        }
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

/// Minkowski sum of two exponent sets: all pairwise sums, deduplicated.
pub fn minkowski_sum(e1: &Support, e2: &Support) -> Result<Support> {
    if e1.dim() != e2.dim() {
        return Err(Error::DimensionMismatch {
            expected: e1.dim(),
            got: e2.dim(),
        });
    }
    let mut sums = Vec::with_capacity(e1.len() * e2.len());
    for a in e1.iter() {
        for b in e2.iter() {
            sums.push(a.add(b));
        }
    }
    Support::new(e1.dim(), sums)
}

/// Cartesian product of supports: all concatenations, dim = sum of dims.
pub fn cartesian_product(supports: &[Support]) -> Result<Support> {
    if supports.is_empty() {
        return Err(Error::EmptyList);
    }
    let total_dim: usize = supports.iter().map(|s| s.dim()).sum();
    let mut acc: Vec<Exponent> = vec![Exponent::new(Vec::new())];
    for s in supports {
        let mut next = Vec::with_capacity(acc.len() * s.len());
        for a in &acc {
            for b in s.iter() {
                next.push(a.concat(b));
            }
        }
        acc = next;
    }
    Support::new(total_dim, acc)
}

/// Constraint matrix for "q is a convex combination of λ-dilated generators":
/// variables are the weights μ_e >= 0, rows are Σμ = λ and the first
/// `fixed` coordinates of Σ μ_e·e = q.
fn combination_rows(gens: &Support, lambda: u32, prefix: &[i64]) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let k = gens.len();
    let mut a = Vec::with_capacity(1 + prefix.len());
    let mut b = Vec::with_capacity(1 + prefix.len());
    a.push(vec![rat(1); k]);
    b.push(rat(lambda as i64));
    for (l, &q) in prefix.iter().enumerate() {
        a.push(gens.iter().map(|e| rat(e.entries()[l] as i64)).collect());
        b.push(rat(q));
    }
    (a, b)
}

/// Is q in λ·Conv(generators)? Exact feasibility test.
pub(crate) fn contains_point(p: &LatticePolytopeSpec, lambda: u32, q: &[i64]) -> bool {
    let (a, b) = combination_rows(p.generators(), lambda, q);
    let c = vec![Rat::zero(); p.generators().len()];
    !matches!(lp::solve_min(&a, &b, &c), Lp::Infeasible)
}

/// Does the polytope contain the origin?
pub fn polytope_contains_origin(p: &LatticePolytopeSpec) -> bool {
    contains_point(p, 1, &vec![0i64; p.dim()])
}

/// Extreme points of Conv(s): drops every point expressible as a convex
/// combination of the others. The hull is unchanged.
pub fn extreme_points(s: &Support) -> Support {
    let pts = s.exponents();
    let k = pts.len();
    if k <= 1 {
        return s.clone();
    }
    let n = s.dim();
    let mut keep: Vec<Exponent> = Vec::with_capacity(k);
    for (i, q) in pts.iter().enumerate() {
        // Rows: Σ μ = 1 and Σ μ_j p_j = q over j != i.
        let mut a: Vec<Vec<Rat>> = vec![vec![Rat::zero(); k - 1]; n + 1];
        let mut col = 0;
        for (j, p) in pts.iter().enumerate() {
            if j == i {
                continue;
            }
            a[0][col] = rat(1);
            for l in 0..n {
                a[l + 1][col] = rat(p.entries()[l] as i64);
            }
            col += 1;
        }
        let mut b = vec![rat(1)];
        for l in 0..n {
            b.push(rat(q.entries()[l] as i64));
        }
        let c = vec![Rat::zero(); k - 1];
        if matches!(lp::solve_min(&a, &b, &c), Lp::Infeasible) {
            keep.push(q.clone());
        }
    }
    Support::new(n, keep).expect("extreme points keep the ambient dimension")
}

/// All lattice points of λ·Conv(generators) intersected with ℕⁿ.
///
/// λ = 0 gives {0}. Enumeration is exact: for each feasible prefix the next
/// coordinate ranges over an interval computed by a min- and a max-LP.
pub fn dilate_lattice_points(p: &LatticePolytopeSpec, lambda: u32) -> Support {
    let n = p.dim();
    if lambda == 0 {
        return Support::origin(n);
    }
    let points = enumerate_points(p.generators(), lambda, None);
    Support::new(n, points).expect("enumerated points share the ambient dimension")
}

/// Lattice points of λ·Conv(gens) ∩ ℕⁿ, optionally clipped to a per
/// coordinate box (used for interior candidates, where the box is tiny).
///
/// Box bounds on the not-yet-fixed coordinates enter the range LPs as
/// inequality rows (with slack variables), so prefixes with no boxed
/// completion are pruned immediately.
fn enumerate_points(gens: &Support, lambda: u32, clip: Option<&[(i64, i64)]>) -> Vec<Exponent> {
    // LP over weights μ (k of them) plus one slack per future-bound row:
    // Σμ = λ, fixed coordinates pinned to the prefix, future coordinates
    // confined to the clip box.
    fn coord_range(
        gens: &Support,
        lambda: u32,
        prefix: &[i64],
        l: usize,
        clip: Option<&[(i64, i64)]>,
    ) -> Option<(i64, i64)> {
        let n = gens.dim();
        let k = gens.len();
        let n_future = if clip.is_some() { n - l } else { 0 };
        let nvars = k + 2 * n_future;
        let mut a: Vec<Vec<Rat>> = Vec::new();
        let mut b: Vec<Rat> = Vec::new();
        let weight_row = |coord: usize| -> Vec<Rat> {
            let mut row = vec![Rat::zero(); nvars];
            for (j, e) in gens.iter().enumerate() {
                row[j] = rat(e.entries()[coord] as i64);
            }
            row
        };
        let mut row = vec![Rat::zero(); nvars];
        for j in 0..k {
            row[j] = rat(1);
        }
        a.push(row);
        b.push(rat(lambda as i64));
        for (coord, &q) in prefix.iter().enumerate() {
            a.push(weight_row(coord));
            b.push(rat(q));
        }
        if let Some(bounds) = clip {
            for (slot, coord) in (l..n).enumerate() {
                // Σμ e_coord - s⁻ = lo  and  Σμ e_coord + s⁺ = hi.
                let mut low = weight_row(coord);
                low[k + 2 * slot] = rat(-1);
                a.push(low);
                b.push(rat(bounds[coord].0));
                let mut high = weight_row(coord);
                high[k + 2 * slot + 1] = rat(1);
                a.push(high);
                b.push(rat(bounds[coord].1));
            }
        }
        let mut c = vec![Rat::zero(); nvars];
        for (j, e) in gens.iter().enumerate() {
            c[j] = rat(e.entries()[l] as i64);
        }
        let lo = match lp::solve_min(&a, &b, &c) {
            Lp::Optimal { value, .. } => value,
            _ => return None,
        };
        let hi = match lp::solve_max(&a, &b, &c) {
            Lp::Optimal { value, .. } => value,
            _ => return None,
        };
        Some((ceil_rat(&lo), floor_rat(&hi)))
    }

    fn recurse(
        gens: &Support,
        lambda: u32,
        n: usize,
        clip: Option<&[(i64, i64)]>,
        prefix: &mut Vec<i64>,
        out: &mut Vec<Exponent>,
    ) {
        let l = prefix.len();
        if l == n {
            out.push(Exponent::new(prefix.iter().map(|&v| v as u32).collect()));
            return;
        }
        let Some((mut lo, mut hi)) = coord_range(gens, lambda, prefix, l, clip) else {
            return;
        };
        lo = lo.max(0);
        if let Some(bounds) = clip {
            lo = lo.max(bounds[l].0);
            hi = hi.min(bounds[l].1);
        }
        for v in lo..=hi {
            prefix.push(v);
            recurse(gens, lambda, n, clip, prefix, out);
            prefix.pop();
        }
    }

    let n = gens.dim();
    debug_assert!(!gens.is_empty());
    let mut points = Vec::new();
    let mut prefix = Vec::new();
    recurse(gens, lambda, n, clip, &mut prefix, &mut points);
    points
}

fn floor_rat(r: &Rat) -> i64 {
    r.floor()
        .to_integer()
        .to_i64()
        .expect("polytope coordinates fit i64")
}

fn ceil_rat(r: &Rat) -> i64 {
    r.ceil()
        .to_integer()
        .to_i64()
        .expect("polytope coordinates fit i64")
}

/// Strict interior test. q is interior iff along every signed coordinate
/// direction some positive step stays inside: the cross-polytope spanned by
/// the displaced points then contains a neighborhood of q, and conversely.
/// One small LP per direction: max θ s.t. q + sign·θ·e_dir ∈ λ·P.
fn is_interior(p: &LatticePolytopeSpec, lambda: u32, q: &[i64]) -> bool {
    let gens = p.generators();
    let n = p.dim();
    let k = gens.len();
    for dir in 0..n {
        for &sign in &[1i64, -1i64] {
            // Variables: k weights and θ.
            let mut a: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
            let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
            let mut row = vec![Rat::zero(); k + 1];
            for j in 0..k {
                row[j] = rat(1);
            }
            a.push(row);
            b.push(rat(lambda as i64));
            for l in 0..n {
                let mut row = vec![Rat::zero(); k + 1];
                for (j, e) in gens.iter().enumerate() {
                    row[j] = rat(e.entries()[l] as i64);
                }
                if l == dir {
                    row[k] = rat(-sign);
                }
                a.push(row);
                b.push(rat(q[l]));
            }
            let mut c = vec![Rat::zero(); k + 1];
            c[k] = rat(1);
            match lp::solve_max(&a, &b, &c) {
                Lp::Optimal { value, .. } if value.is_positive() => {}
                _ => return false,
            }
        }
    }
    true
}

/// Smallest t >= 1 such that t·P contains an interior lattice point.
///
/// A full-dimensional lattice polytope always has one by t = n+1 (the vertex
/// sum of a full-dimensional lattice simplex inside P is interior to its
/// (n+1)-dilation), so exceeding that cap signals degenerate input.
pub fn codegree(p: &LatticePolytopeSpec) -> Result<u32> {
    let n = p.dim();
    let cap = n as u32 + 1;
    let gens = p.generators();
    let mins: Vec<i64> = (0..n)
        .map(|l| gens.iter().map(|e| e.entries()[l] as i64).min().unwrap())
        .collect();
    let maxs: Vec<i64> = (0..n)
        .map(|l| gens.iter().map(|e| e.entries()[l] as i64).max().unwrap())
        .collect();
    for t in 1..=cap {
        // Interior points are strictly inside the bounding box, so only
        // that (often tiny) slab is enumerated.
        let clip: Vec<(i64, i64)> = (0..n)
            .map(|l| (t as i64 * mins[l] + 1, t as i64 * maxs[l] - 1))
            .collect();
        if clip.iter().any(|&(lo, hi)| lo > hi) {
            continue;
        }
        for q in enumerate_points(gens, t, Some(&clip)) {
            let qi: Vec<i64> = q.entries().iter().map(|&v| v as i64).collect();
            if is_interior(p, t, &qi) {
                return Ok(t);
            }
        }
    }
    Err(Error::CodegreeCapExceeded { cap })
}

/// Lattice point counts of λ·P for λ = 0..=λ_max.
pub fn ehrhart_coeffs(p: &LatticePolytopeSpec, lambda_max: u32) -> Vec<i64> {
    (0..=lambda_max)
        .map(|l| dilate_lattice_points(p, l).len() as i64)
        .collect()
}

/// Integer table recovering point coordinates from monomial ratios.
///
/// Row j-1 holds the integers m_{j,l} with Σ_j m_{j,l}·α_j = e_l, where the
/// α_j run over A0 \ {0} in A0's fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentRecoveryTable {
    /// (k-1) x n integer matrix.
    pub m: Vec<Vec<i64>>,
    /// Position of the origin in A0's fixed order.
    pub base_index: usize,
}

impl ExponentRecoveryTable {
    /// True when every entry is nonnegative (zero-coordinate roots are safe).
    pub fn is_nonnegative(&self) -> bool {
        self.m.iter().all(|row| row.iter().all(|&v| v >= 0))
    }
}

/// Checks 0 ∈ A0 and ℤA0 = ℤⁿ; on success returns recovery integers.
///
/// When {e_1, ..., e_n} ⊆ A0 the table is the nonnegative selection
/// m_{j,l} = [α_j == e_l]; otherwise it comes from a Smith normal form of the
/// matrix of nonzero elements of A0.
pub fn lattice_condition(a0: &Support) -> Result<ExponentRecoveryTable> {
    if a0.is_empty() {
        return Err(Error::EmptySupport);
    }
    let n = a0.dim();
    let base_index = a0
        .position(&Exponent::zero(n))
        .ok_or(Error::MissingOrigin)?;
    let nonzero: Vec<&Exponent> = a0.iter().filter(|e| !e.is_zero()).collect();
    let k1 = nonzero.len();

    let units_present = (0..n).all(|l| a0.contains(&Exponent::unit(n, l)));
    if units_present {
        let m = nonzero
            .iter()
            .map(|e| {
                (0..n)
                    .map(|l| i64::from(**e == Exponent::unit(n, l)))
                    .collect()
            })
            .collect();
        return Ok(ExponentRecoveryTable { m, base_index });
    }

    // Columns of w are the nonzero elements of A0.
    let mut w = vec![vec![0i64; k1]; n];
    for (j, e) in nonzero.iter().enumerate() {
        for l in 0..n {
            w[l][j] = e.entries()[l] as i64;
        }
    }
    let snf = snf::smith_normal_form(&w);
    let full = snf.diag.len() >= n && snf.diag.iter().take(n).all(|d| d.abs() == 1);
    if !full {
        return Err(Error::LatticeNotFull);
    }
    // Solve w·m = e_l via u·w·v = s: m = v · y with y_i = (u e_l)_i / s_i.
    let mut m = vec![vec![0i64; n]; k1];
    for l in 0..n {
        let mut y = vec![0i64; k1];
        for (i, yi) in y.iter_mut().enumerate().take(n) {
            *yi = snf.u[i][l] / snf.diag[i];
        }
        for j in 0..k1 {
            let mut acc: i64 = 0;
            for (i, &yi) in y.iter().enumerate() {
                acc += snf.v[j][i] * yi;
            }
            m[j][l] = acc;
        }
    }
    // Integer identity check: Σ_j m_{j,l}·α_j == e_l exactly.
    for l in 0..n {
        for coord in 0..n {
            let mut acc: i64 = 0;
            for (j, e) in nonzero.iter().enumerate() {
                acc += m[j][l] * e.entries()[coord] as i64;
            }
            let want = i64::from(coord == l);
            debug_assert_eq!(acc, want, "recovery table identity failed");
            if acc != want {
                return Err(Error::LatticeNotFull);
            }
        }
    }
    Ok(ExponentRecoveryTable { m, base_index })
}

/// ζ_l = Π_j ratios_j^{m_{j,l}} from the ratios (ζ^{α_j} : α_j ∈ A0 \ {0}).
pub fn recover_point(ratios: &[C64], table: &ExponentRecoveryTable) -> Result<Vec<C64>> {
    if ratios.len() != table.m.len() {
        return Err(Error::DimensionMismatch {
            expected: table.m.len(),
            got: ratios.len(),
        });
    }
    let n = table.m.first().map_or(0, |r| r.len());
    let mut z = vec![C64::new(1.0, 0.0); n];
    for (j, ratio) in ratios.iter().enumerate() {
        for l in 0..n {
            let e = table.m[j][l];
            if e == 0 {
                continue;
            }
            if e > 0 {
                z[l] *= cpow(*ratio, e as u32);
            } else {
                if *ratio == C64::new(0.0, 0.0) {
                    return Err(Error::CoordinateUndefined);
                }
                z[l] /= cpow(*ratio, (-e) as u32);
            }
        }
    }
    Ok(z)
}
