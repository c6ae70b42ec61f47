//! Construction of admissible exponent-set tuples (A0, E0..Es, D).
//!
//! A tuple is admissible for a system F when A_i + E_i ⊆ D for all i
//! (compatibility), 0 ∈ A0 with ℤA0 = ℤⁿ (lattice condition), and some
//! f0 ∈ R_{A0} makes N_{f0} full rank (rank condition; checked at solve
//! time since it depends on F). Closed-form tuples exist for five structured
//! families; overdetermined unmixed systems get smaller tuples from an
//! incremental degree-by-degree construction.
//!
//! Convention pinned here: the dilation sums for E_i and D run over
//! j = 0..s including the auxiliary degree d_0 = 1 (and P_0 = Δ_n in the
//! mixed case); the tests pin the resulting cardinalities.

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::{
    cartesian_product, codegree, dilate_lattice_points, ehrhart_coeffs, lattice_condition,
    minkowski_sum, LatticePolytopeSpec,
};
use crate::linalg;
use crate::macaulay::{build_macaulay, cokernel, corank, extend_cokernel, n_matrix, CokernelBasis};
use crate::poly::{random_polynomial, CoeffDist, PolySystem, Polynomial, Support, C64};

/// Which construction produced a tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleFamily {
    Dense,
    Unmixed,
    MultiDense,
    MultiUnmixed,
    Mixed,
    Incremental,
}

impl TupleFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            TupleFamily::Dense => "dense",
            TupleFamily::Unmixed => "unmixed",
            TupleFamily::MultiDense => "multi-dense",
            TupleFamily::MultiUnmixed => "multi-unmixed",
            TupleFamily::Mixed => "mixed",
            TupleFamily::Incremental => "incremental",
        }
    }

    pub fn parse(s: &str) -> Option<TupleFamily> {
        match s {
            "dense" => Some(TupleFamily::Dense),
            "unmixed" => Some(TupleFamily::Unmixed),
            "multi-dense" => Some(TupleFamily::MultiDense),
            "multi-unmixed" => Some(TupleFamily::MultiUnmixed),
            "mixed" => Some(TupleFamily::Mixed),
            "incremental" => Some(TupleFamily::Incremental),
            _ => None,
        }
    }
}

/// Exponent data (A0, (E0, E1..Es), D) parameterizing the Macaulay build.
#[derive(Clone, Debug)]
pub struct AdmissibleTuple {
    a0: Support,
    /// e[0] is E0; e[i] is the shift set of f_i for i >= 1.
    e: Vec<Support>,
    d: Support,
    family: TupleFamily,
}

impl AdmissibleTuple {
    /// Assembles a tuple and verifies the compatibility and lattice
    /// invariants against the intended supports `a` (a[0] = A0).
    pub fn checked(
        a: &[Support],
        e: Vec<Support>,
        d: Support,
        family: TupleFamily,
    ) -> Result<Self> {
        assert_eq!(a.len(), e.len(), "one support per shift set");
        for (i, (ai, ei)) in a.iter().zip(e.iter()).enumerate() {
            for alpha in ai.iter() {
                for beta in ei.iter() {
                    if !d.contains(&alpha.add(beta)) {
                        return Err(Error::Compatibility {
                            index: i,
                            beta: beta.entries().to_vec(),
                            alpha: alpha.entries().to_vec(),
                        });
                    }
                }
            }
        }
        lattice_condition(&a[0])?;
        Ok(AdmissibleTuple {
            a0: a[0].clone(),
            e,
            d,
            family,
        })
    }

    /// Constructs from raw parts without invariant checks (deserialization).
    pub fn from_parts_unchecked(
        a0: Support,
        e: Vec<Support>,
        d: Support,
        family: TupleFamily,
    ) -> Self {
        AdmissibleTuple { a0, e, d, family }
    }

    pub fn a0(&self) -> &Support {
        &self.a0
    }

    pub fn e0(&self) -> &Support {
        &self.e[0]
    }

    /// Shift sets of the system polynomials (E1..Es).
    pub fn system_shifts(&self) -> &[Support] {
        &self.e[1..]
    }

    pub fn all_shifts(&self) -> &[Support] {
        &self.e
    }

    pub fn d(&self) -> &Support {
        &self.d
    }

    pub fn d_size(&self) -> usize {
        self.d.len()
    }

    pub fn family(&self) -> TupleFamily {
        self.family
    }

    pub fn num_system_polys(&self) -> usize {
        self.e.len() - 1
    }
}

fn checked_factor(total: u32, subtract: u32) -> Result<u32> {
    total.checked_sub(subtract).ok_or(Error::DegenerateDilation)
}

/// Dense tuple: A0 = Δ_n ∩ ℕⁿ, E_i and D are dilated standard simplices.
pub fn tuple_dense(n: usize, degrees: &[u32]) -> Result<AdmissibleTuple> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::InvalidParameter(
            "dense construction needs positive degrees".into(),
        ));
    }
    let simplex = LatticePolytopeSpec::simplex(n);
    let sigma: u32 = 1 + degrees.iter().sum::<u32>();
    let mut all_degrees = vec![1u32];
    all_degrees.extend_from_slice(degrees);

    let d_factor = checked_factor(sigma, n as u32)?;
    let d = dilate_lattice_points(&simplex, d_factor);
    let mut supports = Vec::with_capacity(all_degrees.len());
    let mut shifts = Vec::with_capacity(all_degrees.len());
    for &di in &all_degrees {
        supports.push(dilate_lattice_points(&simplex, di));
        let f = checked_factor(sigma - di, n as u32)?;
        shifts.push(dilate_lattice_points(&simplex, f));
    }
    AdmissibleTuple::checked(&supports, shifts, d, TupleFamily::Dense)
}

/// Unmixed tuple for Conv(A_i) = d_i·P: dilations shrink by codeg(P) - 1
/// instead of n.
pub fn tuple_unmixed(a: &Support, degrees: &[u32]) -> Result<AdmissibleTuple> {
    tuple_unmixed_tagged(a, degrees, TupleFamily::Unmixed)
}

fn tuple_unmixed_tagged(
    a: &Support,
    degrees: &[u32],
    family: TupleFamily,
) -> Result<AdmissibleTuple> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::InvalidParameter(
            "unmixed construction needs positive degrees".into(),
        ));
    }
    let p = LatticePolytopeSpec::new(a.clone())?;
    if !crate::lattice::polytope_contains_origin(&p) {
        return Err(Error::InvalidParameter(
            "unmixed construction needs 0 in the polytope".into(),
        ));
    }
    let codeg = codegree(&p)?;
    let sigma: u32 = 1 + degrees.iter().sum::<u32>();
    let mut all_degrees = vec![1u32];
    all_degrees.extend_from_slice(degrees);

    let d_factor = checked_factor(sigma + 1, codeg)?;
    let d = dilate_lattice_points(&p, d_factor);
    let mut supports = Vec::with_capacity(all_degrees.len());
    let mut shifts = Vec::with_capacity(all_degrees.len());
    for &di in &all_degrees {
        supports.push(dilate_lattice_points(&p, di));
        let f = checked_factor(sigma - di + 1, codeg)?;
        shifts.push(dilate_lattice_points(&p, f));
    }
    AdmissibleTuple::checked(&supports, shifts, d, family)
}

/// Multi-graded dense tuple: per-block simplex dilations, blocks of sizes
/// `block_sizes`, degree matrix rows = polynomials, columns = blocks.
pub fn tuple_multi_dense(block_sizes: &[usize], dmat: &[Vec<u32>]) -> Result<AdmissibleTuple> {
    let blocks: Vec<LatticePolytopeSpec> = block_sizes
        .iter()
        .map(|&nk| LatticePolytopeSpec::simplex(nk))
        .collect();
    tuple_multi(&blocks, dmat, TupleFamily::MultiDense)
}

/// Multi-unmixed tuple: per-block polytopes with per-block codegrees.
pub fn tuple_multi_unmixed(block_gens: &[Support], dmat: &[Vec<u32>]) -> Result<AdmissibleTuple> {
    let blocks: Vec<LatticePolytopeSpec> = block_gens
        .iter()
        .map(|g| LatticePolytopeSpec::new(g.clone()))
        .collect::<Result<_>>()?;
    for p in &blocks {
        if !crate::lattice::polytope_contains_origin(p) {
            return Err(Error::InvalidParameter(
                "multi-unmixed construction needs 0 in every block polytope".into(),
            ));
        }
    }
    tuple_multi(&blocks, dmat, TupleFamily::MultiUnmixed)
}

fn tuple_multi(
    blocks: &[LatticePolytopeSpec],
    dmat: &[Vec<u32>],
    family: TupleFamily,
) -> Result<AdmissibleTuple> {
    let r = blocks.len();
    if r == 0 || dmat.is_empty() || dmat.iter().any(|row| row.len() != r) {
        return Err(Error::InvalidParameter(
            "degree matrix must have one row per polynomial and one column per block".into(),
        ));
    }
    // Per-block shrink: n_k for simplices, codeg(P_k) - 1 in general.
    let shrink: Vec<u32> = blocks
        .iter()
        .map(|p| codegree(p).map(|c| c - 1))
        .collect::<Result<_>>()?;
    let s = dmat.len();
    // d_{0,k} = 1 for every block.
    let mut all_rows: Vec<Vec<u32>> = vec![vec![1; r]];
    all_rows.extend(dmat.iter().cloned());
    let col_sum: Vec<u32> = (0..r)
        .map(|k| all_rows.iter().map(|row| row[k]).sum())
        .collect();

    let product_dilate = |factors: &[u32]| -> Result<Support> {
        let per_block: Vec<Support> = blocks
            .iter()
            .zip(factors.iter())
            .map(|(p, &f)| dilate_lattice_points(p, f))
            .collect();
        cartesian_product(&per_block)
    };

    let d_factors: Vec<u32> = (0..r)
        .map(|k| checked_factor(col_sum[k], shrink[k]))
        .collect::<Result<_>>()?;
    let d = product_dilate(&d_factors)?;

    let mut supports = Vec::with_capacity(s + 1);
    let mut shifts = Vec::with_capacity(s + 1);
    for row in &all_rows {
        supports.push(product_dilate(row)?);
        let f: Vec<u32> = (0..r)
            .map(|k| checked_factor(col_sum[k] - row[k], shrink[k]))
            .collect::<Result<_>>()?;
        shifts.push(product_dilate(&f)?);
    }
    AdmissibleTuple::checked(&supports, shifts, d, family)
}

/// Mixed tuple from the actual supports: A0 = Δ_n ∩ ℕⁿ, E_i and D are
/// lattice points of Minkowski sums of the Newton polytopes (plus Δ_n).
pub fn tuple_mixed(supports: &[Support]) -> Result<AdmissibleTuple> {
    let s = supports.len();
    if s == 0 {
        return Err(Error::EmptyList);
    }
    let n = supports[0].dim();
    let simplex_gens = LatticePolytopeSpec::simplex(n).generators().clone();
    // Generator sets: index 0 is the simplex, 1..=s the supports, each
    // pruned to its extreme points (the hulls are what the construction
    // sums, so partial Minkowski sums stay vertex-sized).
    let mut gens: Vec<Support> = Vec::with_capacity(s + 1);
    gens.push(simplex_gens);
    for a in supports {
        if a.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: a.dim(),
            });
        }
        if a.is_empty() {
            return Err(Error::EmptySupport);
        }
        gens.push(crate::lattice::extreme_points(a));
    }

    let sum_without = |skip: Option<usize>| -> Result<Support> {
        let mut acc: Option<Support> = None;
        for (j, g) in gens.iter().enumerate() {
            if Some(j) == skip {
                continue;
            }
            acc = Some(match acc {
                None => g.clone(),
                Some(prev) => crate::lattice::extreme_points(&minkowski_sum(&prev, g)?),
            });
        }
        Ok(acc.expect("at least two generator sets"))
    };

    let full_gens = sum_without(None)?;
    let full_poly = LatticePolytopeSpec::new(full_gens)?; // full-dimensionality check
    let d = dilate_lattice_points(&full_poly, 1);

    let mut tuple_supports = Vec::with_capacity(s + 1);
    let mut shifts = Vec::with_capacity(s + 1);
    for (j, g) in gens.iter().enumerate() {
        let gsum = sum_without(Some(j))?;
        let poly = LatticePolytopeSpec::new(gsum)?;
        shifts.push(dilate_lattice_points(&poly, 1));
        tuple_supports.push(g.clone());
    }
    // A0 is the full simplex point set, not just its generators.
    tuple_supports[0] = dilate_lattice_points(&LatticePolytopeSpec::simplex(n), 1);
    AdmissibleTuple::checked(&tuple_supports, shifts, d, TupleFamily::Mixed)
}

/// Truncated Hilbert-series prediction for the stopping dilation of the
/// incremental construction.
#[derive(Clone, Debug)]
pub struct HilbertPrediction {
    pub lambda_min: u32,
    /// Series coefficients 0..=lambda_min (the last one is <= 0 when the
    /// prediction applies).
    pub coeffs: Vec<i64>,
    /// False when no non-positive coefficient exists up to the closed-form
    /// bound, in which case `lambda_min` is that bound.
    pub semiregular_assumed: bool,
}

/// Smallest degree at which the product of the lattice-point series of P and
/// Π (1 - t^{d_i}) turns non-positive. `degrees` must include d_0.
pub fn lambda_min_semiregular(a: &Support, degrees: &[u32]) -> Result<HilbertPrediction> {
    let p = LatticePolytopeSpec::new(a.clone())?;
    let codeg = codegree(&p)?;
    let sum: u32 = degrees.iter().sum();
    let bound = checked_factor(sum + 1, codeg)?;
    let ehr = ehrhart_coeffs(&p, bound);
    let mut coeffs = ehr;
    for &d in degrees {
        let prev = coeffs.clone();
        for (lam, c) in coeffs.iter_mut().enumerate() {
            if lam as u32 >= d {
                *c -= prev[lam - d as usize];
            }
        }
    }
    match coeffs.iter().position(|&c| c <= 0) {
        Some(lam) => Ok(HilbertPrediction {
            lambda_min: lam as u32,
            coeffs: coeffs[..=lam].to_vec(),
            semiregular_assumed: true,
        }),
        None => Ok(HilbertPrediction {
            lambda_min: bound,
            coeffs,
            semiregular_assumed: false,
        }),
    }
}

/// Output of the incremental unmixed construction: the tuple plus the
/// by-products that let the solver skip its cokernel and N_{f0} stages.
pub struct IncrementalResult {
    pub tuple: AdmissibleTuple,
    pub cokernel: CokernelBasis,
    pub n_f0: DMatrix<C64>,
    pub f0: Polynomial,
    pub lambda: u32,
}

/// Degree-by-degree search for the smallest dilation at which the rank
/// condition holds for a fixed random f0, extending the cokernel
/// incrementally instead of refactoring the full Macaulay matrix.
pub fn incremental_unmixed<R: Rng + ?Sized>(
    f: &PolySystem,
    a: &Support,
    degrees: &[u32],
    rng: &mut R,
    rtol: f64,
    lambda_cap: Option<u32>,
) -> Result<IncrementalResult> {
    let s = f.len();
    if degrees.len() != s || degrees.contains(&0) {
        return Err(Error::InvalidParameter(
            "need one positive degree per polynomial".into(),
        ));
    }
    let p = LatticePolytopeSpec::new(a.clone())?;
    if !crate::lattice::polytope_contains_origin(&p) {
        return Err(Error::InvalidParameter(
            "incremental construction needs 0 in the polytope".into(),
        ));
    }
    // F must be unmixed with respect to (P, degrees).
    let mut dilate_cache: std::collections::HashMap<u32, Support> = Default::default();
    let mut dilate = |lam: u32| -> Support {
        dilate_cache
            .entry(lam)
            .or_insert_with(|| dilate_lattice_points(&p, lam))
            .clone()
    };
    for (i, poly) in f.polys().iter().enumerate() {
        let bound = dilate(degrees[i]);
        if !poly.support().is_subset_of(&bound) {
            return Err(Error::InvalidParameter(format!(
                "polynomial {i} has support outside {}·P",
                degrees[i]
            )));
        }
    }

    let a0 = dilate(1);
    let f0 = random_polynomial(&a0, rng, CoeffDist::ComplexNormal)?;
    let cap = match lambda_cap {
        Some(c) => c,
        None => {
            let codeg = codegree(&p)?;
            checked_factor(1 + degrees.iter().sum::<u32>() + 1, codeg)?
        }
    };

    let shifts_at = |lam: u32, dilate: &mut dyn FnMut(u32) -> Support| -> Vec<Support> {
        degrees
            .iter()
            .map(|&di| {
                if lam >= di {
                    dilate(lam - di)
                } else {
                    Support::new(a.dim(), []).expect("empty support")
                }
            })
            .collect()
    };

    let mut lam = degrees.iter().copied().max().unwrap();
    let mut shifts = shifts_at(lam, &mut dilate);
    let mut ck = cokernel(f.polys(), &shifts, &dilate(lam), rtol, rng)?;
    loop {
        let e0 = dilate(lam - 1);
        let n_f0 = n_matrix(&ck, &f0, &e0)?;
        let gamma = ck.gamma();
        if gamma == 0 || linalg::numerical_rank(&n_f0, rtol) == gamma {
            let mut e = vec![e0];
            e.extend(shifts.iter().cloned());
            let mut supports = vec![a0.clone()];
            supports.extend(f.polys().iter().map(|p| p.support()));
            let tuple =
                AdmissibleTuple::checked(&supports, e, dilate(lam), TupleFamily::Incremental)?;
            return Ok(IncrementalResult {
                tuple,
                cokernel: ck,
                n_f0,
                f0,
                lambda: lam,
            });
        }
        if lam + 1 > cap {
            return Err(Error::RankNeverMet { cap });
        }
        let next_shifts = shifts_at(lam + 1, &mut dilate);
        let e_new: Vec<Support> = next_shifts
            .iter()
            .zip(shifts.iter())
            .map(|(next, old)| next.difference(old))
            .collect();
        ck = extend_cokernel(&ck, f.polys(), &e_new, &dilate(lam + 1), rtol, rng)?;
        shifts = next_shifts;
        lam += 1;
    }
}

/// Corank-difference criterion for the matrices M_g to commute: with the
/// shifts enlarged by A0 and rows D + A0, adjoining f0² (shifted by E0) must
/// drop the corank by exactly γ. Adding columns can only lower a corank, so
/// the drop is the meaningful orientation of the difference; the 2-variable
/// demo system drops by 1 against γ = 2 and fails the criterion.
pub fn commutativity_check(
    f: &PolySystem,
    tuple: &AdmissibleTuple,
    f0: &Polynomial,
    rtol: f64,
) -> Result<bool> {
    let gamma = {
        let m = build_macaulay(f.polys(), tuple.system_shifts(), tuple.d())?;
        corank(&m, rtol)
    };
    if gamma == 0 {
        return Ok(true);
    }
    let a0 = tuple.a0();
    let big_d = minkowski_sum(tuple.d(), a0)?;
    let shifted: Vec<Support> = tuple
        .system_shifts()
        .iter()
        .map(|e| minkowski_sum(e, a0))
        .collect::<Result<_>>()?;

    let hf_without = {
        let m = build_macaulay(f.polys(), &shifted, &big_d)?;
        corank(&m, rtol)
    };
    let hf_with = {
        let f0sq = f0.mul(f0)?;
        let mut polys = vec![f0sq];
        polys.extend(f.polys().iter().cloned());
        let mut shifts = vec![tuple.e0().clone()];
        shifts.extend(shifted.iter().cloned());
        let m = build_macaulay(&polys, &shifts, &big_d)?;
        corank(&m, rtol)
    };
    Ok(hf_without as i64 - hf_with as i64 == gamma as i64)
}

/// Exponent list of a support as plain vectors (serialization helper).
pub fn support_rows(s: &Support) -> Vec<Vec<u32>> {
    s.iter().map(|e| e.entries().to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_vandermonde_system, molecular_biology_system};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn dense_reference_cardinalities() {
        let t = tuple_dense(2, &[20, 20]).unwrap();
        assert_eq!(t.d_size(), 820);
        let t = tuple_dense(3, &[4, 8, 12]).unwrap();
        assert_eq!(t.d_size(), 2300);
    }

    #[test]
    fn dense_univariate_compatibility() {
        let t = tuple_dense(1, &[2, 2]).unwrap();
        // D reaches degree 1 + 2 + 2 - 1 = 4.
        assert_eq!(t.d_size(), 5);
        assert_eq!(t.family(), TupleFamily::Dense);
    }

    #[test]
    fn dense_rejects_too_small() {
        assert!(matches!(
            tuple_dense(5, &[1, 1]),
            Err(Error::DegenerateDilation)
        ));
    }

    #[test]
    fn unmixed_reference_cardinality() {
        let a = Support::from_rows(
            2,
            &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1], vec![2, 2]],
        )
        .unwrap();
        let t = tuple_unmixed(&a, &[5, 12]).unwrap();
        assert_eq!(t.d_size(), 685);
    }

    #[test]
    fn unmixed_on_simplex_reduces_to_dense() {
        let simplex = LatticePolytopeSpec::simplex(2);
        let a = dilate_lattice_points(&simplex, 1);
        let t_unmixed = tuple_unmixed(&a, &[2, 3]).unwrap();
        let t_dense = tuple_dense(2, &[2, 3]).unwrap();
        assert_eq!(t_unmixed.d(), t_dense.d());
        for (eu, ed) in t_unmixed.all_shifts().iter().zip(t_dense.all_shifts()) {
            assert_eq!(eu, ed);
        }
    }

    #[test]
    fn unmixed_unit_square_compat() {
        let a = Support::from_rows(2, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let t = tuple_unmixed(&a, &[1, 1]).unwrap();
        assert_eq!(t.family(), TupleFamily::Unmixed);
    }

    #[test]
    fn multi_dense_reference_cardinality() {
        let dmat = vec![vec![1, 6], vec![2, 1], vec![3, 2], vec![4, 1]];
        let t = tuple_multi_dense(&[2, 2], &dmat).unwrap();
        assert_eq!(t.d_size(), 3025);
    }

    #[test]
    fn multi_dense_single_block_equals_dense() {
        let dmat = vec![vec![2], vec![3]];
        let t_multi = tuple_multi_dense(&[2], &dmat).unwrap();
        let t_dense = tuple_dense(2, &[2, 3]).unwrap();
        assert_eq!(t_multi.d(), t_dense.d());
        for (em, ed) in t_multi.all_shifts().iter().zip(t_dense.all_shifts()) {
            assert_eq!(em, ed);
        }
    }

    #[test]
    fn multi_dense_tiny_compat() {
        let dmat = vec![vec![1, 1], vec![1, 1]];
        let t = tuple_multi_dense(&[1, 1], &dmat).unwrap();
        assert_eq!(t.family(), TupleFamily::MultiDense);
    }

    #[test]
    fn multi_unmixed_reference_cardinality() {
        let a = Support::from_rows(
            2,
            &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1], vec![2, 2]],
        )
        .unwrap();
        let p2 = dilate_lattice_points(&LatticePolytopeSpec::simplex(2), 2);
        let dmat = vec![vec![1, 1]; 4];
        let t = tuple_multi_unmixed(&[a, p2], &dmat).unwrap();
        assert_eq!(t.d_size(), 2745);
    }

    #[test]
    fn multi_unmixed_simplices_equal_multi_dense() {
        let s1 = dilate_lattice_points(&LatticePolytopeSpec::simplex(2), 1);
        let s2 = dilate_lattice_points(&LatticePolytopeSpec::simplex(1), 1);
        let dmat = vec![vec![1, 2], vec![2, 1], vec![1, 1]];
        let tu = tuple_multi_unmixed(&[s1, s2], &dmat).unwrap();
        let td = tuple_multi_dense(&[2, 1], &dmat).unwrap();
        assert_eq!(tu.d(), td.d());
    }

    #[test]
    fn multi_unmixed_squares_compat() {
        let sq = Support::from_rows(2, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let dmat = vec![vec![1, 1], vec![1, 1]];
        let t = tuple_multi_unmixed(&[sq.clone(), sq], &dmat).unwrap();
        assert_eq!(t.family(), TupleFamily::MultiUnmixed);
    }

    #[test]
    fn mixed_reference_cardinality() {
        let f = molecular_biology_system();
        let t = tuple_mixed(&f.supports()).unwrap();
        assert_eq!(t.d_size(), 200);
    }

    #[test]
    fn mixed_univariate() {
        let a = Support::from_rows(1, &[vec![0], vec![1]]).unwrap();
        let t = tuple_mixed(std::slice::from_ref(&a)).unwrap();
        assert_eq!(support_rows(t.d()), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn mixed_vs_dense_dilations() {
        // Dense supports given to the mixed constructor: D is the full
        // simplex dilation without the codegree shrink.
        let simplex = LatticePolytopeSpec::simplex(2);
        let a1 = dilate_lattice_points(&simplex, 2);
        let a2 = dilate_lattice_points(&simplex, 3);
        let t_mixed = tuple_mixed(&[a1, a2]).unwrap();
        let sigma = 1 + 2 + 3;
        assert_eq!(t_mixed.d(), &dilate_lattice_points(&simplex, sigma));
        let t_dense = tuple_dense(2, &[2, 3]).unwrap();
        assert_eq!(t_dense.d(), &dilate_lattice_points(&simplex, sigma - 2));
        assert!(t_dense.d().is_subset_of(t_mixed.d()));
    }

    #[test]
    fn lambda_min_reference() {
        let simplex = dilate_lattice_points(&LatticePolytopeSpec::simplex(3), 1);
        let degrees = [1, 6, 6, 6, 6, 6, 6];
        let pred = lambda_min_semiregular(&simplex, &degrees).unwrap();
        assert_eq!(pred.lambda_min, 9);
        assert!(pred.semiregular_assumed);
        assert!(pred.coeffs[..9].iter().all(|&c| c > 0));
        assert!(pred.coeffs[9] <= 0);
    }

    #[test]
    fn lambda_min_square_case_bounded() {
        let simplex = dilate_lattice_points(&LatticePolytopeSpec::simplex(2), 1);
        let pred = lambda_min_semiregular(&simplex, &[1, 1, 2, 2]).unwrap();
        assert!(pred.lambda_min <= 3);
    }

    #[test]
    fn lambda_min_univariate() {
        let seg = dilate_lattice_points(&LatticePolytopeSpec::simplex(1), 1);
        let pred = lambda_min_semiregular(&seg, &[1, 2, 2]).unwrap();
        // Direct convolution: counts 1,2,3,... times (1-t)(1-t²)²;
        // coefficients: 1,1,0,... -> first non-positive at 2.
        assert_eq!(pred.lambda_min, 2);
    }

    #[test]
    fn incremental_dense_reference() {
        let mut rng = ChaCha12Rng::seed_from_u64(40);
        let simplex = LatticePolytopeSpec::simplex(3);
        let a = dilate_lattice_points(&simplex, 6);
        let (f, _roots) = gen_vandermonde_system(&a, 78, &mut rng).unwrap();
        assert_eq!(f.len(), 6);
        let a_gens = dilate_lattice_points(&simplex, 1);
        let res = incremental_unmixed(&f, &a_gens, &[6; 6], &mut rng, 1e-8, None).unwrap();
        assert_eq!(res.lambda, 9);
        assert_eq!(res.tuple.d_size(), 220);
        assert_eq!(res.cokernel.gamma(), 100);
    }

    #[test]
    fn incremental_square_terminates_within_bound() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        let simplex = LatticePolytopeSpec::simplex(2);
        let degrees = [2u32, 3u32];
        let polys: Vec<Polynomial> = degrees
            .iter()
            .map(|&d| {
                random_polynomial(
                    &dilate_lattice_points(&simplex, d),
                    &mut rng,
                    CoeffDist::RealNormal,
                )
                .unwrap()
            })
            .collect();
        let f = PolySystem::new(polys).unwrap();
        let a_gens = dilate_lattice_points(&simplex, 1);
        let res = incremental_unmixed(&f, &a_gens, &degrees, &mut rng, 1e-8, None).unwrap();
        // Closed-form dense dilation: 1 + 2 + 3 - 2 = 4.
        assert!(res.lambda <= 4, "lambda = {}", res.lambda);
        assert_eq!(res.cokernel.gamma(), 6);
    }

    #[test]
    fn incremental_gamma_matches_direct() {
        let mut rng = ChaCha12Rng::seed_from_u64(42);
        let simplex = LatticePolytopeSpec::simplex(2);
        let a = dilate_lattice_points(&simplex, 3);
        let (f, _) = gen_vandermonde_system(&a, 5, &mut rng).unwrap();
        let a_gens = dilate_lattice_points(&simplex, 1);
        let res = incremental_unmixed(&f, &a_gens, &[3; 5], &mut rng, 1e-8, None).unwrap();
        let m = build_macaulay(f.polys(), res.tuple.system_shifts(), res.tuple.d()).unwrap();
        assert_eq!(res.cokernel.gamma(), corank(&m, 1e-8));
    }

    #[test]
    fn incremental_planted_matches_semiregular_prediction() {
        let mut rng = ChaCha12Rng::seed_from_u64(43);
        let simplex = LatticePolytopeSpec::simplex(3);
        let a_gens = dilate_lattice_points(&simplex, 1);
        for d in [2u32, 4u32] {
            let a = dilate_lattice_points(&simplex, d);
            let delta = a.len() - 6;
            let (f, _) = gen_vandermonde_system(&a, delta, &mut rng).unwrap();
            assert_eq!(f.len(), 6);
            let mut degrees = vec![1u32];
            degrees.extend(std::iter::repeat_n(d, 6));
            let pred = lambda_min_semiregular(&a_gens, &degrees).unwrap();
            let res = incremental_unmixed(&f, &a_gens, &[d; 6], &mut rng, 1e-8, None).unwrap();
            assert_eq!(res.lambda, pred.lambda_min, "d = {d}");
        }
    }

    #[test]
    fn commutativity_demo_false() {
        let demo = crate::generators::demo_2d();
        assert!(!commutativity_check(&demo.system, &demo.tuple, &demo.f0, 1e-8).unwrap());
    }

    #[test]
    fn commutativity_generic_square_true() {
        let mut rng = ChaCha12Rng::seed_from_u64(44);
        let simplex = LatticePolytopeSpec::simplex(2);
        let polys: Vec<Polynomial> = [2u32, 3u32]
            .iter()
            .map(|&d| {
                random_polynomial(
                    &dilate_lattice_points(&simplex, d),
                    &mut rng,
                    CoeffDist::RealNormal,
                )
                .unwrap()
            })
            .collect();
        let f = PolySystem::new(polys).unwrap();
        let t = tuple_dense(2, &[2, 3]).unwrap();
        let f0 = random_polynomial(t.a0(), &mut rng, CoeffDist::ComplexNormal).unwrap();
        assert!(commutativity_check(&f, &t, &f0, 1e-8).unwrap());
    }
}
