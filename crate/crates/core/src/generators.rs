//! System generators: random structured families, planted-root systems from
//! normalized Vandermonde nullspaces, and fixed demo systems.

use nalgebra::DMatrix;
use rand::Rng;

use crate::admissible::{AdmissibleTuple, TupleFamily};
use crate::error::{Error, Result};
use crate::lattice::{cartesian_product, dilate_lattice_points, LatticePolytopeSpec};
use crate::linalg;
use crate::poly::{
    draw_coeff, monomial_vector, random_polynomial, CoeffDist, Exponent, PolySystem, Polynomial,
    Support, C64,
};

/// Random dense system: f_i has every monomial of total degree <= d_i,
/// real standard-normal coefficients.
pub fn gen_dense<R: Rng + ?Sized>(n: usize, degrees: &[u32], rng: &mut R) -> Result<PolySystem> {
    let simplex = LatticePolytopeSpec::simplex(n);
    let polys = degrees
        .iter()
        .map(|&d| {
            let a = dilate_lattice_points(&simplex, d);
            random_polynomial(&a, rng, CoeffDist::RealNormal)
        })
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(polys)
}

/// Random unmixed system with supports (d_i·P) ∩ ℕⁿ, P = Conv(a).
pub fn gen_unmixed<R: Rng + ?Sized>(
    a: &Support,
    degrees: &[u32],
    rng: &mut R,
) -> Result<PolySystem> {
    let p = LatticePolytopeSpec::new(a.clone())?;
    let polys = degrees
        .iter()
        .map(|&d| {
            let ai = dilate_lattice_points(&p, d);
            random_polynomial(&ai, rng, CoeffDist::RealNormal)
        })
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(polys)
}

/// Random multi-graded dense system with per-block degree bounds.
pub fn gen_multi_dense<R: Rng + ?Sized>(
    block_sizes: &[usize],
    dmat: &[Vec<u32>],
    rng: &mut R,
) -> Result<PolySystem> {
    let blocks: Vec<LatticePolytopeSpec> = block_sizes
        .iter()
        .map(|&nk| LatticePolytopeSpec::simplex(nk))
        .collect();
    gen_multi(&blocks, dmat, rng)
}

/// Random multi-unmixed system with per-block polytopes.
pub fn gen_multi_unmixed<R: Rng + ?Sized>(
    block_gens: &[Support],
    dmat: &[Vec<u32>],
    rng: &mut R,
) -> Result<PolySystem> {
    let blocks: Vec<LatticePolytopeSpec> = block_gens
        .iter()
        .map(|g| LatticePolytopeSpec::new(g.clone()))
        .collect::<Result<_>>()?;
    gen_multi(&blocks, dmat, rng)
}

fn gen_multi<R: Rng + ?Sized>(
    blocks: &[LatticePolytopeSpec],
    dmat: &[Vec<u32>],
    rng: &mut R,
) -> Result<PolySystem> {
    if dmat.is_empty() || dmat.iter().any(|row| row.len() != blocks.len()) {
        return Err(Error::InvalidParameter(
            "degree matrix must have one column per block".into(),
        ));
    }
    let polys = dmat
        .iter()
        .map(|row| {
            let per_block: Vec<Support> = blocks
                .iter()
                .zip(row.iter())
                .map(|(p, &d)| dilate_lattice_points(p, d))
                .collect();
            let a = cartesian_product(&per_block)?;
            random_polynomial(&a, rng, CoeffDist::RealNormal)
        })
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(polys)
}

/// Random mixed system on the given supports.
pub fn gen_mixed<R: Rng + ?Sized>(supports: &[Support], rng: &mut R) -> Result<PolySystem> {
    let polys = supports
        .iter()
        .map(|a| random_polynomial(a, rng, CoeffDist::RealNormal))
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(polys)
}

/// Overdetermined system with `delta` planted roots on support `a`.
///
/// Draws the roots with complex standard-normal coordinates and builds the
/// system vanishing at them via [`system_through_points`].
pub fn gen_vandermonde_system<R: Rng + ?Sized>(
    a: &Support,
    delta: usize,
    rng: &mut R,
) -> Result<(PolySystem, Vec<Vec<C64>>)> {
    let n = a.dim();
    if delta + n >= a.len() {
        return Err(Error::NotOverdetermined);
    }
    let roots: Vec<Vec<C64>> = (0..delta)
        .map(|_| {
            (0..n)
                .map(|_| draw_coeff(rng, CoeffDist::ComplexNormal))
                .collect()
        })
        .collect();
    let f = system_through_points(a, &roots)?;
    Ok((f, roots))
}

/// Overdetermined system on support `a` vanishing at the given points: the
/// row-normalized Vandermonde matrix (rows ζ_i^A / ||ζ_i^A||) is built at the
/// points and its right nullspace, via SVD at relative tolerance 1e-12,
/// supplies the s = #A - delta coefficient vectors.
pub fn system_through_points(a: &Support, points: &[Vec<C64>]) -> Result<PolySystem> {
    let n = a.dim();
    let k = a.len();
    let delta = points.len();
    if delta + n >= k {
        return Err(Error::NotOverdetermined);
    }
    let mut vdm = DMatrix::<C64>::zeros(delta, k);
    for (i, z) in points.iter().enumerate() {
        let row = monomial_vector(z, a)?;
        let norm = row.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        for (j, v) in row.iter().enumerate() {
            vdm[(i, j)] = v / norm;
        }
    }
    let (_u, sv, vt) = linalg::svd_full(&vdm);
    let smax = sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|&&x| x > 1e-12 * smax).count();
    if rank != delta {
        return Err(Error::InvalidParameter(format!(
            "planted points degenerate: Vandermonde rank {rank} != {delta}"
        )));
    }
    let polys = (rank..k)
        .map(|row| {
            // Right nullspace vector = conjugated VT row.
            let terms = a
                .iter()
                .enumerate()
                .map(|(j, e)| (e.clone(), vt[(row, j)].conj()));
            Polynomial::new(n, terms)
        })
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(polys)
}

/// Fixed 2-variable demo system with one solution (-1, 1), together with the
/// exponent tuple, denominator f0 and probe polynomials used in the module
/// tests and documentation.
pub struct Demo2d {
    pub system: PolySystem,
    pub tuple: AdmissibleTuple,
    pub f0: Polynomial,
    pub g: Polynomial,
    pub h: Polynomial,
    pub root: Vec<C64>,
    /// Hand-checked cokernel basis, columns in D's canonical order.
    pub coker: DMatrix<C64>,
}

pub fn demo_2d() -> Demo2d {
    let f1 = Polynomial::from_terms(
        2,
        &[
            (vec![0, 0], -1.0, 0.0),
            (vec![1, 0], 2.0, 0.0),
            (vec![0, 1], 2.0, 0.0),
            (vec![0, 2], 1.0, 0.0),
        ],
    )
    .unwrap();
    let f2 = Polynomial::from_terms(
        2,
        &[
            (vec![0, 0], -1.0, 0.0),
            (vec![1, 0], 1.0, 0.0),
            (vec![2, 0], 1.0, 0.0),
            (vec![0, 1], 1.0, 0.0),
        ],
    )
    .unwrap();
    let f3 = Polynomial::from_terms(
        2,
        &[
            (vec![0, 0], -1.0, 0.0),
            (vec![1, 0], 2.0, 0.0),
            (vec![2, 0], 2.0, 0.0),
            (vec![0, 1], 1.0, 0.0),
        ],
    )
    .unwrap();
    let system = PolySystem::new(vec![f1, f2, f3]).unwrap();

    let a0 = Support::from_rows(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
    let e0 = a0.clone();
    let e1 = Support::from_rows(2, &[vec![0, 0], vec![1, 0]]).unwrap();
    let e23 = Support::from_rows(2, &[vec![0, 0], vec![0, 1]]).unwrap();
    let d = Support::from_rows(
        2,
        &[
            vec![0, 0],
            vec![1, 0],
            vec![2, 0],
            vec![0, 1],
            vec![1, 1],
            vec![2, 1],
            vec![0, 2],
            vec![1, 2],
        ],
    )
    .unwrap();
    let mut supports = vec![a0.clone()];
    supports.extend(system.supports());
    let tuple = AdmissibleTuple::checked(
        &supports,
        vec![e0, e1, e23.clone(), e23],
        d,
        TupleFamily::Mixed,
    )
    .unwrap();

    let f0 = Polynomial::from_terms(
        2,
        &[
            (vec![0, 0], 1.0, 0.0),
            (vec![1, 0], 3.0, 0.0),
            (vec![0, 1], 1.0, 0.0),
        ],
    )
    .unwrap();
    let g = Polynomial::from_terms(
        2,
        &[
            (vec![0, 0], -1.0, 0.0),
            (vec![1, 0], 3.0, 0.0),
            (vec![0, 1], 2.0, 0.0),
        ],
    )
    .unwrap();
    let h = Polynomial::from_terms(
        2,
        &[
            (vec![0, 0], 1.0, 0.0),
            (vec![1, 0], 1.0, 0.0),
            (vec![0, 1], 1.0, 0.0),
        ],
    )
    .unwrap();

    let coker = DMatrix::from_row_slice(
        2,
        8,
        [
            // columns: 1, y, y², x, xy, xy², x², x²y
            1.0, 1.0, 1.0, -1.0, -1.0, -1.0, 1.0, 1.0, //
            0.0, 0.0, 0.0, 0.0, -1.0, 2.0, 0.0, 1.0,
        ]
        .iter()
        .map(|&x| C64::new(x, 0.0))
        .collect::<Vec<_>>()
        .as_slice(),
    );

    Demo2d {
        system,
        tuple,
        f0,
        g,
        h,
        root: vec![C64::new(-1.0, 0.0), C64::new(1.0, 0.0)],
        coker,
    }
}

/// Classical 3-variable system from molecular conformation analysis:
/// three quartics sharing the coefficient row (-13, -1, -1, 24, -1) on
/// cyclically permuted supports. It has 16 solutions, all real.
pub fn molecular_biology_system() -> PolySystem {
    let coeffs = [-13.0, -1.0, -1.0, 24.0, -1.0];
    let mons = [
        // 1, t2², t3², t2·t3, t2²·t3²
        vec![
            vec![0, 0, 0],
            vec![0, 2, 0],
            vec![0, 0, 2],
            vec![0, 1, 1],
            vec![0, 2, 2],
        ],
        // 1, t3², t1², t3·t1, t3²·t1²
        vec![
            vec![0, 0, 0],
            vec![0, 0, 2],
            vec![2, 0, 0],
            vec![1, 0, 1],
            vec![2, 0, 2],
        ],
        // 1, t1², t2², t1·t2, t1²·t2²
        vec![
            vec![0, 0, 0],
            vec![2, 0, 0],
            vec![0, 2, 0],
            vec![1, 1, 0],
            vec![2, 2, 0],
        ],
    ];
    let polys = mons
        .iter()
        .map(|rows| {
            Polynomial::new(
                3,
                rows.iter()
                    .zip(coeffs.iter())
                    .map(|(e, &c)| (Exponent::new(e.clone()), C64::new(c, 0.0))),
            )
            .unwrap()
        })
        .collect();
    PolySystem::new(polys).unwrap()
}

/// Named fixed systems for the CLI and tests.
pub fn builtin_systems() -> Vec<(&'static str, PolySystem)> {
    vec![
        ("demo-2d", demo_2d().system),
        ("molecular-biology", molecular_biology_system()),
    ]
}
