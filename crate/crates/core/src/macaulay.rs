//! Macaulay matrices, coranks and cokernels.
//!
//! The matrix of the map (g_1,...,g_s) -> Σ g_i f_i in monomial bases: rows
//! indexed by a support D, columns by pairs (i, β) with β in the shift set
//! E_i. Column (i, β) carries the coefficients of x^β·f_i, so its nonzeros
//! sit exactly at the rows β + A_i; assembly exploits that directly.

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Exponent, Polynomial, Support, C64};

/// Dense Macaulay matrix with its row and column indexing.
#[derive(Clone, Debug)]
pub struct MacaulayMatrix {
    pub data: DMatrix<C64>,
    row_index: Support,
    col_index: Vec<(usize, Exponent)>,
}

impl MacaulayMatrix {
    pub fn nrows(&self) -> usize {
        self.data.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.data.ncols()
    }

    pub fn row_index(&self) -> &Support {
        &self.row_index
    }

    pub fn col_index(&self) -> &[(usize, Exponent)] {
        &self.col_index
    }

    /// Coordinate-format text dump (1-based indices, one entry per line),
    /// for offline inspection of the assembly.
    pub fn write_coordinate_text<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(
            w,
            "{} {} {}",
            self.nrows(),
            self.ncols(),
            self.data
                .iter()
                .filter(|z| **z != C64::new(0.0, 0.0))
                .count()
        )?;
        for j in 0..self.ncols() {
            for i in 0..self.nrows() {
                let z = self.data[(i, j)];
                if z != C64::new(0.0, 0.0) {
                    writeln!(w, "{} {} {:.17e} {:.17e}", i + 1, j + 1, z.re, z.im)?;
                }
            }
        }
        Ok(())
    }
}

/// Assembles M(F, E; D). Checks the compatibility condition A_i + E_i ⊆ D
/// and errs naming the offending (i, β, α).
pub fn build_macaulay(
    polys: &[Polynomial],
    shifts: &[Support],
    rows: &Support,
) -> Result<MacaulayMatrix> {
    if polys.len() != shifts.len() {
        return Err(Error::InvalidParameter(format!(
            "got {} polynomials but {} shift sets",
            polys.len(),
            shifts.len()
        )));
    }
    let total_cols: usize = shifts.iter().map(|e| e.len()).sum();
    let mut data = DMatrix::<C64>::zeros(rows.len(), total_cols);
    let mut col_index = Vec::with_capacity(total_cols);
    let mut col = 0;
    for (i, (f, e)) in polys.iter().zip(shifts.iter()).enumerate() {
        for beta in e.iter() {
            for (alpha, coeff) in f.terms() {
                let target = beta.add(alpha);
                let Some(r) = rows.position(&target) else {
                    return Err(Error::Compatibility {
                        index: i,
                        beta: beta.entries().to_vec(),
                        alpha: alpha.entries().to_vec(),
                    });
                };
                data[(r, col)] += *coeff;
            }
            col_index.push((i, beta.clone()));
            col += 1;
        }
    }
    debug_assert_eq!(col, total_cols);
    Ok(MacaulayMatrix {
        data,
        row_index: rows.clone(),
        col_index,
    })
}

/// Corank #D - numerical rank at the relative tolerance `rtol`.
pub fn corank(m: &MacaulayMatrix, rtol: f64) -> usize {
    m.nrows() - linalg::numerical_rank(&m.data, rtol)
}

/// Left-nullspace basis of a Macaulay matrix with its column indexing.
#[derive(Clone, Debug)]
pub struct CokernelBasis {
    /// γ x #D, orthonormal rows (up to composition in the incremental path).
    pub data: DMatrix<C64>,
    col_index: Support,
    pub rank_tol: f64,
}

impl CokernelBasis {
    pub fn new(data: DMatrix<C64>, col_index: Support, rank_tol: f64) -> Self {
        debug_assert_eq!(data.ncols(), col_index.len());
        CokernelBasis {
            data,
            col_index,
            rank_tol,
        }
    }

    /// γ = corank.
    pub fn gamma(&self) -> usize {
        self.data.nrows()
    }

    pub fn d_size(&self) -> usize {
        self.col_index.len()
    }

    pub fn col_index(&self) -> &Support {
        &self.col_index
    }
}

/// Left nullspace at `rtol`, compressing with a random right factor when the
/// matrix is wider than `compression_factor` times its height.
fn left_nullspace_compressed<R: Rng + ?Sized>(
    m: &DMatrix<C64>,
    rtol: f64,
    rng: &mut R,
    compression_factor: f64,
) -> DMatrix<C64> {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return DMatrix::identity(rows, rows);
    }
    let compressed;
    let target = if (cols as f64) > compression_factor * rows as f64 {
        let o = linalg::gaussian_matrix(cols, rows, rng);
        compressed = linalg::matmul(m, &o);
        &compressed
    } else {
        m
    };
    match linalg::left_nullspace_checked(target, rtol) {
        Some(basis) => basis,
        None => {
            log::warn!(
                "left nullspace of a numerically zero {rows}x{cols} matrix: returning the identity basis"
            );
            DMatrix::identity(rows, rows)
        }
    }
}

/// Default column/row ratio above which the compression sketch is applied.
pub const DEFAULT_COMPRESSION_FACTOR: f64 = 1.5;

/// Cokernel (left-nullspace basis) of M(F, E; D) via SVD, with randomized
/// compression when the matrix has many more columns than rows.
pub fn cokernel<R: Rng + ?Sized>(
    polys: &[Polynomial],
    shifts: &[Support],
    rows: &Support,
    rtol: f64,
    rng: &mut R,
) -> Result<CokernelBasis> {
    cokernel_with_factor(polys, shifts, rows, rtol, rng, DEFAULT_COMPRESSION_FACTOR)
}

pub fn cokernel_with_factor<R: Rng + ?Sized>(
    polys: &[Polynomial],
    shifts: &[Support],
    rows: &Support,
    rtol: f64,
    rng: &mut R,
    compression_factor: f64,
) -> Result<CokernelBasis> {
    let m = build_macaulay(polys, shifts, rows)?;
    let basis = left_nullspace_compressed(&m.data, rtol, rng, compression_factor);
    Ok(CokernelBasis::new(basis, rows.clone(), rtol))
}

/// N_{f0} = Coker · M(f0, E0; D), columns indexed by E0.
///
/// Column β of M(f0, E0; D) has its nonzeros at rows β + A_{f0}, so the
/// product is accumulated column by column without assembling M.
pub fn n_matrix(c: &CokernelBasis, f0: &Polynomial, e0: &Support) -> Result<DMatrix<C64>> {
    let gamma = c.gamma();
    let mut n = DMatrix::<C64>::zeros(gamma, e0.len());
    for (j, beta) in e0.iter().enumerate() {
        for (alpha, coeff) in f0.terms() {
            let target = beta.add(alpha);
            let Some(p) = c.col_index.position(&target) else {
                return Err(Error::Compatibility {
                    index: 0,
                    beta: beta.entries().to_vec(),
                    alpha: alpha.entries().to_vec(),
                });
            };
            let mut dst = n.column_mut(j);
            dst.axpy(*coeff, &c.data.column(p), C64::new(1.0, 0.0));
        }
    }
    Ok(n)
}

/// True iff N_{f0} has numerical rank γ.
pub fn rank_condition(c: &CokernelBasis, f0: &Polynomial, e0: &Support, rtol: f64) -> Result<bool> {
    let gamma = c.gamma();
    if gamma == 0 {
        return Ok(true);
    }
    let n = n_matrix(c, f0, e0)?;
    Ok(linalg::numerical_rank(&n, rtol) == gamma)
}

/// Extends a cokernel from row support D to D_next ⊇ D given the new shift
/// columns E_new, without assembling the full Macaulay matrix at D_next.
///
/// Forms the block matrix (C × id), multiplies by M(F, E_new; D_next) using
/// the sparse column structure, takes the left nullspace L of the product and
/// returns L · (C × id) with columns re-sorted to D_next's canonical order.
pub fn extend_cokernel<R: Rng + ?Sized>(
    c: &CokernelBasis,
    polys: &[Polynomial],
    e_new: &[Support],
    d_next: &Support,
    rtol: f64,
    rng: &mut R,
) -> Result<CokernelBasis> {
    if polys.len() != e_new.len() {
        return Err(Error::InvalidParameter(format!(
            "got {} polynomials but {} new shift sets",
            polys.len(),
            e_new.len()
        )));
    }
    let d_old = &c.col_index;
    if !d_old.is_subset_of(d_next) {
        return Err(Error::IndexMisalignment);
    }
    let gamma = c.gamma();
    let fresh = d_next.difference(d_old);
    let n_fresh = fresh.len();

    // Row r of (C × id) corresponds to either a cokernel row (first γ) or a
    // fresh exponent of D_next \ D.
    let total_new_cols: usize = e_new.iter().map(|e| e.len()).sum();
    let mut prod = DMatrix::<C64>::zeros(gamma + n_fresh, total_new_cols);
    let mut col = 0;
    for (i, (f, e)) in polys.iter().zip(e_new.iter()).enumerate() {
        for beta in e.iter() {
            for (alpha, coeff) in f.terms() {
                let target = beta.add(alpha);
                if let Some(p) = d_old.position(&target) {
                    for r in 0..gamma {
                        prod[(r, col)] += coeff * c.data[(r, p)];
                    }
                } else if let Some(p) = fresh.position(&target) {
                    prod[(gamma + p, col)] += *coeff;
                } else {
                    return Err(Error::Compatibility {
                        index: i,
                        beta: beta.entries().to_vec(),
                        alpha: alpha.entries().to_vec(),
                    });
                }
            }
            col += 1;
        }
    }

    let l = left_nullspace_compressed(&prod, rtol, rng, DEFAULT_COMPRESSION_FACTOR);
    // New cokernel = L · (C × id), columns permuted into D_next order.
    let l_old = l.columns(0, gamma).into_owned();
    let part_old = linalg::matmul(&l_old, &c.data);
    let mut out = DMatrix::<C64>::zeros(l.nrows(), d_next.len());
    for (j, e) in d_next.iter().enumerate() {
        if let Some(p) = d_old.position(e) {
            out.set_column(j, &part_old.column(p));
        } else {
            let p = fresh.position(e).expect("fresh covers D_next \\ D");
            out.set_column(j, &l.column(gamma + p));
        }
    }
    Ok(CokernelBasis::new(out, d_next.clone(), rtol))
}
