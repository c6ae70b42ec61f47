//! Dense complex factorization kernels behind the solver.
//!
//! Thin safe wrappers over LAPACK (system OpenBLAS): divide-and-conquer SVD,
//! column-pivoted QR, nonsymmetric eigendecomposition with left eigenvectors,
//! the generalized eigenvalue problem and triangular solves. nalgebra
//! matrices are column-major, so buffers pass straight through.

use nalgebra::{DMatrix, RowDVector};
use rand::Rng;
use std::ffi::c_char;

use crate::error::{Error, Result};
use crate::poly::{draw_coeff, CoeffDist, C64};

fn cp(p: *mut C64) -> *mut lapack_sys::c_double_complex {
    // num_complex::Complex64 is repr(C) with the same {re, im} layout.
    p.cast()
}

fn cpc(p: *const C64) -> *const lapack_sys::c_double_complex {
    p.cast()
}

// OpenBLAS carries the BLAS symbols too; lapack-sys only declares LAPACK.
extern "C" {
    fn zgemm_(
        transa: *const c_char,
        transb: *const c_char,
        m: *const i32,
        n: *const i32,
        k: *const i32,
        alpha: *const lapack_sys::c_double_complex,
        a: *const lapack_sys::c_double_complex,
        lda: *const i32,
        b: *const lapack_sys::c_double_complex,
        ldb: *const i32,
        beta: *const lapack_sys::c_double_complex,
        c: *mut lapack_sys::c_double_complex,
        ldc: *const i32,
    );
}

fn gemm_raw(transa: u8, a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let (am, an) = a.shape();
    let (m, k) = if transa == b'N' { (am, an) } else { (an, am) };
    let (bk, n) = b.shape();
    assert_eq!(k, bk, "gemm inner dimensions");
    let mut out = DMatrix::<C64>::zeros(m, n);
    if m == 0 || n == 0 {
        return out;
    }
    if k == 0 {
        return out;
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let ta = transa as c_char;
    let tb = b'N' as c_char;
    let (mi, ni, ki) = (m as i32, n as i32, k as i32);
    let lda = am as i32;
    let ldb = bk as i32;
    unsafe {
        zgemm_(
            &ta,
            &tb,
            &mi,
            &ni,
            &ki,
            cpc(&one),
            cpc(a.as_ptr()),
            &lda,
            cpc(b.as_ptr()),
            &ldb,
            cpc(&zero),
            cp(out.as_mut_ptr()),
            &mi,
        );
    }
    out
}

/// a * b through BLAS (threaded); use for large products.
pub fn matmul(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    gemm_raw(b'N', a, b)
}

/// aᴴ * b through BLAS.
pub fn matmul_adjoint_left(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    gemm_raw(b'C', a, b)
}

fn frob(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Full SVD a = u * diag(s) * vt with square unitary u (m x m) and vt (n x n).
pub fn svd_full(a: &DMatrix<C64>) -> (DMatrix<C64>, Vec<f64>, DMatrix<C64>) {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return (DMatrix::identity(m, m), Vec::new(), DMatrix::identity(n, n));
    }
    let k = m.min(n);
    let mut a = a.clone();
    let mut s = vec![0f64; k];
    let mut u = DMatrix::<C64>::zeros(m, m);
    let mut vt = DMatrix::<C64>::zeros(n, n);
    let mut info = 0i32;
    let (mi, ni) = (m as i32, n as i32);
    let jobz = b'A' as c_char;
    let mx = m.max(n);
    let lrwork = (k * (5 * k + 7).max(2 * mx + 2 * k + 1)).max(1);
    let mut rwork = vec![0f64; lrwork];
    let mut iwork = vec![0i32; 8 * k];
    unsafe {
        let mut query = C64::new(0.0, 0.0);
        let lwork_query = -1i32;
        lapack_sys::zgesdd_(
            &jobz,
            &mi,
            &ni,
            cp(a.as_mut_ptr()),
            &mi,
            s.as_mut_ptr(),
            cp(u.as_mut_ptr()),
            &mi,
            cp(vt.as_mut_ptr()),
            &ni,
            cp(&mut query),
            &lwork_query,
            rwork.as_mut_ptr(),
            iwork.as_mut_ptr(),
            &mut info,
        );
        let lwork = query.re as i32;
        let mut work = vec![C64::new(0.0, 0.0); lwork.max(1) as usize];
        lapack_sys::zgesdd_(
            &jobz,
            &mi,
            &ni,
            cp(a.as_mut_ptr()),
            &mi,
            s.as_mut_ptr(),
            cp(u.as_mut_ptr()),
            &mi,
            cp(vt.as_mut_ptr()),
            &ni,
            cp(work.as_mut_ptr()),
            &lwork,
            rwork.as_mut_ptr(),
            iwork.as_mut_ptr(),
            &mut info,
        );
    }
    assert_eq!(info, 0, "zgesdd failed with info {info}");
    (u, s, vt)
}

/// Singular values only.
pub fn singular_values(a: &DMatrix<C64>) -> Vec<f64> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Vec::new();
    }
    let k = m.min(n);
    let mut a = a.clone();
    let mut s = vec![0f64; k];
    let mut info = 0i32;
    let (mi, ni) = (m as i32, n as i32);
    let jobz = b'N' as c_char;
    let mut rwork = vec![0f64; (7 * k).max(1)];
    let mut iwork = vec![0i32; 8 * k];
    let mut udummy = C64::new(0.0, 0.0);
    let mut vdummy = C64::new(0.0, 0.0);
    let one = 1i32;
    unsafe {
        let mut query = C64::new(0.0, 0.0);
        let lwork_query = -1i32;
        lapack_sys::zgesdd_(
            &jobz,
            &mi,
            &ni,
            cp(a.as_mut_ptr()),
            &mi,
            s.as_mut_ptr(),
            cp(&mut udummy),
            &one,
            cp(&mut vdummy),
            &one,
            cp(&mut query),
            &lwork_query,
            rwork.as_mut_ptr(),
            iwork.as_mut_ptr(),
            &mut info,
        );
        let lwork = query.re as i32;
        let mut work = vec![C64::new(0.0, 0.0); lwork.max(1) as usize];
        lapack_sys::zgesdd_(
            &jobz,
            &mi,
            &ni,
            cp(a.as_mut_ptr()),
            &mi,
            s.as_mut_ptr(),
            cp(&mut udummy),
            &one,
            cp(&mut vdummy),
            &one,
            cp(work.as_mut_ptr()),
            &lwork,
            rwork.as_mut_ptr(),
            iwork.as_mut_ptr(),
            &mut info,
        );
    }
    assert_eq!(info, 0, "zgesdd (values) failed with info {info}");
    s
}

/// Count of singular values above rtol * sigma_max.
pub fn numerical_rank(a: &DMatrix<C64>, rtol: f64) -> usize {
    let s = singular_values(a);
    match s.first() {
        None | Some(&0.0) => 0,
        Some(&smax) => s.iter().filter(|&&x| x > rtol * smax).count(),
    }
}

/// Orthonormal rows spanning the left nullspace of `a` at relative tolerance
/// `rtol`: rows v with v * a ≈ 0; the row count equals the corank.
pub fn svd_left_nullspace(a: &DMatrix<C64>, rtol: f64) -> DMatrix<C64> {
    left_nullspace_checked(a, rtol).unwrap_or_else(|| DMatrix::identity(a.nrows(), a.nrows()))
}

/// Like [`svd_left_nullspace`] but reports a numerically zero input as
/// `None` so callers can warn; one SVD pass either way. For wide inputs only
/// the left factor is formed.
pub fn left_nullspace_checked(a: &DMatrix<C64>, rtol: f64) -> Option<DMatrix<C64>> {
    let (m, n) = a.shape();
    if m == 0 {
        return Some(DMatrix::zeros(0, 0));
    }
    if n == 0 {
        return Some(DMatrix::identity(m, m));
    }
    let (u, s) = svd_left(a);
    let smax = s.first().copied().unwrap_or(0.0);
    if smax < 1e-300 {
        return None;
    }
    let rank = s.iter().filter(|&&x| x > rtol * smax).count();
    let nullity = m - rank;
    let mut basis = DMatrix::<C64>::zeros(nullity, m);
    for (row, col) in (rank..m).enumerate() {
        for i in 0..m {
            basis[(row, i)] = u[(i, col)].conj();
        }
    }
    Some(basis)
}

/// Left singular vectors (full m x m) and singular values. Wide matrices
/// use the economy mode, which still yields the complete U.
fn svd_left(a: &DMatrix<C64>) -> (DMatrix<C64>, Vec<f64>) {
    let (m, n) = a.shape();
    debug_assert!(m > 0 && n > 0);
    if m > n {
        let (u, s, _vt) = svd_full(a);
        return (u, s);
    }
    // m <= n: jobz='S' gives U as m x m and skips the n x n right factor.
    let k = m;
    let mut a = a.clone();
    let mut s = vec![0f64; k];
    let mut u = DMatrix::<C64>::zeros(m, m);
    let mut vt = DMatrix::<C64>::zeros(k, n);
    let mut info = 0i32;
    let (mi, ni) = (m as i32, n as i32);
    let jobz = b'S' as c_char;
    let mx = m.max(n);
    let lrwork = (k * (5 * k + 7).max(2 * mx + 2 * k + 1)).max(1);
    let mut rwork = vec![0f64; lrwork];
    let mut iwork = vec![0i32; 8 * k];
    unsafe {
        let mut query = C64::new(0.0, 0.0);
        let lwork_query = -1i32;
        lapack_sys::zgesdd_(
            &jobz,
            &mi,
            &ni,
            cp(a.as_mut_ptr()),
            &mi,
            s.as_mut_ptr(),
            cp(u.as_mut_ptr()),
            &mi,
            cp(vt.as_mut_ptr()),
            &(k as i32),
            cp(&mut query),
            &lwork_query,
            rwork.as_mut_ptr(),
            iwork.as_mut_ptr(),
            &mut info,
        );
        let lwork = query.re as i32;
        let mut work = vec![C64::new(0.0, 0.0); lwork.max(1) as usize];
        lapack_sys::zgesdd_(
            &jobz,
            &mi,
            &ni,
            cp(a.as_mut_ptr()),
            &mi,
            s.as_mut_ptr(),
            cp(u.as_mut_ptr()),
            &mi,
            cp(vt.as_mut_ptr()),
            &(k as i32),
            cp(work.as_mut_ptr()),
            &lwork,
            rwork.as_mut_ptr(),
            iwork.as_mut_ptr(),
            &mut info,
        );
    }
    assert_eq!(info, 0, "zgesdd (economy) failed with info {info}");
    (u, s)
}

/// Orthonormal rows spanning the row space of `v` (numerical, relative 1e-12).
pub fn orthonormal_rows(v: &DMatrix<C64>) -> DMatrix<C64> {
    let (m, n) = v.shape();
    if m == 0 || n == 0 {
        return DMatrix::zeros(0, n);
    }
    let (_u, s, vt) = svd_full(v);
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return DMatrix::zeros(0, n);
    }
    let r = s.iter().filter(|&&x| x > 1e-12 * smax).count();
    vt.rows(0, r).into_owned()
}

/// Column-pivoted QR: n[:, p] = q * r with unitary q and upper-triangular r
/// whose diagonal magnitudes decrease. Requires at least as many columns as
/// rows so a full-rank square block can be pivoted to the front.
pub fn qr_col_pivot(n: &DMatrix<C64>) -> Result<(DMatrix<C64>, DMatrix<C64>, Vec<usize>)> {
    let (rows, cols) = n.shape();
    if cols < rows {
        return Err(Error::InvalidParameter(format!(
            "column-pivoted QR needs cols >= rows, got {rows}x{cols}"
        )));
    }
    if rows == 0 {
        return Ok((
            DMatrix::zeros(0, 0),
            DMatrix::zeros(0, cols),
            (0..cols).collect(),
        ));
    }
    let mut a = n.clone();
    let (mi, ni) = (rows as i32, cols as i32);
    let mut jpvt = vec![0i32; cols];
    let kref = rows.min(cols);
    let mut tau = vec![C64::new(0.0, 0.0); kref];
    let mut rwork = vec![0f64; 2 * cols];
    let mut info = 0i32;
    unsafe {
        let mut query = C64::new(0.0, 0.0);
        let lwork_query = -1i32;
        lapack_sys::zgeqp3_(
            &mi,
            &ni,
            cp(a.as_mut_ptr()),
            &mi,
            jpvt.as_mut_ptr(),
            cp(tau.as_mut_ptr()),
            cp(&mut query),
            &lwork_query,
            rwork.as_mut_ptr(),
            &mut info,
        );
        let lwork = query.re as i32;
        let mut work = vec![C64::new(0.0, 0.0); lwork.max(1) as usize];
        lapack_sys::zgeqp3_(
            &mi,
            &ni,
            cp(a.as_mut_ptr()),
            &mi,
            jpvt.as_mut_ptr(),
            cp(tau.as_mut_ptr()),
            cp(work.as_mut_ptr()),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    assert_eq!(info, 0, "zgeqp3 failed with info {info}");
    // R: upper triangle of the factored matrix.
    let mut r = DMatrix::<C64>::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows.min(j + 1) {
            r[(i, j)] = a[(i, j)];
        }
    }
    // Q from the reflectors in the first `rows` columns.
    let mut q = a.columns(0, kref).into_owned();
    let mut info = 0i32;
    unsafe {
        let ki = kref as i32;
        let mut query = C64::new(0.0, 0.0);
        let lwork_query = -1i32;
        lapack_sys::zungqr_(
            &mi,
            &ki,
            &ki,
            cp(q.as_mut_ptr()),
            &mi,
            cp(tau.as_mut_ptr()),
            cp(&mut query),
            &lwork_query,
            &mut info,
        );
        let lwork = query.re as i32;
        let mut work = vec![C64::new(0.0, 0.0); lwork.max(1) as usize];
        lapack_sys::zungqr_(
            &mi,
            &ki,
            &ki,
            cp(q.as_mut_ptr()),
            &mi,
            cp(tau.as_mut_ptr()),
            cp(work.as_mut_ptr()),
            &lwork,
            &mut info,
        );
    }
    assert_eq!(info, 0, "zungqr failed with info {info}");
    let p: Vec<usize> = jpvt.iter().map(|&j| (j - 1) as usize).collect();
    Ok((q, r, p))
}

/// One eigenvalue cluster: a representative value and an orthonormal basis
/// of left (row) eigenvectors, stacked as the rows of `basis`.
#[derive(Clone, Debug)]
pub struct EigenCluster {
    pub value: C64,
    pub basis: DMatrix<C64>,
}

/// All eigenvalues of a matrix grouped into clusters at `cluster_tol`
/// relative to the matrix norm.
#[derive(Clone, Debug)]
pub struct EigenClusters {
    pub clusters: Vec<EigenCluster>,
    pub cluster_tol: f64,
}

impl EigenClusters {
    /// Total multiplicity over all clusters.
    pub fn total_multiplicity(&self) -> usize {
        self.clusters.iter().map(|c| c.basis.nrows()).sum()
    }
}

/// Eigenvalues of `m` with left eigenvectors; values within
/// cluster_tol * ||m|| of each other are merged (single linkage) into one
/// cluster with a joint orthonormal eigenspace basis.
pub fn left_eig_clustered(m: &DMatrix<C64>, cluster_tol: f64) -> Result<EigenClusters> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "square matrix required");
    if n == 0 {
        return Ok(EigenClusters {
            clusters: Vec::new(),
            cluster_tol,
        });
    }
    let mut a = m.clone();
    let mut w = vec![C64::new(0.0, 0.0); n];
    let mut vl = DMatrix::<C64>::zeros(n, n);
    let mut vr_dummy = C64::new(0.0, 0.0);
    let mut rwork = vec![0f64; 2 * n];
    let mut info = 0i32;
    let ni = n as i32;
    let one = 1i32;
    let jobvl = b'V' as c_char;
    let jobvr = b'N' as c_char;
    unsafe {
        let mut query = C64::new(0.0, 0.0);
        let lwork_query = -1i32;
        lapack_sys::zgeev_(
            &jobvl,
            &jobvr,
            &ni,
            cp(a.as_mut_ptr()),
            &ni,
            cp(w.as_mut_ptr()),
            cp(vl.as_mut_ptr()),
            &ni,
            cp(&mut vr_dummy),
            &one,
            cp(&mut query),
            &lwork_query,
            rwork.as_mut_ptr(),
            &mut info,
        );
        let lwork = query.re as i32;
        let mut work = vec![C64::new(0.0, 0.0); lwork.max(1) as usize];
        lapack_sys::zgeev_(
            &jobvl,
            &jobvr,
            &ni,
            cp(a.as_mut_ptr()),
            &ni,
            cp(w.as_mut_ptr()),
            cp(vl.as_mut_ptr()),
            &ni,
            cp(&mut vr_dummy),
            &one,
            cp(work.as_mut_ptr()),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::EigFailed(info));
    }

    let tol = cluster_tol * frob(m).max(f64::MIN_POSITIVE);
    // Single-linkage clustering via union-find.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if (w[i] - w[j]).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut clusters = Vec::with_capacity(groups.len());
    for members in groups.into_values() {
        let mlen = members.len();
        let mean = members.iter().map(|&i| w[i]).sum::<C64>() / mlen as f64;
        // Left row eigenvector = conjugate transpose of the VL column.
        let mut stack = DMatrix::<C64>::zeros(mlen, n);
        for (row, &i) in members.iter().enumerate() {
            for col in 0..n {
                stack[(row, col)] = vl[(col, i)].conj();
            }
        }
        let basis = orthonormal_rows(&stack);
        clusters.push(EigenCluster { value: mean, basis });
    }
    clusters.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .expect("finite eigenvalues")
    });
    Ok(EigenClusters {
        clusters,
        cluster_tol,
    })
}

/// Left generalized eigenpairs of the pencil (b1, b2): row vectors c with
/// c * b1 = mu * c * b2. Infinite eigenvalues (singular directions of b2)
/// are flagged as `None`.
pub fn gep_left(
    b1: &DMatrix<C64>,
    b2: &DMatrix<C64>,
) -> Result<Vec<(Option<C64>, RowDVector<C64>)>> {
    let n = b1.nrows();
    if b1.shape() != (n, n) || b2.shape() != (n, n) {
        return Err(Error::InvalidParameter(
            "pencil matrices must be square of equal size".into(),
        ));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = frob(b1).max(frob(b2));
    if scale < 1e-300 {
        return Err(Error::DegeneratePencil);
    }
    let mut a = b1.clone();
    let mut b = b2.clone();
    let mut alpha = vec![C64::new(0.0, 0.0); n];
    let mut beta = vec![C64::new(0.0, 0.0); n];
    let mut vl = DMatrix::<C64>::zeros(n, n);
    let mut vr_dummy = C64::new(0.0, 0.0);
    let mut rwork = vec![0f64; 8 * n];
    let mut info = 0i32;
    let ni = n as i32;
    let one = 1i32;
    let jobvl = b'V' as c_char;
    let jobvr = b'N' as c_char;
    unsafe {
        let mut query = C64::new(0.0, 0.0);
        let lwork_query = -1i32;
        lapack_sys::zggev_(
            &jobvl,
            &jobvr,
            &ni,
            cp(a.as_mut_ptr()),
            &ni,
            cp(b.as_mut_ptr()),
            &ni,
            cp(alpha.as_mut_ptr()),
            cp(beta.as_mut_ptr()),
            cp(vl.as_mut_ptr()),
            &ni,
            cp(&mut vr_dummy),
            &one,
            cp(&mut query),
            &lwork_query,
            rwork.as_mut_ptr(),
            &mut info,
        );
        let lwork = query.re as i32;
        let mut work = vec![C64::new(0.0, 0.0); lwork.max(1) as usize];
        lapack_sys::zggev_(
            &jobvl,
            &jobvr,
            &ni,
            cp(a.as_mut_ptr()),
            &ni,
            cp(b.as_mut_ptr()),
            &ni,
            cp(alpha.as_mut_ptr()),
            cp(beta.as_mut_ptr()),
            cp(vl.as_mut_ptr()),
            &ni,
            cp(&mut vr_dummy),
            &one,
            cp(work.as_mut_ptr()),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::EigFailed(info));
    }
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mu = if beta[j].norm() <= 1e-12 * (1.0 + alpha[j].norm()) {
            None
        } else {
            Some(alpha[j] / beta[j])
        };
        let mut c = RowDVector::<C64>::zeros(n);
        for i in 0..n {
            c[i] = vl[(i, j)].conj();
        }
        out.push((mu, c));
    }
    Ok(out)
}

/// Solves lower * x = rhs for x by forward substitution (LAPACK ztrtrs).
///
/// Errs when the triangular factor has a near-zero diagonal relative to its
/// largest diagonal entry; callers treat that as "re-draw f0".
pub fn back_substitute(lower: &DMatrix<C64>, rhs: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let n = lower.nrows();
    if lower.ncols() != n || rhs.nrows() != n {
        return Err(Error::InvalidParameter(
            "triangular solve shape mismatch".into(),
        ));
    }
    if n == 0 {
        return Ok(DMatrix::zeros(0, rhs.ncols()));
    }
    let dmax = (0..n).map(|i| lower[(i, i)].norm()).fold(0.0f64, f64::max);
    let dmin = (0..n)
        .map(|i| lower[(i, i)].norm())
        .fold(f64::INFINITY, f64::min);
    if dmax == 0.0 || dmin < 1e-14 * dmax {
        return Err(Error::IllConditionedBasis);
    }
    let mut a = lower.clone();
    let mut x = rhs.clone();
    let ni = n as i32;
    let nrhs = rhs.ncols() as i32;
    let mut info = 0i32;
    let uplo = b'L' as c_char;
    let trans = b'N' as c_char;
    let diag = b'N' as c_char;
    unsafe {
        lapack_sys::ztrtrs_(
            &uplo,
            &trans,
            &diag,
            &ni,
            &nrhs,
            cp(a.as_mut_ptr()),
            &ni,
            cp(x.as_mut_ptr()),
            &ni,
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::IllConditionedBasis);
    }
    Ok(x)
}

/// Random matrix with i.i.d. complex standard normal entries.
pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| draw_coeff(rng, CoeffDist::ComplexNormal))
}

/// Relative residual of projecting the rows of `a` onto the row space of the
/// orthonormal-row matrix `basis`.
pub fn row_space_residual(a: &DMatrix<C64>, basis: &DMatrix<C64>) -> f64 {
    let na = frob(a);
    if na == 0.0 {
        return 0.0;
    }
    let coords = matmul(a, &basis.adjoint());
    let proj = matmul(&coords, basis);
    frob(&(a - proj)) / na
}

/// Symmetric row-space agreement of two bases (rows need not be orthonormal).
pub fn mutual_row_space_residual(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    let oa = orthonormal_rows(a);
    let ob = orthonormal_rows(b);
    row_space_residual(a, &ob).max(row_space_residual(b, &oa))
}

/// Frobenius norm, exposed for tolerance scaling in callers and tests.
pub fn frobenius(m: &DMatrix<C64>) -> f64 {
    frob(m)
}
