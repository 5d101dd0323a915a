//! Semidefinite Cholesky factorization and the least-squares right solve
//! used to extract canonical factors.

use crate::eigen::jacobi;
use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix};
use crate::tolerance::Tolerance;

/// Upper-triangular `U` with `A = U^dagger U` for a Hermitian PSD matrix.
///
/// Semidefinite convention: a pivot `<= psd_tol` is treated as zero and its
/// entire row of `U` is zeroed, so rank-deficient inputs factor without
/// pivoting and the block order of `A` is preserved. A pivot below
/// `-psd_tol` means the input was not PSD.
pub fn cholesky_psd(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    a.require_hermitian(tol.eq_tol)?;
    let n = a.rows();
    let mut u = ComplexMatrix::zeros(n, n);

    for i in 0..n {
        let mut pivot = a.get(i, i).re;
        for k in 0..i {
            pivot -= u.get(k, i).norm_sqr();
        }
        if pivot < -tol.psd_tol {
            return Err(Error::NotPsd { witness: pivot });
        }
        if pivot <= tol.psd_tol {
            continue; // row of U stays zero
        }
        let d = pivot.sqrt();
        u.set(i, i, C64::new(d, 0.0));
        for j in i + 1..n {
            let mut s = a.get(i, j);
            for k in 0..i {
                s -= u.get(k, i).conj() * u.get(k, j);
            }
            u.set(i, j, s / d);
        }
    }
    Ok(u)
}

/// Minimum-norm least-squares solution `S` of `S A = B`, together with a
/// flag telling whether the solve is exact within the residual tolerance.
///
/// `S = B A^+`, with the pseudo-inverse obtained from the eigendecomposition
/// of `A A^dagger`; singular values at or below `psd_tol` are treated as zero.
/// Inexactness is reported, never thrown: `exact` is false whenever
/// `max |S A - B| > residual_tol * (1 + max |B|)`.
pub fn solve_right(b: &ComplexMatrix, a: &ComplexMatrix, tol: &Tolerance) -> Result<(ComplexMatrix, bool)> {
    if b.cols() != a.cols() {
        return Err(Error::dims(format!(
            "solve_right: B is {}x{} but A is {}x{}",
            b.rows(),
            b.cols(),
            a.rows(),
            a.cols()
        )));
    }
    let pinv = pseudo_inverse(a, tol)?;
    let s = b.matmul(&pinv);
    let residual = s.matmul(a).max_abs_diff(b);
    let exact = residual <= tol.residual_for(b.max_abs());
    Ok((s, exact))
}

/// Moore-Penrose pseudo-inverse via the Hermitian eigendecomposition of
/// `A A^dagger`: `A^+ = A^dagger W D^+ W^dagger`.
pub fn pseudo_inverse(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let gram = a.matmul(&a.dagger()).hermitian_part();
    let eig = jacobi(&gram, 64)?;
    let n = gram.rows();
    let mut inv_diag = ComplexMatrix::zeros(n, n);
    for (k, &lambda) in eig.values.iter().enumerate() {
        let sigma = lambda.max(0.0).sqrt();
        if sigma > tol.psd_tol {
            inv_diag.set(k, k, C64::new(1.0 / lambda, 0.0));
        }
    }
    // (A A^dagger)^+ = W D^+ W^dagger
    let gram_pinv = eig
        .vectors
        .matmul(&inv_diag)
        .matmul(&eig.vectors.dagger());
    Ok(a.dagger().matmul(&gram_pinv))
}

/// Triangularity check used by tests.
#[cfg(test)]
pub(crate) fn strictly_lower_is_zero(u: &ComplexMatrix, threshold: f64) -> bool {
    for i in 0..u.rows() {
        for j in 0..i.min(u.cols()) {
            if u.get(i, j).norm() > threshold {
                return false;
            }
        }
    }
    true
}
