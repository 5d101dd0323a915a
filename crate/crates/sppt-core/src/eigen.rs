//! Hermitian eigensolver and the spectral quantities built on it.
//!
//! The solver is a cyclic Jacobi scheme for complex Hermitian matrices: each
//! rotation zeroes one off-diagonal pair with a phased plane rotation, and
//! sweeps repeat until the largest off-diagonal entry falls below machine
//! precision relative to the input scale. Everything here targets the dense,
//! small matrices (`<= ~200x200`) this crate works with.

use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix};
use crate::tolerance::Tolerance;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and a unitary matrix whose columns are the
/// matching eigenvectors, so that `A = V diag(values) V^dagger`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigen(a: &ComplexMatrix, tol: &Tolerance) -> Result<HermitianEigen> {
    a.require_hermitian(tol.eq_tol)?;
    jacobi(&a.hermitian_part(), MAX_SWEEPS)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(a: &ComplexMatrix, tol: &Tolerance) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(a, tol)?.values)
}

/// PSD test: `true` iff the smallest eigenvalue is `>= -psd_tol`. The
/// eigenvalue itself is always returned as a diagnostic.
pub fn is_psd(a: &ComplexMatrix, tol: &Tolerance) -> Result<(bool, f64)> {
    let values = hermitian_eigenvalues(a, tol)?;
    let min_eig = values.first().copied().unwrap_or(0.0);
    Ok((min_eig >= -tol.psd_tol, min_eig))
}

/// Sum of singular values, computed as square roots of the eigenvalues of
/// `A^dagger A` (clipped at zero against rounding).
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    let gram = a.dagger().matmul(a);
    let eig = jacobi(&gram.hermitian_part(), MAX_SWEEPS)?;
    Ok(eig.values.iter().map(|&v| v.max(0.0).sqrt()).sum())
}

/// Cyclic Jacobi on a Hermitian matrix. `max_sweeps` is exposed so the
/// non-convergence path stays testable.
pub(crate) fn jacobi(a: &ComplexMatrix, max_sweeps: usize) -> Result<HermitianEigen> {
    let n = a.rows();
    let mut work = a.clone();
    let mut vectors = ComplexMatrix::identity(n);

    if n <= 1 {
        return Ok(sorted_eigen(&work, vectors));
    }

    let scale = work.max_abs().max(f64::MIN_POSITIVE);
    let target = f64::EPSILON * scale;

    for _ in 0..max_sweeps {
        if max_off_diagonal(&work) <= target {
            return Ok(sorted_eigen(&work, vectors));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                if work.get(p, q).norm() > target {
                    rotate(&mut work, &mut vectors, p, q);
                }
            }
        }
    }

    if max_off_diagonal(&work) <= target {
        return Ok(sorted_eigen(&work, vectors));
    }
    Err(Error::NoConvergence { sweeps: max_sweeps })
}

fn max_off_diagonal(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut worst = 0.0f64;
    for p in 0..n {
        for q in p + 1..n {
            worst = worst.max(a.get(p, q).norm());
        }
    }
    worst
}

/// One phased plane rotation annihilating the (p, q) entry: factor out the
/// phase of A[p][q] to reduce to a real 2x2 symmetric problem, then apply the
/// classic stable Jacobi angle.
fn rotate(a: &mut ComplexMatrix, vectors: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let m = apq.norm();
    if m == 0.0 {
        return;
    }
    let phase = apq / m;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;

    let tau = (aqq - app) / (2.0 * m);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.rows();
    // Left-multiply by J^dagger (rows p and q).
    for col in 0..n {
        let ap = a.get(p, col);
        let aq = a.get(q, col);
        a.set(p, col, phase.conj() * ap * c - aq * s);
        a.set(q, col, phase.conj() * ap * s + aq * c);
    }
    // Right-multiply by J (columns p and q).
    for row in 0..n {
        let ap = a.get(row, p);
        let aq = a.get(row, q);
        a.set(row, p, phase * ap * c - aq * s);
        a.set(row, q, phase * ap * s + aq * c);
    }
    // Rotations preserve Hermiticity; scrub rounding noise at the pivot.
    a.set(p, q, C64::new(0.0, 0.0));
    a.set(q, p, C64::new(0.0, 0.0));
    a.set(p, p, C64::new(a.get(p, p).re, 0.0));
    a.set(q, q, C64::new(a.get(q, q).re, 0.0));

    for row in 0..vectors.rows() {
        let vp = vectors.get(row, p);
        let vq = vectors.get(row, q);
        vectors.set(row, p, phase * vp * c - vq * s);
        vectors.set(row, q, phase * vp * s + vq * c);
    }
}

fn sorted_eigen(work: &ComplexMatrix, vectors: ComplexMatrix) -> HermitianEigen {
    let n = work.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        work.get(i, i)
            .re
            .partial_cmp(&work.get(j, j).re)
            .expect("eigenvalues are finite")
    });

    let values: Vec<f64> = order.iter().map(|&i| work.get(i, i).re).collect();
    let mut sorted_vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            sorted_vectors.set(row, new_col, vectors.get(row, old_col));
        }
    }
    HermitianEigen {
        values,
        vectors: sorted_vectors,
    }
}
