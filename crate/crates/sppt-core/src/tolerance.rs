//! Numerical tolerances used by the comparison and factorization kernels.

use crate::error::{Error, Result};

/// Absolute thresholds for the three kinds of numerical comparison the crate
/// performs. Matrices handled here have entries of order one once normalized,
/// so absolute thresholds are appropriate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Entrywise equality threshold (Hermiticity checks, trace checks).
    pub eq_tol: f64,
    /// How negative an eigenvalue or pivot may be while still counting as
    /// positive semidefinite.
    pub psd_tol: f64,
    /// Residual threshold for factorizations and solves, scaled by
    /// `1 + max |entry|` of the matrix being reconstructed.
    pub residual_tol: f64,
}

impl Tolerance {
    pub const DEFAULT_EQ_TOL: f64 = 1e-10;
    pub const DEFAULT_PSD_TOL: f64 = 1e-10;
    pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-8;

    pub fn new(eq_tol: f64, psd_tol: f64, residual_tol: f64) -> Result<Self> {
        if !(eq_tol > 0.0 && psd_tol > 0.0 && residual_tol > 0.0) {
            return Err(Error::param(format!(
                "tolerances must be strictly positive, got ({eq_tol:e}, {psd_tol:e}, {residual_tol:e})"
            )));
        }
        Ok(Self {
            eq_tol,
            psd_tol,
            residual_tol,
        })
    }

    /// Default tolerances, but with the factorization residual threshold
    /// replaced. Used by the CLI's `SPPT_TOL` override.
    pub fn with_residual_tol(residual_tol: f64) -> Result<Self> {
        Self::new(Self::DEFAULT_EQ_TOL, Self::DEFAULT_PSD_TOL, residual_tol)
    }

    /// Residual threshold scaled for a matrix whose largest entry magnitude
    /// is `max_abs`.
    pub fn residual_for(&self, max_abs: f64) -> f64 {
        self.residual_tol * (1.0 + max_abs)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eq_tol: Self::DEFAULT_EQ_TOL,
            psd_tol: Self::DEFAULT_PSD_TOL,
            residual_tol: Self::DEFAULT_RESIDUAL_TOL,
        }
    }
}
