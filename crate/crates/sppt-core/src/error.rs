//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while validating inputs or running the
/// numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("matrix is not Hermitian (max |A - A^dagger| = {max_deviation:.3e})")]
    NotHermitian { max_deviation: f64 },

    #[error("matrix is not positive semidefinite (witness {witness:.3e})")]
    NotPsd { witness: f64 },

    #[error("trace is zero or negative ({trace:.3e}); cannot normalize")]
    ZeroTrace { trace: f64 },

    #[error("block index ({i}, {j}) out of range for {m} x {m} block structure")]
    IndexOutOfRange { i: usize, j: usize, m: usize },

    #[error("parameter out of range: {context}")]
    ParamOutOfRange { context: String },

    #[error("eigensolver failed to converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error(
        "state is not representable as a block upper-triangular factor along the \
         canonical factorization: block ({i}, {j}) leaves residual {residual:.3e}"
    )]
    NotRepresentable { i: usize, j: usize, residual: f64 },
}

impl Error {
    pub(crate) fn dims(context: impl Into<String>) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
        }
    }

    pub(crate) fn param(context: impl Into<String>) -> Self {
        Error::ParamOutOfRange {
            context: context.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
