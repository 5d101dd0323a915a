//! Construction and detection of bipartite quantum states with strong
//! positive partial transpose (SPPT), plus the standard PPT and realignment
//! separability criteria, generators for the named state families, the
//! induced matrix-unit channel with entanglement-breaking diagnostics, and a
//! seeded Monte Carlo harness probing the conjecture that every SPPT state
//! is separable.
//!
//! The numerical kernels are self-contained: dense complex matrices, a
//! cyclic Jacobi Hermitian eigensolver, a semidefinite Cholesky with a
//! zero-pivot rule, and pseudo-inverse least-squares solves. All sampling is
//! reproducible from explicit `u64` seeds.

pub mod bipartite;
pub mod channel;
pub mod cholesky;
pub mod eigen;
pub mod error;
pub mod factor;
pub mod families;
pub mod harness;
pub mod io;
pub mod matrix;
pub mod random;
pub mod tolerance;

pub use bipartite::{partial_transpose_a, realign, unrealign, BipartiteState, PptClass};
pub use channel::{EbStatus, EbReport, StateChannel};
pub use cholesky::{cholesky_psd, pseudo_inverse, solve_right};
pub use eigen::{hermitian_eigen, hermitian_eigenvalues, is_psd, trace_norm, HermitianEigen};
pub use error::{Error, Result};
pub use factor::{
    canonical_factorize, is_sppt_state, sample_commuting_factor, sample_factor,
    sample_hermitian_factor, ConditionResidual, SamplerKind, SpptFactor, SpptVerdict,
};
pub use families::{FamilySpec, FamilyVerdictClaim};
pub use harness::{run_conjecture, run_conjecture_sequential, HarnessConfig, HarnessReport};
pub use matrix::{C64, ComplexMatrix};
pub use random::{derive_seed, SplitMix64};
pub use tolerance::Tolerance;
