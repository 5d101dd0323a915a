//! Block upper-triangular factors and the strong-PPT (SPPT) machinery.
//!
//! A factor holds `M` diagonal blocks `X_0 .. X_{M-1}` and strictly upper
//! blocks `S_{ij}` (`i < j`), all `N x N`, defining the `MN x MN` matrix `X`
//! with `X_{ii} = X_i` and `X_{ij} = S_{ij} X_i`. The assembled state is the
//! Gram matrix `rho = X^dagger X`, which is PSD and PPT-testable by
//! construction. Replacing every `S_{ij}` by its adjoint gives the canonical
//! partner `Y`; the state is SPPT exactly when `rho^{T_A} = Y^dagger Y`.
//!
//! Block indices are zero-based throughout.

use std::collections::BTreeMap;

use crate::bipartite::BipartiteState;
use crate::cholesky::{cholesky_psd, solve_right};
use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix};
use crate::random::SplitMix64;
use crate::tolerance::Tolerance;

/// The data `(M, N, {X_i}, {S_ij})` of a block upper-triangular factor.
#[derive(Debug, Clone)]
pub struct SpptFactor {
    dim_a: usize,
    dim_b: usize,
    x_blocks: Vec<ComplexMatrix>,
    s_blocks: BTreeMap<(usize, usize), ComplexMatrix>,
}

/// Residual of one algebraic SPPT condition. `i == j` labels the diagonal
/// condition for block column `j`; `i < j` labels the off-diagonal condition
/// for the block pair `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionResidual {
    pub i: usize,
    pub j: usize,
    pub residual: f64,
}

/// Outcome of the SPPT decision for a factor: the defect of the defining
/// identity, the residuals of the equivalent algebraic conditions, and the
/// sufficient commutation check.
#[derive(Debug, Clone)]
pub struct SpptVerdict {
    pub is_sppt: bool,
    /// Largest entrywise deviation between `rho^{T_A}` and `Y^dagger Y`.
    pub max_defect: f64,
    /// Threshold the defect and condition residuals were compared against,
    /// `residual_tol * (1 + max |rho|)`.
    pub threshold: f64,
    pub condition_residuals: Vec<ConditionResidual>,
    pub sufficient_commutation: bool,
}

impl SpptVerdict {
    /// Largest algebraic condition residual (zero when `M = 1`).
    pub fn conditions_max(&self) -> f64 {
        self.condition_residuals
            .iter()
            .map(|c| c.residual)
            .fold(0.0, f64::max)
    }

    /// Verdict along the algebraic-conditions route; agrees with `is_sppt`
    /// (which compares `rho^{T_A}` against `Y^dagger Y` directly).
    pub fn conditions_satisfied(&self) -> bool {
        self.conditions_max() <= self.threshold
    }
}

impl SpptFactor {
    /// Validate block counts and shapes: `M` diagonal blocks and
    /// `M (M - 1) / 2` strictly upper blocks, all `N x N`.
    pub fn new(
        dim_a: usize,
        dim_b: usize,
        x_blocks: Vec<ComplexMatrix>,
        s_blocks: BTreeMap<(usize, usize), ComplexMatrix>,
    ) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::param("factor dimensions must be positive"));
        }
        if x_blocks.len() != dim_a {
            return Err(Error::dims(format!(
                "expected {dim_a} diagonal blocks, got {}",
                x_blocks.len()
            )));
        }
        if s_blocks.len() != dim_a * (dim_a - 1) / 2 {
            return Err(Error::dims(format!(
                "expected {} strictly upper blocks, got {}",
                dim_a * (dim_a - 1) / 2,
                s_blocks.len()
            )));
        }
        for x in &x_blocks {
            if x.rows() != dim_b || x.cols() != dim_b {
                return Err(Error::dims(format!(
                    "diagonal block must be {dim_b}x{dim_b}, got {}x{}",
                    x.rows(),
                    x.cols()
                )));
            }
        }
        for (&(i, j), s) in &s_blocks {
            if i >= j || j >= dim_a {
                return Err(Error::IndexOutOfRange { i, j, m: dim_a });
            }
            if s.rows() != dim_b || s.cols() != dim_b {
                return Err(Error::dims(format!(
                    "S({i},{j}) must be {dim_b}x{dim_b}, got {}x{}",
                    s.rows(),
                    s.cols()
                )));
            }
        }
        Ok(Self {
            dim_a,
            dim_b,
            x_blocks,
            s_blocks,
        })
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn x_block(&self, i: usize) -> &ComplexMatrix {
        &self.x_blocks[i]
    }

    pub fn s_block(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.s_blocks[&(i, j)]
    }

    pub fn s_blocks(&self) -> impl Iterator<Item = (&(usize, usize), &ComplexMatrix)> {
        self.s_blocks.iter()
    }

    /// The block upper-triangular matrix `X`: `X_{ii} = X_i`,
    /// `X_{ij} = S_{ij} X_i` for `i < j`, zero below the diagonal.
    pub fn assemble_x(&self) -> ComplexMatrix {
        self.assemble(|s| s.clone())
    }

    /// The canonical partner `Y`: same shape as `X` with every `S_{ij}`
    /// replaced by its adjoint.
    pub fn canonical_partner(&self) -> ComplexMatrix {
        self.assemble(|s| s.dagger())
    }

    fn assemble(&self, map_s: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> ComplexMatrix {
        let (m, n) = (self.dim_a, self.dim_b);
        let mut out = ComplexMatrix::zeros(m * n, m * n);
        for i in 0..m {
            out.set_block(i, i, &self.x_blocks[i]);
            for j in i + 1..m {
                let block = map_s(&self.s_blocks[&(i, j)]).matmul(&self.x_blocks[i]);
                out.set_block(i, j, &block);
            }
        }
        out
    }

    /// The assembled (unnormalized) state `rho = X^dagger X`. PSD holds by
    /// construction, so no spectral validation is repeated here.
    pub fn assemble_state(&self) -> BipartiteState {
        let x = self.assemble_x();
        let rho = x.dagger().matmul(&x).hermitian_part();
        BipartiteState::from_gram_unchecked(rho, self.dim_a, self.dim_b)
    }

    /// The same state built block by block from the closed-form sums
    /// instead of the full matrix product:
    ///
    /// * `rho_{jj} = sum_{k<j} X_k^dagger S_{kj}^dagger S_{kj} X_k + X_j^dagger X_j`
    /// * `rho_{0j} = X_0^dagger S_{0j} X_0`
    /// * `rho_{ij} = sum_{k<i} X_k^dagger S_{ki}^dagger S_{kj} X_k + X_i^dagger S_{ij} X_i` for `0 < i < j`
    ///
    /// Used as a cross-validation of the product route.
    pub fn assemble_state_blockwise(&self) -> ComplexMatrix {
        let (m, n) = (self.dim_a, self.dim_b);
        let mut rho = ComplexMatrix::zeros(m * n, m * n);
        for j in 0..m {
            // Diagonal block.
            let mut diag = self.x_blocks[j].dagger().matmul(&self.x_blocks[j]);
            for k in 0..j {
                let skj = &self.s_blocks[&(k, j)];
                let term = self.x_blocks[k]
                    .dagger()
                    .matmul(&skj.dagger())
                    .matmul(skj)
                    .matmul(&self.x_blocks[k]);
                diag = diag.add(&term);
            }
            rho.set_block(j, j, &diag);

            for i in 0..j {
                let mut off = self.x_blocks[i]
                    .dagger()
                    .matmul(&self.s_blocks[&(i, j)])
                    .matmul(&self.x_blocks[i]);
                for k in 0..i {
                    let term = self.x_blocks[k]
                        .dagger()
                        .matmul(&self.s_blocks[&(k, i)].dagger())
                        .matmul(&self.s_blocks[&(k, j)])
                        .matmul(&self.x_blocks[k]);
                    off = off.add(&term);
                }
                rho.set_block(i, j, &off);
                rho.set_block(j, i, &off.dagger());
            }
        }
        rho
    }

    /// Decide SPPT for this factor: compare `rho^{T_A}` against
    /// `Y^dagger Y` entrywise, and evaluate the equivalent per-block
    /// algebraic conditions as residuals.
    pub fn sppt_verdict(&self, tol: &Tolerance) -> SpptVerdict {
        let rho = self.assemble_state();
        let pt = rho.partial_transpose_a();
        let y = self.canonical_partner();
        let yy = y.dagger().matmul(&y);
        let max_defect = pt.max_abs_diff(&yy);
        let threshold = tol.residual_for(rho.matrix().max_abs());

        SpptVerdict {
            is_sppt: max_defect <= threshold,
            max_defect,
            threshold,
            condition_residuals: self.condition_residuals(),
            sufficient_commutation: self.satisfies_sufficient_commutation(tol),
        }
    }

    /// Residuals of the algebraic SPPT conditions.
    ///
    /// For each block column `j >= 1` the diagonal condition
    /// `sum_{k<j} X_k^dagger S_{kj}^dagger S_{kj} X_k
    ///  = sum_{k<j} X_k^dagger S_{kj} S_{kj}^dagger X_k`,
    /// and for each pair `1 <= i < j` the off-diagonal condition
    /// `sum_{k<i} X_k^dagger S_{kj}^dagger S_{ki} X_k
    ///  = sum_{k<i} X_k^dagger S_{ki} S_{kj}^dagger X_k`.
    ///
    /// For `M = 2` the list has exactly one entry: the single condition
    /// `X_0^dagger S^dagger S X_0 = X_0^dagger S S^dagger X_0`.
    pub fn condition_residuals(&self) -> Vec<ConditionResidual> {
        let (m, n) = (self.dim_a, self.dim_b);
        let mut out = Vec::new();
        for j in 1..m {
            let mut lhs = ComplexMatrix::zeros(n, n);
            let mut rhs = ComplexMatrix::zeros(n, n);
            for k in 0..j {
                let skj = &self.s_blocks[&(k, j)];
                let xk = &self.x_blocks[k];
                lhs = lhs.add(&xk.dagger().matmul(&skj.dagger()).matmul(skj).matmul(xk));
                rhs = rhs.add(&xk.dagger().matmul(skj).matmul(&skj.dagger()).matmul(xk));
            }
            out.push(ConditionResidual {
                i: j,
                j,
                residual: lhs.max_abs_diff(&rhs),
            });
        }
        for i in 1..m {
            for j in i + 1..m {
                let mut lhs = ComplexMatrix::zeros(n, n);
                let mut rhs = ComplexMatrix::zeros(n, n);
                for k in 0..i {
                    let ski = &self.s_blocks[&(k, i)];
                    let skj = &self.s_blocks[&(k, j)];
                    let xk = &self.x_blocks[k];
                    lhs = lhs.add(&xk.dagger().matmul(&skj.dagger()).matmul(ski).matmul(xk));
                    rhs = rhs.add(&xk.dagger().matmul(ski).matmul(&skj.dagger()).matmul(xk));
                }
                out.push(ConditionResidual {
                    i,
                    j,
                    residual: lhs.max_abs_diff(&rhs),
                });
            }
        }
        out
    }

    /// Sufficient commutation condition: `S_{ki} S_{kj}^dagger =
    /// S_{kj}^dagger S_{ki}` for all `k < i <= j`. The case `i = j` is
    /// normality of each `S_{kj}`; the condition implies SPPT.
    pub fn satisfies_sufficient_commutation(&self, tol: &Tolerance) -> bool {
        for k in 0..self.dim_a {
            for i in k + 1..self.dim_a {
                for j in i..self.dim_a {
                    let ski = &self.s_blocks[&(k, i)];
                    let skj = &self.s_blocks[&(k, j)];
                    let lhs = ski.matmul(&skj.dagger());
                    let rhs = skj.dagger().matmul(ski);
                    if lhs.max_abs_diff(&rhs) > tol.residual_tol {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Canonical factorization of a state: block Cholesky in the given product
/// basis, then `X_i` from the diagonal blocks and `S_{ij}` from the
/// minimum-norm solutions of `S_{ij} X_i = U_{ij}`.
///
/// Fails with [`Error::NotRepresentable`] when some upper block of the
/// Cholesky factor does not lie in the row space of its diagonal block, in
/// which case no factor of this form exists along the canonical Cholesky.
pub fn canonical_factorize(
    state: &BipartiteState,
    tol: &Tolerance,
) -> Result<SpptFactor> {
    let (m, n) = (state.dim_a(), state.dim_b());
    let u = cholesky_psd(state.matrix(), tol)?;

    let mut x_blocks = Vec::with_capacity(m);
    for i in 0..m {
        x_blocks.push(u.block(i, i, n));
    }

    let mut s_blocks = BTreeMap::new();
    for (i, x_i) in x_blocks.iter().enumerate() {
        for j in i + 1..m {
            let u_ij = u.block(i, j, n);
            let (s, exact) = solve_right(&u_ij, x_i, tol)?;
            if !exact {
                let residual = s.matmul(x_i).max_abs_diff(&u_ij);
                return Err(Error::NotRepresentable { i, j, residual });
            }
            s_blocks.insert((i, j), s);
        }
    }

    SpptFactor::new(m, n, x_blocks, s_blocks)
}

/// SPPT decision for an arbitrary state, along the canonical factorization.
/// This is the crate's operational meaning of "the state is SPPT"; verdicts
/// are relative to the canonical Cholesky factor, and no claim is made about
/// other factorizations of the same state.
pub fn is_sppt_state(state: &BipartiteState, tol: &Tolerance) -> Result<SpptVerdict> {
    let factor = canonical_factorize(state, tol)?;
    Ok(factor.sppt_verdict(tol))
}

/// Which random factor family to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplerKind {
    /// All `S_{ij}` unitarily conjugated complex diagonals (one shared
    /// unitary), random invertible `X_i`; satisfies the sufficient
    /// commutation condition, hence SPPT.
    Commuting,
    /// Same scheme with real diagonals: every `S_{ij}` Hermitian and
    /// pairwise commuting, which forces `rho^{T_A} = rho`.
    Hermitian,
    /// The canonical rank-N form for `M = 2`: `X_0 = I`, `X_1 = 0`, one
    /// random normal `S`.
    Normal2xN,
    /// Fully random Gaussian blocks; generically not SPPT. Used to exercise
    /// the negative side of the verdict logic.
    Generic,
}

impl SamplerKind {
    pub fn id(&self) -> &'static str {
        match self {
            SamplerKind::Commuting => "commuting",
            SamplerKind::Hermitian => "hermitian",
            SamplerKind::Normal2xN => "normal-2xn",
            SamplerKind::Generic => "generic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "commuting" => Some(SamplerKind::Commuting),
            "hermitian" => Some(SamplerKind::Hermitian),
            "normal-2xn" | "normal-2xN" => Some(SamplerKind::Normal2xN),
            "generic" => Some(SamplerKind::Generic),
            _ => None,
        }
    }
}

/// Draw one factor of the requested kind. Deterministic in the seed.
pub fn sample_factor(kind: SamplerKind, m: usize, n: usize, seed: u64) -> Result<SpptFactor> {
    if m < 2 || n < 1 {
        return Err(Error::param(format!(
            "sampler needs M >= 2 and N >= 1, got {m} (x) {n}"
        )));
    }
    if kind == SamplerKind::Normal2xN && m != 2 {
        return Err(Error::param(format!(
            "the normal-2xn sampler is defined for M = 2 only, got M = {m}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    match kind {
        SamplerKind::Commuting => sample_conjugated_diagonals(&mut rng, m, n, false),
        SamplerKind::Hermitian => sample_conjugated_diagonals(&mut rng, m, n, true),
        SamplerKind::Normal2xN => {
            let unitary = rng.haar_unitary(n);
            let diag: Vec<C64> = (0..n).map(|_| rng.complex_normal()).collect();
            let s = unitary
                .matmul(&ComplexMatrix::diagonal(&diag))
                .matmul(&unitary.dagger());
            let mut s_blocks = BTreeMap::new();
            s_blocks.insert((0usize, 1usize), s);
            SpptFactor::new(
                2,
                n,
                vec![ComplexMatrix::identity(n), ComplexMatrix::zeros(n, n)],
                s_blocks,
            )
        }
        SamplerKind::Generic => {
            let x_blocks = (0..m).map(|_| rng.gaussian_matrix(n, n)).collect();
            let mut s_blocks = BTreeMap::new();
            for i in 0..m {
                for j in i + 1..m {
                    s_blocks.insert((i, j), rng.gaussian_matrix(n, n));
                }
            }
            SpptFactor::new(m, n, x_blocks, s_blocks)
        }
    }
}

pub fn sample_commuting_factor(m: usize, n: usize, seed: u64) -> Result<SpptFactor> {
    sample_factor(SamplerKind::Commuting, m, n, seed)
}

pub fn sample_hermitian_factor(m: usize, n: usize, seed: u64) -> Result<SpptFactor> {
    sample_factor(SamplerKind::Hermitian, m, n, seed)
}

fn sample_conjugated_diagonals(
    rng: &mut SplitMix64,
    m: usize,
    n: usize,
    hermitian: bool,
) -> Result<SpptFactor> {
    let unitary = rng.haar_unitary(n);
    let mut s_blocks = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            let diag: Vec<C64> = (0..n)
                .map(|_| {
                    if hermitian {
                        C64::new(rng.normal(), 0.0)
                    } else {
                        rng.complex_normal()
                    }
                })
                .collect();
            let s = unitary
                .matmul(&ComplexMatrix::diagonal(&diag))
                .matmul(&unitary.dagger());
            s_blocks.insert((i, j), s);
        }
    }
    let x_blocks = (0..m).map(|_| random_invertible(rng, n)).collect();
    SpptFactor::new(m, n, x_blocks, s_blocks)
}

/// Random invertible matrix: a Gaussian draw, shifted by `c I` with `c`
/// beyond the spectral radius whenever the draw is nearly singular (smallest
/// singular value below 0.1, estimated from the eigenvalues of `X^dagger X`).
fn random_invertible(rng: &mut SplitMix64, n: usize) -> ComplexMatrix {
    let x = rng.gaussian_matrix(n, n);
    let gram = x.dagger().matmul(&x).hermitian_part();
    let eigenvalues = crate::eigen::jacobi(&gram, 64)
        .expect("Jacobi converges on PSD Gram matrices")
        .values;
    let min_sv = eigenvalues.first().copied().unwrap_or(0.0).max(0.0).sqrt();
    if min_sv >= 0.1 {
        return x;
    }
    let max_sv = eigenvalues.last().copied().unwrap_or(0.0).max(0.0).sqrt();
    // Every eigenvalue of x has modulus at most max_sv, so shifting by
    // 1 + max_sv moves the whole spectrum away from zero.
    x.add(&ComplexMatrix::identity(n).scale_re(1.0 + max_sv))
}
