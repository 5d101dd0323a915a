//! The linear map induced by a bipartite state through its blocks: matrix
//! units of the first factor are sent to the corresponding blocks,
//! `Phi(e_ij) = rho_ij`. The Choi matrix of this map is the source state
//! itself scaled by `1/M`, so complete positivity is automatic and
//! entanglement-breaking diagnostics reduce to separability criteria on the
//! source.

use crate::bipartite::BipartiteState;
use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix};
use crate::tolerance::Tolerance;

/// A channel `M_M -> M_N` defined blockwise by a bipartite state.
#[derive(Debug, Clone)]
pub struct StateChannel {
    source: BipartiteState,
}

/// Three-valued entanglement-breaking status. Necessary criteria can refute
/// the property but never certify it, so the positive direction is only ever
/// "consistent".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EbStatus {
    /// The Choi matrix failed PPT or the realignment criterion, so it is
    /// entangled and the channel is certainly not entanglement-breaking.
    CertifiedNot,
    /// The Choi matrix passed every necessary criterion computed here.
    Consistent,
    /// Diagnostics could not be completed.
    Unknown,
}

impl EbStatus {
    pub fn label(&self) -> &'static str {
        match self {
            EbStatus::CertifiedNot => "certified not",
            EbStatus::Consistent => "consistent",
            EbStatus::Unknown => "unknown",
        }
    }
}

/// Entanglement-breaking diagnostics for a channel.
#[derive(Debug, Clone)]
pub struct EbReport {
    /// Complete positivity: the Choi matrix is PSD. True by construction
    /// for every valid source; reported with its eigenvalue witness.
    pub cp: bool,
    /// Deviation from trace preservation after normalizing the source so the
    /// diagonal blocks sum to trace `M`.
    pub tp_defect: f64,
    pub choi_ppt: bool,
    pub choi_min_eig_pt: f64,
    pub choi_realignment: f64,
    pub eb_certified_false: bool,
    pub status: EbStatus,
}

impl StateChannel {
    pub fn new(source: BipartiteState) -> Self {
        Self { source }
    }

    pub fn source(&self) -> &BipartiteState {
        &self.source
    }

    pub fn dim_in(&self) -> usize {
        self.source.dim_a()
    }

    pub fn dim_out(&self) -> usize {
        self.source.dim_b()
    }

    /// Apply the channel to an `M x M` matrix by linear extension from the
    /// matrix units: `A -> sum_ij A_ij rho_ij`.
    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        let m = self.dim_in();
        if a.rows() != m || a.cols() != m {
            return Err(Error::dims(format!(
                "channel input must be {m}x{m}, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = self.dim_out();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..m {
            for j in 0..m {
                let a_ij = a.get(i, j);
                if a_ij == C64::new(0.0, 0.0) {
                    continue;
                }
                out = out.add(&self.source.block(i, j)?.scale(a_ij));
            }
        }
        Ok(out)
    }

    /// The Choi matrix `(1/M) sum_ij e_ij (x) Phi(e_ij)`, which by
    /// construction equals the source matrix scaled by `1/M`. The identity is
    /// asserted here, keeping the duality explicit.
    pub fn choi(&self, tol: &Tolerance) -> Result<BipartiteState> {
        let m = self.dim_in();
        let n = self.dim_out();
        let mut choi = ComplexMatrix::zeros(m * n, m * n);
        for i in 0..m {
            for j in 0..m {
                choi.set_block(i, j, &self.source.block(i, j)?);
            }
        }
        let choi = choi.scale_re(1.0 / m as f64);
        debug_assert!(
            choi.max_abs_diff(&self.source.matrix().scale_re(1.0 / m as f64)) <= tol.eq_tol
        );
        BipartiteState::from_matrix(choi, m, n, false, tol)
    }

    /// Deviation from trace preservation: `max_ij |tr(rho_ij) - delta_ij|`
    /// after rescaling the source so that the diagonal block traces sum to
    /// `M`. Zero exactly when the channel is trace-preserving.
    pub fn tp_defect(&self) -> Result<f64> {
        let m = self.dim_in();
        let total = self.source.trace();
        if total <= 0.0 {
            return Err(Error::ZeroTrace { trace: total });
        }
        let rescale = m as f64 / total;
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                let t = self.source.block(i, j)?.trace() * rescale;
                let delta = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((t - C64::new(delta, 0.0)).norm());
            }
        }
        Ok(worst)
    }

    /// Full entanglement-breaking diagnostics on the Choi matrix.
    pub fn eb_report(&self, tol: &Tolerance) -> Result<EbReport> {
        let choi = self.choi(tol)?;
        let (cp, _) = crate::eigen::is_psd(choi.matrix(), tol)?;
        let (choi_ppt, choi_min_eig_pt) = choi.is_ppt(tol)?;
        let choi_realignment = choi.realignment_value(tol)?;
        let realignment_passes = choi_realignment <= 1.0 + tol.residual_tol;
        let eb_certified_false = !choi_ppt || !realignment_passes;
        let status = if eb_certified_false {
            EbStatus::CertifiedNot
        } else {
            EbStatus::Consistent
        };
        Ok(EbReport {
            cp,
            tp_defect: self.tp_defect()?,
            choi_ppt,
            choi_min_eig_pt,
            choi_realignment,
            eb_certified_false,
            status,
        })
    }
}
