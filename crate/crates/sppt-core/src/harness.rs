//! Randomized conjecture harness: sample SPPT states, verify the defining
//! identity, and test them against the realignment criterion. A realignment
//! value above `1 + residual_tol` on an SPPT state would certify an
//! entangled SPPT state, refuting the separability conjecture; every such
//! violation is recorded with its reproduction seed.
//!
//! Samples are pure functions of per-sample seeds derived from the master
//! seed by index, so the report does not depend on evaluation order or
//! thread count. With the `parallel` feature (on by default) the samples are
//! evaluated with rayon; [`run_conjecture_sequential`] is always available
//! and produces the identical report.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factor::{sample_factor, SamplerKind};
use crate::random::derive_seed;
use crate::tolerance::Tolerance;

/// What to sample and how much.
#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub dim_a: usize,
    pub dim_b: usize,
    pub count: usize,
    pub sampler: SamplerKind,
    pub master_seed: u64,
    pub tolerance: Tolerance,
}

/// Diagnostics for one sampled state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: usize,
    pub seed: u64,
    /// Smallest eigenvalue of the partial transpose.
    pub min_eig_pt: f64,
    /// Trace norm of the realigned normalized state.
    pub realignment_value: f64,
    /// Deviation of the SPPT identity for the sampled factor.
    pub sppt_defect: f64,
}

/// Worst-case summary over all samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnessAggregate {
    pub max_realignment: f64,
    pub min_eigenvalue: f64,
    pub max_sppt_defect: f64,
    /// Number of samples with realignment value above `1 + residual_tol`;
    /// zero is the conjecture-consistent outcome.
    pub violations: usize,
}

/// Full harness output. Serializes deterministically: records are ordered by
/// sample index and floats are written with a fixed decimal encoding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub sample_count: usize,
    pub dims: [usize; 2],
    pub sampler_id: String,
    pub master_seed: u64,
    pub samples: Vec<SampleRecord>,
    pub aggregate: HarnessAggregate,
}

impl HarnessReport {
    pub fn has_violations(&self) -> bool {
        self.aggregate.violations > 0
    }
}

fn evaluate_sample(cfg: &HarnessConfig, index: usize) -> Result<SampleRecord> {
    let seed = derive_seed(cfg.master_seed, index as u64);
    let factor = sample_factor(cfg.sampler, cfg.dim_a, cfg.dim_b, seed)?;
    let verdict = factor.sppt_verdict(&cfg.tolerance);
    let state = factor.assemble_state();
    let (_, min_eig_pt) = state.is_ppt(&cfg.tolerance)?;
    let realignment_value = state.realignment_value(&cfg.tolerance)?;
    Ok(SampleRecord {
        index,
        seed,
        min_eig_pt,
        realignment_value,
        sppt_defect: verdict.max_defect,
    })
}

fn assemble_report(cfg: &HarnessConfig, samples: Vec<SampleRecord>) -> HarnessReport {
    let mut aggregate = HarnessAggregate {
        max_realignment: f64::NEG_INFINITY,
        min_eigenvalue: f64::INFINITY,
        max_sppt_defect: 0.0,
        violations: 0,
    };
    for record in &samples {
        aggregate.max_realignment = aggregate.max_realignment.max(record.realignment_value);
        aggregate.min_eigenvalue = aggregate.min_eigenvalue.min(record.min_eig_pt);
        aggregate.max_sppt_defect = aggregate.max_sppt_defect.max(record.sppt_defect);
        if record.realignment_value > 1.0 + cfg.tolerance.residual_tol {
            aggregate.violations += 1;
        }
    }
    HarnessReport {
        sample_count: samples.len(),
        dims: [cfg.dim_a, cfg.dim_b],
        sampler_id: cfg.sampler.id().to_string(),
        master_seed: cfg.master_seed,
        samples,
        aggregate,
    }
}

/// Run the harness sequentially, one sample at a time in index order.
pub fn run_conjecture_sequential(cfg: &HarnessConfig) -> Result<HarnessReport> {
    let samples = (0..cfg.count)
        .map(|i| evaluate_sample(cfg, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_report(cfg, samples))
}

/// Run the harness, evaluating samples in parallel when the `parallel`
/// feature is enabled. The report is identical to the sequential one.
#[cfg(feature = "parallel")]
pub fn run_conjecture(cfg: &HarnessConfig) -> Result<HarnessReport> {
    let samples = (0..cfg.count)
        .into_par_iter()
        .map(|i| evaluate_sample(cfg, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_report(cfg, samples))
}

/// Sequential fallback when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn run_conjecture(cfg: &HarnessConfig) -> Result<HarnessReport> {
    run_conjecture_sequential(cfg)
}
