//! Seeded pseudo-random sampling for the factor samplers and the conjecture
//! harness.
//!
//! A SplitMix64 generator keeps every draw reproducible bit-for-bit from a
//! `u64` seed, with no dependence on platform or thread count. The same
//! mixing function derives independent per-sample seeds from a master seed,
//! so harness samples can be evaluated in any order or in parallel.

use crate::matrix::{C64, ComplexMatrix};

/// SplitMix64: passes through every 64-bit state exactly once; plenty for
/// sampling test matrices.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        mix(self.state)
    }

    /// Uniform in `[0, 1)` with 53 bits of mantissa.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Standard normal via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        let u1 = loop {
            let u = self.uniform();
            if u > 0.0 {
                break u;
            }
        };
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Complex entry with independent standard normal components.
    pub fn complex_normal(&mut self) -> C64 {
        C64::new(self.normal(), self.normal())
    }

    /// Dense matrix with iid complex normal entries.
    pub fn gaussian_matrix(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        let entries = (0..rows * cols).map(|_| self.complex_normal()).collect();
        ComplexMatrix::new(rows, cols, entries)
    }

    /// Haar-like random unitary: orthonormalize the columns of a complex
    /// Gaussian matrix with modified Gram-Schmidt.
    pub fn haar_unitary(&mut self, n: usize) -> ComplexMatrix {
        loop {
            let g = self.gaussian_matrix(n, n);
            if let Some(q) = gram_schmidt(&g) {
                return q;
            }
            // Astronomically unlikely rank deficiency: redraw.
        }
    }
}

fn mix(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xbf58476d1ce4e5b9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Per-sample seed derived from a master seed and a sample index by mixing
/// both through SplitMix64. Distinct indices give independent streams.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix(master ^ mix(index.wrapping_add(0x9e3779b97f4a7c15)))
}

fn gram_schmidt(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = g.rows();
    let mut q = g.clone();
    for j in 0..n {
        for k in 0..j {
            // proj = <q_k, q_j>
            let mut proj = C64::new(0.0, 0.0);
            for r in 0..n {
                proj += q.get(r, k).conj() * q.get(r, j);
            }
            for r in 0..n {
                let v = q.get(r, j) - proj * q.get(r, k);
                q.set(r, j, v);
            }
        }
        let norm: f64 = (0..n).map(|r| q.get(r, j).norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        for r in 0..n {
            let v = q.get(r, j) / norm;
            q.set(r, j, v);
        }
    }
    Some(q)
}
