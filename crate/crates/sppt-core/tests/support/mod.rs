//! Shared oracles and generators for the integration tests. Not every test
//! target uses every helper.
#![allow(dead_code)]
//!
//! The eigenvalue oracle is deliberately independent of the library's Jacobi
//! solver: it reduces a complex Hermitian matrix to a real symmetric
//! tridiagonal form with Householder reflections, then brackets each
//! eigenvalue by bisection on the Sturm count evaluated through the
//! characteristic-polynomial pivot recurrence of the leading minors.

use sppt_core::{BipartiteState, C64, ComplexMatrix, SplitMix64, Tolerance};

/// All eigenvalues of a Hermitian matrix, ascending, via tridiagonalization
/// plus Sturm bisection. Works on plain nested vectors; shares no code with
/// the Jacobi path it cross-checks.
#[allow(clippy::needless_range_loop)]
pub fn hermitian_eigenvalues_oracle(a: &ComplexMatrix) -> Vec<f64> {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut m: Vec<Vec<C64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();

    // Householder reduction to Hermitian tridiagonal form.
    for k in 0..n.saturating_sub(2) {
        let col: Vec<C64> = (k + 1..n).map(|i| m[i][k]).collect();
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            continue;
        }
        // Reflect the column onto -phase * norm * e_0.
        let x0 = col[0];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { C64::new(1.0, 0.0) };
        let alpha = -phase * norm;
        let mut u: Vec<C64> = col.clone();
        u[0] -= alpha;
        let unorm = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if unorm < 1e-300 {
            continue;
        }
        for z in &mut u {
            *z /= unorm;
        }
        // Apply H = I - 2 u u^dagger on rows and columns k+1..n.
        // Rows: m[i][j] -= 2 u[i-k-1] * sum_l conj(u[l-k-1]) m[l][j]
        for j in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for l in k + 1..n {
                s += u[l - k - 1].conj() * m[l][j];
            }
            for i in k + 1..n {
                let delta = u[i - k - 1] * s * 2.0;
                m[i][j] -= delta;
            }
        }
        // Columns: m[i][j] -= 2 (sum_l m[i][l] u[l-k-1]) conj(u[j-k-1])
        for i in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for l in k + 1..n {
                s += m[i][l] * u[l - k - 1];
            }
            for j in k + 1..n {
                let delta = s * u[j - k - 1].conj() * 2.0;
                m[i][j] -= delta;
            }
        }
    }

    // Extract the tridiagonal data; a diagonal phase rotation makes the
    // off-diagonal entries real without changing the spectrum.
    let diag: Vec<f64> = (0..n).map(|i| m[i][i].re).collect();
    let off: Vec<f64> = (0..n.saturating_sub(1)).map(|i| m[i + 1][i].norm()).collect();
    sturm_bisect_all(&diag, &off)
}

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below
/// `lambda`: negative pivots of the shifted characteristic-minor recurrence
/// p_k = (d_k - lambda) - e_{k-1}^2 / p_{k-1}.
fn sturm_count(diag: &[f64], off: &[f64], lambda: f64) -> usize {
    let mut count = 0usize;
    let mut q = diag[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let safe = if q.abs() < 1e-300 {
            if q >= 0.0 { 1e-300 } else { -1e-300 }
        } else {
            q
        };
        q = (diag[i] - lambda) - off[i - 1] * off[i - 1] / safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn sturm_bisect_all(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    if n == 0 {
        return Vec::new();
    }
    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i < n - 1 { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    lo -= 1.0;
    hi += 1.0;

    (0..n)
        .map(|k| {
            let mut a = lo;
            let mut b = hi;
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if (b - a) <= 4.0 * f64::EPSILON * mid.abs().max(1.0) {
                    break;
                }
                if sturm_count(diag, off, mid) <= k {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Random Hermitian matrix with entries of order one.
pub fn random_hermitian(rng: &mut SplitMix64, n: usize) -> ComplexMatrix {
    let g = rng.gaussian_matrix(n, n);
    g.add(&g.dagger()).scale_re(0.5)
}

/// Random density-like Gram state on `C^M (x) C^N`, normalized.
pub fn random_gram_state(rng: &mut SplitMix64, m: usize, n: usize) -> BipartiteState {
    let x = rng.gaussian_matrix(m * n, m * n);
    let gram = x.dagger().matmul(&x).hermitian_part();
    BipartiteState::from_matrix(gram, m, n, true, &Tolerance::default())
        .expect("Gram states validate")
}

/// Random separable state: a convex sum of at most `k` product states.
pub fn random_separable_state(rng: &mut SplitMix64, m: usize, n: usize, k: usize) -> BipartiteState {
    let terms = 1 + (rng.next_u64() as usize) % k;
    let mut total = ComplexMatrix::zeros(m * n, m * n);
    let mut weights = Vec::with_capacity(terms);
    for _ in 0..terms {
        weights.push(rng.uniform() + 1e-3);
    }
    let weight_sum: f64 = weights.iter().sum();
    for w in &weights {
        let a = random_density(rng, m);
        let b = random_density(rng, n);
        total = total.add(&a.kron(&b).scale_re(w / weight_sum));
    }
    BipartiteState::from_matrix(total, m, n, true, &Tolerance::default())
        .expect("convex sums of product states validate")
}

fn random_density(rng: &mut SplitMix64, n: usize) -> ComplexMatrix {
    let g = rng.gaussian_matrix(n, n);
    let gram = g.dagger().matmul(&g).hermitian_part();
    gram.scale_re(1.0 / gram.trace().re)
}

/// Random unitary built from a Hermitian matrix through the library's own
/// eigendecomposition: U = V diag(exp(i lambda_k)) V^dagger.
pub fn unitary_from_hermitian(rng: &mut SplitMix64, n: usize, tol: &Tolerance) -> ComplexMatrix {
    let h = random_hermitian(rng, n);
    let eig = sppt_core::hermitian_eigen(&h, tol).expect("random Hermitian decomposes");
    let phases: Vec<C64> = eig
        .values
        .iter()
        .map(|&l| C64::new(l.cos(), l.sin()))
        .collect();
    eig.vectors
        .matmul(&ComplexMatrix::diagonal(&phases))
        .matmul(&eig.vectors.dagger())
}
