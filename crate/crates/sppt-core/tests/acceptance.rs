//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its observed worst-case numbers. Criterion 9 (byte-identical CLI report
//! files) lives in the CLI crate's acceptance suite.

mod support;

use sppt_core::{
    canonical_factorize, derive_seed, hermitian_eigenvalues, is_sppt_state, realign,
    run_conjecture, sample_factor, trace_norm, unrealign, BipartiteState, C64, ComplexMatrix,
    Error, FamilySpec, HarnessConfig, SamplerKind, SplitMix64, StateChannel, Tolerance,
};

fn tol() -> Tolerance {
    Tolerance::default()
}

/// Numerical PPT and SPPT verdicts for a family instance;
/// NotRepresentable counts as not SPPT.
fn numeric_verdicts(spec: &FamilySpec) -> (bool, bool) {
    let state = spec.state(&tol()).expect("family state builds");
    let (class, _) = state.ppt_class(&tol()).expect("ppt classifies");
    let sppt = match is_sppt_state(&state, &tol()) {
        Ok(v) => v.is_sppt,
        Err(Error::NotRepresentable { .. }) => false,
        Err(e) => panic!("unexpected error for {}: {e}", spec.family_id()),
    };
    (class.as_bool(), sppt)
}

fn check_family_grid(name: &str, specs: Vec<FamilySpec>) {
    assert!(specs.len() >= 20, "{name}: grid has {} < 20 points", specs.len());
    let mut ppt_count = 0;
    let mut sppt_count = 0;
    for (k, spec) in specs.iter().enumerate() {
        let claim = spec.claims(&tol()).expect("closed-form claim exists");
        let (ppt, sppt) = numeric_verdicts(spec);
        assert_eq!(
            claim.claimed_ppt, ppt,
            "{name} point {k}: claimed ppt {} but numerics say {} ({})",
            claim.claimed_ppt, ppt, claim.source
        );
        assert_eq!(
            claim.claimed_sppt, sppt,
            "{name} point {k}: claimed sppt {} but numerics say {} ({})",
            claim.claimed_sppt, sppt, claim.source
        );
        ppt_count += usize::from(ppt);
        sppt_count += usize::from(sppt);
    }
    println!(
        "  {name}: {} points, {} ppt, {} sppt — all claims match",
        specs.len(),
        ppt_count,
        sppt_count
    );
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
        .collect()
}

fn hermitian_2x2(d1: f64, d2: f64, off: C64) -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![C64::new(d1, 0.0), off, off.conj(), C64::new(d2, 0.0)])
}

#[test]
fn criterion_1_family_iff_claims() {
    let start = std::time::Instant::now();

    let mut werner: Vec<FamilySpec> = linspace(0.0, 1.0, 21)
        .into_iter()
        .map(|p| FamilySpec::Werner { n: 2, p })
        .collect();
    werner.push(FamilySpec::Werner { n: 2, p: 1.0 / 3.0 });
    check_family_grid("werner 2x2", werner);

    let mut isotropic: Vec<FamilySpec> = Vec::new();
    for n in [2usize, 3] {
        isotropic.extend(linspace(0.0, 1.0, 11).into_iter().map(|p| FamilySpec::Isotropic { n, p }));
        isotropic.push(FamilySpec::Isotropic { n, p: 1.0 / (n as f64 + 1.0) });
    }
    check_family_grid("isotropic NxN", isotropic);

    let mut circulant = Vec::new();
    // Equal diagonals: every swapped matrix stays PSD, SPPT iff |x| = |y|.
    for x in [0.0, 0.3, 0.6, 0.9] {
        for y in [0.0, 0.3, 0.6, 0.9] {
            circulant.push(FamilySpec::Circulant2x2 {
                a: hermitian_2x2(1.0, 1.0, C64::new(x, 0.0)),
                b: hermitian_2x2(1.0, 1.0, C64::new(0.0, y)),
            });
        }
    }
    // Unequal diagonals reach the NPT region while inputs stay PSD.
    for y in [0.1, 0.3, 0.6, 0.9] {
        circulant.push(FamilySpec::Circulant2x2 {
            a: hermitian_2x2(0.25, 0.25, C64::new(0.1, 0.0)),
            b: hermitian_2x2(1.0, 1.0, C64::new(y, 0.0)),
        });
        circulant.push(FamilySpec::Circulant2x2 {
            a: hermitian_2x2(1.0, 1.0, C64::new(y, 0.0)),
            b: hermitian_2x2(0.25, 0.25, C64::new(0.1, 0.0)),
        });
    }
    // Complex phases on both off-diagonals.
    circulant.push(FamilySpec::Circulant2x2 {
        a: hermitian_2x2(1.0, 0.8, C64::new(0.3, 0.4)),
        b: hermitian_2x2(0.9, 1.1, C64::new(-0.4, 0.3)),
    });
    circulant.push(FamilySpec::Circulant2x2 {
        a: hermitian_2x2(1.0, 0.8, C64::new(0.3, 0.4)),
        b: hermitian_2x2(0.9, 1.1, C64::new(0.2, 0.0)),
    });
    check_family_grid("circulant 2x2", circulant);

    let mut orth = Vec::new();
    for b in [0.0, 0.1, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6] {
        for c in [0.0, 0.1, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6] {
            if b + c <= 1.0 {
                orth.push(FamilySpec::OrthogonallyInvariant { a: 1.0 - b - c, b, c });
            }
        }
    }
    check_family_grid("orthogonally invariant", orth);

    check_family_grid(
        "horodecki 2x4",
        linspace(0.0, 1.0, 21)
            .into_iter()
            .map(|b| FamilySpec::Horodecki2x4 { b })
            .collect(),
    );

    check_family_grid(
        "horodecki 3x3",
        linspace(0.0, 1.0, 21)
            .into_iter()
            .map(|a| FamilySpec::Horodecki3x3 { a })
            .collect(),
    );

    let mut diagonal = Vec::new();
    let mut rng = SplitMix64::new(0xd1a6);
    for round in 0..24 {
        let n = 3;
        let mut a = {
            let g = rng.gaussian_matrix(n, n);
            g.dagger().matmul(&g).hermitian_part()
        };
        if round % 4 == 0 {
            // Diagonal a: the SPPT-true stratum.
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        a.set(i, j, C64::new(0.0, 0.0));
                    }
                }
            }
        }
        let b: Vec<f64> = (0..n * (n - 1))
            .map(|_| match round % 3 {
                // Large symmetric-ish coefficients keep the state PPT,
                // small ones push it across the boundary.
                0 => 4.0 + rng.uniform(),
                1 => 0.01 + 0.02 * rng.uniform(),
                _ => 0.5 + 4.0 * rng.uniform(),
            })
            .collect();
        diagonal.push(FamilySpec::DiagonalClass { n, a, b });
    }
    check_family_grid("diagonal class 3x3", diagonal);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "criterion 1 took {elapsed:?}");
    println!("acceptance criterion 1 (family iff-claims): PASS in {elapsed:.2?}");
}

#[test]
fn criterion_2_sppt_implies_ppt_on_1000_samples() {
    let start = std::time::Instant::now();
    let dims = [(2usize, 2usize), (2, 4), (3, 3)];
    let mut worst_eig = f64::INFINITY;
    let mut worst_defect = 0.0f64;
    for i in 0..1000usize {
        let (m, n) = dims[i % 3];
        let kind = if i % 2 == 0 { SamplerKind::Commuting } else { SamplerKind::Hermitian };
        let factor = sample_factor(kind, m, n, derive_seed(2024, i as u64)).unwrap();
        let verdict = factor.sppt_verdict(&tol());
        let state = factor.assemble_state();
        let (_, min_eig) = state.is_ppt(&tol()).unwrap();
        let defect_bound = 1e-8 * (1.0 + state.matrix().max_abs());
        assert!(min_eig >= -1e-10, "sample {i}: min eig {min_eig:e}");
        assert!(
            verdict.max_defect <= defect_bound,
            "sample {i}: defect {:e} > {defect_bound:e}",
            verdict.max_defect
        );
        worst_eig = worst_eig.min(min_eig);
        worst_defect = worst_defect.max(verdict.max_defect);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "criterion 2 took {elapsed:?}");
    println!(
        "acceptance criterion 2 (SPPT => PPT, 1000 samples): PASS in {elapsed:.2?} — \
         min eigenvalue {worst_eig:.3e}, max defect {worst_defect:.3e}"
    );
}

#[test]
fn criterion_3_definition_condition_equivalence() {
    let start = std::time::Instant::now();
    let dims = [(2usize, 2usize), (2, 4), (3, 3)];
    let mut checked = 0usize;
    // The same 1000 sampled factors as criterion 2.
    for i in 0..1000usize {
        let (m, n) = dims[i % 3];
        let kind = if i % 2 == 0 { SamplerKind::Commuting } else { SamplerKind::Hermitian };
        let factor = sample_factor(kind, m, n, derive_seed(2024, i as u64)).unwrap();
        let verdict = factor.sppt_verdict(&tol());
        assert_eq!(
            verdict.is_sppt,
            verdict.conditions_satisfied(),
            "sampled factor {i}: defect {:e} vs conditions {:e}",
            verdict.max_defect,
            verdict.conditions_max()
        );
        checked += 1;
    }
    // Plus 500 generic (generically non-SPPT) factors.
    for i in 0..500usize {
        let (m, n) = dims[i % 3];
        let factor =
            sample_factor(SamplerKind::Generic, m, n, derive_seed(77_077, i as u64)).unwrap();
        let verdict = factor.sppt_verdict(&tol());
        assert_eq!(
            verdict.is_sppt,
            verdict.conditions_satisfied(),
            "generic factor {i}: defect {:e} vs conditions {:e}",
            verdict.max_defect,
            verdict.conditions_max()
        );
        checked += 1;
    }
    let elapsed = start.elapsed();
    println!(
        "acceptance criterion 3 (Y-dagger-Y verdict == algebraic conditions): PASS in \
         {elapsed:.2?} — {checked} factors agree"
    );
}

#[test]
fn criterion_4_conjecture_evidence_3x3() {
    let start = std::time::Instant::now();
    let cfg = HarnessConfig {
        dim_a: 3,
        dim_b: 3,
        count: 1000,
        sampler: SamplerKind::Commuting,
        master_seed: 33,
        tolerance: tol(),
    };
    let report = run_conjecture(&cfg).unwrap();
    assert_eq!(report.aggregate.violations, 0, "found violating samples");
    for record in &report.samples {
        assert!(
            record.realignment_value <= 1.0 + 1e-8,
            "sample {}: realignment {}",
            record.index,
            record.realignment_value
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "criterion 4 took {elapsed:?}");
    println!(
        "acceptance criterion 4 (1000 SPPT 3x3 samples, realignment <= 1 + 1e-8): PASS in \
         {elapsed:.2?} — max realignment {:.9}, zero violations",
        report.aggregate.max_realignment
    );
}

#[test]
fn criterion_5_hermitian_family_pt_identity() {
    let start = std::time::Instant::now();
    let dims = [(2usize, 2usize), (2, 4), (3, 3)];
    let mut worst = 0.0f64;
    for i in 0..200usize {
        let (m, n) = dims[i % 3];
        let factor =
            sample_factor(SamplerKind::Hermitian, m, n, derive_seed(555, i as u64)).unwrap();
        let rho = factor.assemble_state();
        let defect = rho.partial_transpose_a().max_abs_diff(rho.matrix());
        assert!(defect <= 1e-10, "sample {i}: {defect:e}");
        worst = worst.max(defect);
    }
    let elapsed = start.elapsed();
    println!(
        "acceptance criterion 5 (hermitian family: partial transpose fixes the state): PASS in \
         {elapsed:.2?} — max deviation {worst:.3e}"
    );
}

#[test]
fn criterion_6_canonical_factorization_round_trip() {
    let start = std::time::Instant::now();
    let dims = [(2usize, 2usize), (2, 4), (3, 3)];
    let kinds = [
        SamplerKind::Commuting,
        SamplerKind::Hermitian,
        SamplerKind::Generic,
    ];
    let mut worst = 0.0f64;
    // 200 states assembled from random factors.
    for i in 0..200usize {
        let (m, n) = dims[i % 3];
        let factor = sample_factor(kinds[i % kinds.len()], m, n, derive_seed(66, i as u64)).unwrap();
        let rho = factor.assemble_state();
        let rebuilt = canonical_factorize(&rho, &tol()).unwrap().assemble_state();
        let relative = rebuilt.matrix().max_abs_diff(rho.matrix()) / rho.matrix().max_abs();
        assert!(relative <= 1e-8, "factor state {i}: relative residual {relative:e}");
        worst = worst.max(relative);
    }
    // 200 raw random Gram states.
    let mut rng = SplitMix64::new(0x96a);
    for i in 0..200usize {
        let (m, n) = dims[i % 3];
        let state = support::random_gram_state(&mut rng, m, n);
        let rebuilt = canonical_factorize(&state, &tol()).unwrap().assemble_state();
        let relative = rebuilt.matrix().max_abs_diff(state.matrix()) / state.matrix().max_abs();
        assert!(relative <= 1e-8, "gram state {i}: relative residual {relative:e}");
        worst = worst.max(relative);
    }
    let elapsed = start.elapsed();
    println!(
        "acceptance criterion 6 (canonical factorization round trip, 400 states): PASS in \
         {elapsed:.2?} — max relative residual {worst:.3e}"
    );
}

#[test]
fn criterion_7_choi_state_duality() {
    let start = std::time::Instant::now();
    let dims = [(2usize, 2usize), (2, 3), (3, 3)];
    let mut rng = SplitMix64::new(0xc401);
    let mut worst = 0.0f64;
    for i in 0..200usize {
        let (m, n) = dims[i % 3];
        let state = support::random_gram_state(&mut rng, m, n);
        let choi = StateChannel::new(state.clone()).choi(&tol()).unwrap();
        let diff = choi.matrix().scale_re(m as f64).max_abs_diff(state.matrix());
        assert!(diff <= 1e-12, "state {i}: duality defect {diff:e}");
        worst = worst.max(diff);
    }

    // The channel of the 2x2 maximally entangled state is certified not
    // entanglement breaking, with Choi realignment 2.
    let entangled = BipartiteState::from_matrix(
        sppt_core::bipartite::maximally_entangled_projector(2),
        2,
        2,
        false,
        &tol(),
    )
    .unwrap();
    let report = StateChannel::new(entangled).eb_report(&tol()).unwrap();
    assert!(report.eb_certified_false);
    assert!(
        (report.choi_realignment - 2.0).abs() <= 1e-8,
        "choi realignment {}",
        report.choi_realignment
    );

    let elapsed = start.elapsed();
    println!(
        "acceptance criterion 7 (Choi-state duality + certified-not-EB witness): PASS in \
         {elapsed:.2?} — max duality defect {worst:.3e}, witness realignment {:.9}",
        report.choi_realignment
    );
}

#[test]
fn criterion_8_kernel_oracles() {
    let start = std::time::Instant::now();

    // Eigenvalues against the tridiagonal Sturm-bisection oracle.
    let mut rng = SplitMix64::new(0x0c1e);
    let mut worst_eig = 0.0f64;
    for i in 0..100usize {
        let n = 2 + i % 7; // up to 8x8
        let h = support::random_hermitian(&mut rng, n);
        let ours = hermitian_eigenvalues(&h, &tol()).unwrap();
        let oracle = support::hermitian_eigenvalues_oracle(&h);
        for (a, b) in ours.iter().zip(&oracle) {
            let diff = (a - b).abs();
            assert!(diff <= 1e-8, "case {i}: {a} vs oracle {b}");
            worst_eig = worst_eig.max(diff);
        }
    }

    // Trace norm unitary invariance.
    let mut worst_tn = 0.0f64;
    for i in 0..50usize {
        let a = rng.gaussian_matrix(4, 4);
        let u = support::unitary_from_hermitian(&mut rng, 4, &tol());
        let v = support::unitary_from_hermitian(&mut rng, 4, &tol());
        let lhs = trace_norm(&u.matmul(&a).matmul(&v)).unwrap();
        let rhs = trace_norm(&a).unwrap();
        let diff = (lhs - rhs).abs();
        assert!(diff <= 1e-8, "case {i}: {lhs} vs {rhs}");
        worst_tn = worst_tn.max(diff);
    }

    // Realign round trip is exact (bitwise) on arbitrary matrices.
    for i in 0..50usize {
        let (m, n) = [(2usize, 2usize), (2, 4), (3, 3)][i % 3];
        let x = rng.gaussian_matrix(m * n, m * n);
        let back = unrealign(&realign(&x, m, n), m, n);
        assert_eq!(back, x, "case {i}: realign round trip not exact");
    }

    let elapsed = start.elapsed();
    println!(
        "acceptance criterion 8 (kernel oracles): PASS in {elapsed:.2?} — \
         max eigenvalue deviation {worst_eig:.3e}, max trace-norm deviation {worst_tn:.3e}, \
         realign round trip exact"
    );
}
