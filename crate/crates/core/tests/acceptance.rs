//! Acceptance suite: the release-gating checks, one test per criterion, each
//! printing a PASS/FAIL line with the measured numbers (run with
//! `--nocapture` to see them all).
//!
//! Oracles are independent of the paths they check: exhaustive enumeration
//! against DP counts, test-local DP tables against library counting, golden
//! section plus derivative bisection against the closed-form saddle point.

use std::time::Instant;

use gentile_core::asymptotics::{
    frac_rescaling_factor, log_gamma_fin, log_gamma_frac, log_gamma_frac_paper_literal,
    log_hardy_ramanujan, log_microstates, saddle_objective, saddle_point, SpectrumModel,
};
use gentile_core::equivalence::{
    map_m_grand, map_m_micro, map_m_power, validate_equivalence, Route, ValidationOptions,
};
use gentile_core::partition::{
    count_max_multiplicity, count_max_parts, count_power, count_unrestricted,
    count_unrestricted_pentagonal, enumerate_partitions, PartitionConstraint,
};
use gentile_core::thermo::{
    canonical_energy, energy_delta_finite, occupation, GentileGas, MaxOccupation,
};

const PI: f64 = std::f64::consts::PI;

fn verdict(id: &str, pass: bool, detail: &str) -> bool {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[acceptance] {tag} {id}: {detail}");
    pass
}

fn harmonic() -> SpectrumModel<f64> {
    SpectrumModel::harmonic()
}

// ---------------------------------------------------------------------------
// 1. exact counts vs exhaustive enumeration
// ---------------------------------------------------------------------------

#[test]
fn criterion_01_exact_counts_match_enumeration() {
    let start = Instant::now();
    let mut checked = 0u64;
    let mut restrictions: Vec<(Option<u64>, Option<u64>)> = Vec::new();
    for np in std::iter::once(None).chain((1..=12).map(Some)) {
        for mm in std::iter::once(None).chain((1..=12).map(Some)) {
            restrictions.push((np, mm));
        }
    }
    for n in 0..=30u64 {
        for &(np, mm) in &restrictions {
            for s in 1..=3u32 {
                let mut c = PartitionConstraint::new(n).power(s);
                if let Some(p) = np {
                    c = c.max_parts(p);
                }
                if let Some(m) = mm {
                    c = c.max_multiplicity(m);
                }
                let listed = enumerate_partitions(&c).unwrap().len() as u64;
                let counted = count_power(n, s, np, mm);
                assert_eq!(
                    counted.exact,
                    listed.into(),
                    "count mismatch at n={n} N={np:?} M={mm:?} s={s}"
                );
                // single-restriction entry points agree with the general one
                match (np, mm, s) {
                    (None, None, 1) => {
                        assert_eq!(count_unrestricted(n).exact, listed.into())
                    }
                    (Some(p), None, 1) => {
                        assert_eq!(count_max_parts(n, p).exact, listed.into())
                    }
                    (None, Some(m), 1) => {
                        assert_eq!(count_max_multiplicity(n, m).exact, listed.into())
                    }
                    _ => {}
                }
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = elapsed < 60.0;
    assert!(
        verdict(
            "criterion-01",
            pass,
            &format!(
                "{checked} (n, N, M, s) points vs enumeration in {elapsed:.1} s (budget 60 s)"
            )
        ),
        "exact-count oracle suite exceeded its runtime budget"
    );
}

// ---------------------------------------------------------------------------
// 2. structural identities + two independent routes to p(100)
// ---------------------------------------------------------------------------

/// Test-local DP: partitions of n with every part value ≤ k (u64 range is
/// ample for n ≤ 100).
fn largest_part_at_most(n: usize, k: usize) -> u64 {
    let mut dp = vec![0u64; n + 1];
    dp[0] = 1;
    for v in 1..=k.min(n.max(1)) {
        for j in v..=n {
            dp[j] += dp[j - v];
        }
    }
    dp[n]
}

/// Test-local DP: partitions of n with no part divisible by d.
fn no_part_divisible_by(n: usize, d: usize) -> u64 {
    let mut dp = vec![0u64; n + 1];
    dp[0] = 1;
    for v in (1..=n.max(1)).filter(|v| v % d != 0) {
        for j in v..=n {
            dp[j] += dp[j - v];
        }
    }
    dp[n]
}

#[test]
fn criterion_02_conjugation_glaisher_and_p100() {
    for n in 0..=60u64 {
        for k in 1..=n.max(1) {
            assert_eq!(
                count_max_parts(n, k).exact,
                largest_part_at_most(n as usize, k as usize).into(),
                "conjugation failed at n={n}, N={k}"
            );
        }
        for m in 1..=10u64 {
            assert_eq!(
                count_max_multiplicity(n, m).exact,
                no_part_divisible_by(n as usize, m as usize + 1).into(),
                "Glaisher failed at n={n}, M={m}"
            );
        }
    }
    let dense = count_unrestricted(100).exact;
    let pentagonal = count_unrestricted_pentagonal(100).exact;
    assert_eq!(dense, 190_569_292u64.into());
    assert_eq!(pentagonal, 190_569_292u64.into());
    assert_eq!(largest_part_at_most(100, 100), 190_569_292);
    verdict(
        "criterion-02",
        true,
        "conjugation and Glaisher exact for n <= 60; p(100) = 190569292 on two independent routes",
    );
}

// ---------------------------------------------------------------------------
// 3. Hardy–Ramanujan ratio window and monotone approach
// ---------------------------------------------------------------------------

#[test]
fn criterion_03_hardy_ramanujan_ratio() {
    let start = Instant::now();
    let mut ratios = Vec::new();
    for &n in &[100u64, 400, 900, 1600] {
        let estimate = log_hardy_ramanujan(n as f64).unwrap();
        let exact = count_unrestricted(n).log_value;
        ratios.push((estimate - exact).exp());
    }
    let elapsed = start.elapsed().as_secs_f64();
    let window = (1.02..=1.07).contains(&ratios[0]);
    let monotone = ratios.windows(2).all(|w| w[1] < w[0]) && ratios[3] > 1.0;
    let pass = window && monotone && elapsed < 10.0;
    assert!(
        verdict(
            "criterion-03",
            pass,
            &format!(
                "estimate/exact = {:.4}, {:.4}, {:.4}, {:.4} (window [1.02, 1.07], decreasing; {elapsed:.1} s of 10 s)",
                ratios[0], ratios[1], ratios[2], ratios[3]
            )
        ),
        "Hardy–Ramanujan ratio criterion failed"
    );
}

// ---------------------------------------------------------------------------
// 4. bounded-parts asymptotic vs exact count at n = 400, N = 20
// ---------------------------------------------------------------------------

#[test]
fn criterion_04_bounded_parts_formula_vs_exact() {
    let formula = log_gamma_fin(400.0, 20.0, &harmonic()).unwrap();
    let exact = count_max_parts(400, 20).log_value;
    let rel = (formula - exact).abs() / exact;
    let pass = rel < 0.05;
    verdict(
        "criterion-04",
        pass,
        &format!(
            "|log-formula - ln exact|/ln exact = {rel:.4} at (n=400, N=20); bound 0.05 \
             [formula {formula:.4}, exact {exact:.4}]"
        ),
    );
    assert!(
        pass,
        "the double-exponential bounded-parts asymptotic misses the exact count by {:.2}% at \
         (400, 20); N = √n sits below the formula's validity window N ≳ (√6/2π)√n ln n ≈ 47, \
         where the measured gap is irreducible",
        rel * 100.0
    );
}

// ---------------------------------------------------------------------------
// 5. bounded-multiplicity asymptotics at M = 1 vs distinct-partition counts
// ---------------------------------------------------------------------------

#[test]
fn criterion_05_distinct_partition_exponent() {
    // Empirical leading exponent: fit ln q(n) = a + b ln n + c √n through the
    // exact distinct-partition counts and read off c.
    let points = [400u64, 625, 900];
    let y: Vec<f64> = points
        .iter()
        .map(|&n| count_max_multiplicity(n, 1).log_value)
        .collect();
    let ln_n: Vec<f64> = points.iter().map(|&n| (n as f64).ln()).collect();
    let sq_n: Vec<f64> = points.iter().map(|&n| (n as f64).sqrt()).collect();
    // Solve the 3×3 Vandermonde-like system by elimination.
    let c = {
        let d1 = (ln_n[1] - ln_n[0], sq_n[1] - sq_n[0], y[1] - y[0]);
        let d2 = (ln_n[2] - ln_n[1], sq_n[2] - sq_n[1], y[2] - y[1]);
        (d2.2 * d1.0 - d1.2 * d2.0) / (d2.1 * d1.0 - d1.1 * d2.0)
    };
    let model = harmonic();
    // The general-factor formula's leading exponent coefficient at M = 1.
    let coeff_general = model.lambda_s() * 2.0 * frac_rescaling_factor(1.0, &model);
    // The literal misprinted factor collapses to zero at M = 1.
    let g_lit = 1.0f64 - 1.0 / 1.0f64.sqrt();
    let coeff_literal = model.lambda_s() * 2.0 * g_lit.sqrt();

    let target = PI / 3.0f64.sqrt(); // exponent of e^{π√(n/3)} per √n
    let ln_exact_900 = count_max_multiplicity(900, 1).log_value;
    let tolerance = 0.02 * ln_exact_900;

    let exact_vs_target = (c * 30.0 - target * 30.0).abs();
    let general_ok = (coeff_general - target).abs() < 1e-12 && exact_vs_target < tolerance;
    let literal_fails = (coeff_literal * 30.0 - target * 30.0).abs() >= tolerance;
    let literal_log = log_gamma_frac_paper_literal(900.0, 1.0, &model).unwrap();
    let pass = general_ok && literal_fails && literal_log == f64::NEG_INFINITY;
    assert!(
        verdict(
            "criterion-05",
            pass,
            &format!(
                "fitted exponent {c:.6}·√n vs π/√3 = {target:.6} (gap {exact_vs_target:.4} at n=900, \
                 allowance {tolerance:.4}); literal factor gives coefficient {coeff_literal:.1} and \
                 ln Γ_frac = -inf at M=1 (documented misprint)"
            )
        ),
        "distinct-partition exponent criterion failed"
    );
}

// ---------------------------------------------------------------------------
// 6. occupation function: Fermi reduction, bracketing, degenerate limit
// ---------------------------------------------------------------------------

#[test]
fn criterion_06_occupation_function() {
    let mut worst: f64 = 0.0;
    let mut x = -12.0f64;
    while x <= 12.0 {
        if x.abs() > 1e-9 {
            let f = occupation(x, 0.0, 1.0, MaxOccupation::Bounded(1)).unwrap();
            worst = worst.max((f - 1.0 / (x.exp() + 1.0)).abs());
        }
        x += 0.013;
    }
    let fermi_ok = worst <= 1e-12;

    let mut bracket_ok = true;
    let mut x = -5.0f64;
    while x <= 5.0 {
        let mut prev = -1.0f64;
        for m in 1..=12u64 {
            let f = occupation(x, 0.0, 1.0, MaxOccupation::Bounded(m)).unwrap();
            bracket_ok &= f >= prev - 1e-13 && f <= m as f64 + 1e-12 && f >= -1e-14;
            prev = f;
        }
        x += 0.37;
    }

    let mut limit_ok = true;
    for m in [1u64, 4, 7, 50] {
        let f = occupation(2.0, 2.0, 3.0, MaxOccupation::Bounded(m)).unwrap();
        limit_ok &= f == m as f64 / 2.0;
    }

    let pass = fermi_ok && bracket_ok && limit_ok;
    assert!(
        verdict(
            "criterion-06",
            pass,
            &format!(
                "Fermi reduction worst error {worst:.2e} (bound 1e-12); monotone in M and 0 <= f <= M \
                 on the grid; f = M/2 exactly at eps = mu"
            )
        ),
        "occupation-function criterion failed"
    );
}

// ---------------------------------------------------------------------------
// 7. equation of state across the three ensembles at T = 10
// ---------------------------------------------------------------------------

#[test]
fn criterion_07_equation_of_state_consistency() {
    let t = 10.0f64;
    let model = harmonic();
    // microcanonical: E(T) from the leading-order law T = √(6E)/π
    let e_micro = (model.lambda_s() * t).powi(2);
    let e_canonical = canonical_energy(500, t).unwrap();
    let e_grand = GentileGas::bose(model)
        .solve_fugacity(500.0, t)
        .unwrap()
        .energy;
    let rel = |a: f64, b: f64| (a - b).abs() / a.max(b);
    let mc = rel(e_micro, e_canonical);
    let mg = rel(e_micro, e_grand);
    let cg = rel(e_canonical, e_grand);
    let pass = mc < 0.02 && mg < 0.02 && cg < 0.02;
    verdict(
        "criterion-07",
        pass,
        &format!(
            "E_micro = {e_micro:.3}, E_canonical(500) = {e_canonical:.3}, E_grand = {e_grand:.3}; \
             pairwise rel diffs {mc:.4}/{mg:.4}/{cg:.4} vs bound 0.02"
        ),
    );
    if !pass {
        // context: in temperature space the same data sit within 2%
        let t_can = e_canonical.sqrt() / model.lambda_s();
        let t_grand = e_grand.sqrt() / model.lambda_s();
        println!(
            "[acceptance]      note: equation-of-state temperatures T(E_can) = {t_can:.3}, \
             T(E_grand) = {t_grand:.3} vs T = 10 (within 2%); the energy gap is the level-ladder \
             discreteness term -T/2 + 1/24 missing from the leading-order law"
        );
    }
    assert!(
        pass,
        "ensemble energies at T = 10 differ by {:.2}%/{:.2}% against the leading-order \
         microcanonical law; the exact canonical/grand sums carry the -T/2 Euler–Maclaurin \
         correction (3.0% of E at T = 10), so the 2% bound cannot be met at this temperature",
        mc * 100.0,
        mg * 100.0
    );
}

// ---------------------------------------------------------------------------
// 8. finite-N canonical correction ratio stabilizes
// ---------------------------------------------------------------------------

#[test]
fn criterion_08_finite_size_correction_ratio() {
    let t = 10.0f64;
    let mut ratios = Vec::new();
    for &n in &[40u64, 60, 80] {
        let delta = energy_delta_finite(n, t).unwrap().abs();
        let reference = n as f64 * (-(n as f64) / t).exp() / (1.0f64 / t).exp_m1();
        ratios.push(delta / reference);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let spread = (ratios.iter().cloned().fold(f64::MIN, f64::max)
        - ratios.iter().cloned().fold(f64::MAX, f64::min))
        / mean;
    let pass = spread < 0.20;
    assert!(
        verdict(
            "criterion-08",
            pass,
            &format!(
                "(E_N - E_inf)/(N e^(-N/T)/(e^(1/T)-1)) = {:.4}, {:.4}, {:.4}; spread {spread:.3} vs 0.20",
                ratios[0], ratios[1], ratios[2]
            )
        ),
        "finite-size correction ratio criterion failed"
    );
}

// ---------------------------------------------------------------------------
// 9. bounded-occupation corrections scale as 1/M
// ---------------------------------------------------------------------------

#[test]
fn criterion_09_gentile_corrections_scale() {
    let t = 10.0f64;
    let n_target = 50.0f64;
    let model = harmonic();
    let bose = GentileGas::bose(model).solve_fugacity(n_target, t).unwrap();
    let mut m_de = Vec::new();
    let mut m_dz = Vec::new();
    for &m in &[20u64, 40, 80, 160] {
        let gas = GentileGas::new(MaxOccupation::Bounded(m), model);
        let state = gas.solve_fugacity(n_target, t).unwrap();
        m_de.push(m as f64 * (state.energy - bose.energy));
        m_dz.push(m as f64 * (state.fugacity - bose.fugacity));
    }
    let spread = |v: &[f64]| {
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        (v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min))
            / mean
    };
    let de_spread = spread(&m_de);
    let dz_spread = spread(&m_dz);
    let pass = de_spread < 0.25 && dz_spread < 0.25;
    verdict(
        "criterion-09",
        pass,
        &format!(
            "M·dE = {m_de:.1?} (spread {de_spread:.2}), M·dz = {m_dz:.3?} (spread {dz_spread:.2}) \
             at N=50, T=10 vs bound 0.25"
        ),
    );
    if !pass {
        // context: the 1/M window needs a deep condensate (M well below the
        // ground-level occupancy); at N = 2000 the energy product is flat.
        let bose2 = GentileGas::bose(model).solve_fugacity(2000.0, t).unwrap();
        let mut flat = Vec::new();
        for &m in &[10u64, 20, 40] {
            let gas = GentileGas::new(MaxOccupation::Bounded(m), model);
            let state = gas.solve_fugacity(2000.0, t).unwrap();
            flat.push(m as f64 * (state.energy - bose2.energy));
        }
        println!(
            "[acceptance]      note: at N = 2000, T = 10 (condensed regime) M·dE = {flat:.0?}, \
             spread {:.3} — the 1/M law holds there; N = 50 has ground occupancy ≈ 26, so \
             M ∈ [20, 160] straddles the crossover and decays exponentially instead",
            spread(&flat)
        );
    }
    assert!(
        pass,
        "M·dE spans {m_de:.1?} at N = 50 (spread {:.0}%); the 1/M scaling regime requires \
         M ≪ N₀ ≈ 26, which the specified sweep M ∈ [20, 160] leaves immediately",
        de_spread * 100.0
    );
}

// ---------------------------------------------------------------------------
// 10. the equivalence map: exact residual, micro/grand identity, leading log
// ---------------------------------------------------------------------------

#[test]
fn criterion_10_equivalence_mapping() {
    // (a) exact route at n = 400, N = 20, s = 1
    let report =
        validate_equivalence(400, 20, 1, Route::Exact, &ValidationOptions::default()).unwrap();
    let exact = report.exact.unwrap();
    let part_a = exact.relative_residual < 0.05;
    verdict(
        "criterion-10a",
        part_a,
        &format!(
            "exact-route relative residual {:.4} at (400, 20, 1) vs bound 0.05 \
             [S_fin {:.3}, S_frac {:.3} at M = {}, best M in scan = {:?}]",
            exact.relative_residual,
            exact.s_fin,
            exact.s_frac,
            report.m_rounded,
            report.best_m_exact
        ),
    );

    // (b) micro/grand identity ln M_grand + ln N = ln M_micro, exact
    let mut part_b = true;
    for &(n, particles) in &[(100.0f64, 20.0f64), (400.0, 20.0), (1234.0, 77.0)] {
        let t = (6.0 * n).sqrt() / PI;
        let micro = map_m_micro(n, particles).unwrap().ln();
        let grand = map_m_grand(particles, t).unwrap().ln();
        part_b &= (grand + particles.ln() - micro).abs() <= 1e-12 * micro.abs().max(1.0);
    }
    verdict(
        "criterion-10b",
        part_b,
        "ln M_grand + ln N = ln M_micro to 1e-12 with T(n) from the equation of state",
    );

    // (c) s = 2 leading log at n = 1000, N = 10
    let model2 = SpectrumModel::new(2.0f64).unwrap();
    let mapped = map_m_power(1000.0, 10.0, &model2).unwrap();
    let t = 1000.0f64.powf(2.0 / 3.0) / model2.lambda_s();
    let leading = 2.0 * 100.0 / t;
    let rel_c = ((mapped.ln() - leading) / leading).abs();
    let part_c = rel_c < 0.30;
    verdict(
        "criterion-10c",
        part_c,
        &format!(
            "ln M = {:.6} vs leading log sN^s/T = {leading:.6} (rel {rel_c:.2e}, bound 0.30)",
            mapped.ln()
        ),
    );

    assert!(part_b && part_c, "equivalence identities failed");
    assert!(
        part_a,
        "exact-route residual {:.2}% exceeds 5% at (400, 20, 1): the map preserves only the \
         leading exponents, and at N = √n the dropped prefactors shift the best M from the \
         mapped 4 down to {:?}",
        exact.relative_residual * 100.0,
        report.best_m_exact
    );
}

// ---------------------------------------------------------------------------
// 11. saddle-point machinery
// ---------------------------------------------------------------------------

/// Locate the minimizer of the saddle objective without the closed form:
/// golden-section narrowing followed by bisection on the centered-difference
/// derivative sign.
fn minimize_objective(energy: f64, model: &SpectrumModel<f64>) -> f64 {
    let f = |beta: f64| saddle_objective(beta, energy, model);
    let (mut a, mut b) = (1e-6f64, 1e3f64);
    let phi = 0.618_033_988_749_894_8f64;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..60 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    // polish: the objective is strictly convex, so the centered-difference
    // derivative has a single sign change
    let slope = |beta: f64| {
        let h = beta * 1e-6;
        (f(beta + h) - f(beta - h)) / (2.0 * h)
    };
    let (mut lo, mut hi) = (a / 2.0, b * 2.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if slope(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn criterion_11_saddle_point_machinery() {
    let mut worst_rel: f64 = 0.0;
    for &s in &[0.5f64, 1.0, 2.0, 3.0] {
        let model = SpectrumModel::new(s).unwrap();
        for &e in &[100.0f64, 500.0] {
            let closed = saddle_point(e, &model).unwrap().beta0;
            let numeric = minimize_objective(e, &model);
            worst_rel = worst_rel.max(((closed - numeric) / closed).abs());
        }
    }
    let beta_ok = worst_rel < 1e-8;

    let mut worst_gap: f64 = 0.0;
    let model = harmonic();
    for &e in &[50.0f64, 100.0, 500.0] {
        let gap = (log_microstates(e, &model).unwrap() - log_hardy_ramanujan(e).unwrap()).abs();
        worst_gap = worst_gap.max(gap);
    }
    let reduction_ok = worst_gap < 1e-9;

    let pass = beta_ok && reduction_ok;
    assert!(
        verdict(
            "criterion-11",
            pass,
            &format!(
                "β₀ closed form vs numerical minimizer: worst rel {worst_rel:.2e} (bound 1e-8); \
                 s=1 saddle Γ(E) vs two-term form: worst log gap {worst_gap:.2e} (bound 1e-9)"
            )
        ),
        "saddle-point machinery criterion failed"
    );
}

// ---------------------------------------------------------------------------
// oracle-convergence sweeps (module invariants backing criteria 3–5)
// ---------------------------------------------------------------------------

#[test]
fn asymptotic_relative_error_decreases_along_the_sweep() {
    let model = harmonic();
    let ns = [100u64, 225, 400, 625, 900];

    let mut prev = f64::INFINITY;
    for &n in &ns {
        let exact = count_unrestricted(n).log_value;
        let rel = (log_hardy_ramanujan(n as f64).unwrap() - exact).abs() / exact;
        assert!(rel < prev, "unrestricted error not decreasing at n={n}");
        prev = rel;
    }

    let mut prev = f64::INFINITY;
    for &n in &ns {
        let particles = (n as f64).sqrt().ceil();
        let exact = count_max_parts(n, particles as u64).log_value;
        let rel = (log_gamma_fin(n as f64, particles, &model).unwrap() - exact).abs() / exact;
        assert!(rel < prev, "bounded-parts error not decreasing at n={n}");
        prev = rel;
    }

    for &m in &[1u64, 2, 4] {
        let mut prev = f64::INFINITY;
        for &n in &ns {
            let exact = count_max_multiplicity(n, m).log_value;
            let rel = (log_gamma_frac(n as f64, m as f64, &model).unwrap() - exact).abs() / exact;
            assert!(
                rel < prev,
                "bounded-multiplicity error not decreasing at n={n}, M={m}"
            );
            prev = rel;
        }
    }
}
