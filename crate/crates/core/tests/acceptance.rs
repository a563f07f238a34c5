//! Acceptance criteria. Each test prints one PASS/FAIL line and then
//! asserts it. Run with `cargo test -p forecastability --test acceptance -- --nocapture`.

use forecastability::analytic::{seasonal_ar_profile, DEFAULT_BURN_IN};
use forecastability::{
    ar1_profile, decompose_loss, estimate_profile, fano_bound, finite_window_budget,
    gaussian_profile_from_acf, ksg_mutual_information, permutation_test, pinsker_bound, simulate,
    EstimatorConfig, GaussianProcessSpec, InformationSetSpec, Points, ProbeEvaluation, TimeSeries,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn report(id: u32, title: &str, checks: &[(String, bool)]) {
    let pass = checks.iter().all(|(_, ok)| *ok);
    println!(
        "[{}] criterion {id}: {title}",
        if pass { "PASS" } else { "FAIL" }
    );
    for (detail, ok) in checks {
        println!("       {} {detail}", if *ok { "ok  " } else { "FAIL" });
    }
    assert!(pass, "criterion {id} failed");
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    (value - target).abs() <= tol
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn ar1(phi: f64, n: usize, seed: u64) -> TimeSeries {
    simulate(
        &GaussianProcessSpec::ar1(phi).unwrap(),
        n,
        seed,
        DEFAULT_BURN_IN,
    )
    .unwrap()
}

/// Sample autocorrelations at lags `1..=max_lag`.
fn sample_acf(values: &[f64], max_lag: usize) -> Vec<f64> {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let centred: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let c0: f64 = centred.iter().map(|v| v * v).sum();
    (1..=max_lag)
        .map(|h| {
            centred[..n - h]
                .iter()
                .zip(&centred[h..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / c0
        })
        .collect()
}

#[test]
fn criterion_01_ar1_closed_form() {
    let p = ar1_profile(0.3, &[1, 2]).unwrap().dense_values();
    report(
        1,
        "AR(1) phi=0.3 closed form",
        &[
            (
                format!("F(1) = {:.7} vs 0.047215 +/- 1e-6", p[0]),
                within(p[0], 0.047215, 1e-6),
            ),
            (format!("F(2) = {:.7} < 0.005", p[1]), p[1] < 0.005),
        ],
    );
}

#[test]
fn criterion_02_seasonal_profile() {
    let horizons: Vec<usize> = (1..=36).collect();
    let f = seasonal_ar_profile(0.5, 0.8, 12, 1, &horizons)
        .unwrap()
        .dense_values();
    let at = |h: usize| f[h - 1];
    let (min_h, min_v) = (5..=9)
        .map(|h| (h, at(h)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();

    // independent oracle: sample ACF of a 10^7-observation simulation
    let spec = GaussianProcessSpec::seasonal_ar(0.5, 0.8, 12).unwrap();
    let long = simulate(&spec, 10_000_000, 2024, DEFAULT_BURN_IN).unwrap();
    let rho = sample_acf(long.values(), 36);
    let oracle: Vec<f64> = rho.iter().map(|r| -0.5 * (1.0 - r * r).ln()).collect();
    let worst = f
        .iter()
        .zip(&oracle)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    report(
        2,
        "seasonal AR(1)x(1)_12 profile, p=1",
        &[
            (
                format!("F(1) = {:.4} vs 0.14 +/- 0.02", at(1)),
                within(at(1), 0.14, 0.02),
            ),
            (
                format!("min over h in 5..=9 is F({min_h}) = {min_v:.5} <= 0.005"),
                min_v <= 0.005,
            ),
            (
                format!("F(12) = {:.4} vs 0.49 +/- 0.02", at(12)),
                within(at(12), 0.49, 0.02),
            ),
            (
                format!("F(24) = {:.4} vs 0.25 +/- 0.02", at(24)),
                within(at(24), 0.25, 0.02),
            ),
            (
                format!("F(36) = {:.4} vs 0.13 +/- 0.02", at(36)),
                within(at(36), 0.13, 0.02),
            ),
            (
                format!(
                    "max |F - F_sim| over h=1..36 = {worst:.5} <= 0.01 (1e7-sample ACF oracle)"
                ),
                worst <= 0.01,
            ),
        ],
    );
}

fn bivariate(n: usize, rho: f64, seed: u64) -> (Points, Points) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let a: f64 = rng.sample(StandardNormal);
        let b: f64 = rng.sample(StandardNormal);
        xs.push(a);
        ys.push(rho * a + (1.0 - rho * rho).sqrt() * b);
    }
    (Points::scalar(xs), Points::scalar(ys))
}

#[test]
fn criterion_03_ksg_accuracy() {
    let checks: Vec<(String, bool)> = [0.3, 0.6, 0.9]
        .iter()
        .map(|&rho| {
            let truth = -0.5 * (1.0f64 - rho * rho).ln();
            let errors: Vec<f64> = (0..20)
                .map(|seed| {
                    let (x, y) = bivariate(2000, rho, 1000 + seed);
                    (ksg_mutual_information(&x, &y, 5).unwrap() - truth).abs()
                })
                .collect();
            let m = median(errors);
            (
                format!("rho={rho}: median |I - I_true| = {m:.4} <= 0.03"),
                m <= 0.03,
            )
        })
        .collect();
    report(
        3,
        "KSG accuracy on bivariate Gaussians (N=2000, k=5, 20 seeds)",
        &checks,
    );
}

#[test]
fn criterion_04_end_to_end_ar1() {
    let spec = InformationSetSpec::contiguous(1, 5).unwrap();
    let truth = ar1_profile(0.95, spec.horizons()).unwrap().dense_values();
    let config = EstimatorConfig::default();
    let runs: Vec<Vec<f64>> = (0..10)
        .map(|seed| {
            let est = estimate_profile(&ar1(0.95, 5000, 500 + seed), &spec, &config).unwrap();
            est.values_nats().iter().map(|v| v.unwrap()).collect()
        })
        .collect();
    let checks: Vec<(String, bool)> = (0..5)
        .map(|i| {
            let m = median(runs.iter().map(|r| (r[i] - truth[i]).abs()).collect());
            (
                format!("h={}: median |F_hat - F| = {m:.4} <= 0.08", i + 1),
                m <= 0.08,
            )
        })
        .collect();
    report(
        4,
        "estimated vs closed-form AR(1) phi=0.95 profile (n=5000, 10 seeds)",
        &checks,
    );
}

#[test]
fn criterion_05_dpi_monotone_in_lag_order() {
    let horizons: Vec<usize> = (1..=24).collect();
    let profiles: Vec<Vec<f64>> = (1..=6)
        .map(|p| {
            seasonal_ar_profile(0.5, 0.8, 12, p, &horizons)
                .unwrap()
                .dense_values()
        })
        .collect();
    let mut violations = Vec::new();
    for p in 0..5 {
        for (i, h) in horizons.iter().enumerate() {
            if profiles[p + 1][i] < profiles[p][i] {
                violations.push((p + 1, *h));
            }
        }
    }
    report(
        5,
        "analytic seasonal profile non-decreasing in p = 1..6, h <= 24",
        &[(format!("violations: {violations:?}"), violations.is_empty())],
    );
}

#[test]
fn criterion_06_finite_window_budget() {
    let horizons: Vec<usize> = (1..=36).collect();
    let small = seasonal_ar_profile(0.5, 0.8, 12, 1, &horizons)
        .unwrap()
        .dense_values();
    let large = seasonal_ar_profile(0.5, 0.8, 12, 13, &horizons)
        .unwrap()
        .dense_values();
    let min_delta = large
        .iter()
        .zip(&small)
        .map(|(a, b)| a - b)
        .fold(f64::INFINITY, f64::min);
    let analytic_12 = large[11] - small[11];

    let series = simulate(
        &GaussianProcessSpec::seasonal_ar(0.5, 0.8, 12).unwrap(),
        20_000,
        77,
        DEFAULT_BURN_IN,
    )
    .unwrap();
    let budget = finite_window_budget(&series, 1, 13, &[12], &EstimatorConfig::default()).unwrap();
    let est_12 = budget.delta_nats[0];
    report(
        6,
        "finite-window budget, p=13 vs p=1 on the seasonal model",
        &[
            (
                format!("analytic min_h Delta(h) = {min_delta:.3e} >= 0"),
                min_delta >= 0.0,
            ),
            (
                format!("estimated Delta(12) = {est_12:.4} > 0"),
                est_12 > 0.0,
            ),
            (
                format!("|Delta_hat(12) - Delta(12)| = |{est_12:.4} - {analytic_12:.4}| <= 0.1"),
                within(est_12, analytic_12, 0.1),
            ),
        ],
    );
}

#[test]
fn criterion_07_periodic_acf() {
    // rho_{h+12} = rho_h by construction
    let rho: Vec<f64> = (1..=24)
        .map(|h| 0.6 * (2.0 * std::f64::consts::PI * (h % 12) as f64 / 12.0).cos())
        .collect();
    let horizons: Vec<usize> = (1..=24).collect();
    let f = gaussian_profile_from_acf(&rho, 1, &horizons)
        .unwrap()
        .dense_values();
    let mismatches: Vec<usize> = (1..=12).filter(|&h| f[h - 1] != f[h + 11]).collect();
    report(
        7,
        "periodic ACF 0.6 cos(2 pi h / 12), p=1: F(h) == F(h+12) for h=1..12",
        &[(
            format!("mismatched h: {mismatches:?}"),
            mismatches.is_empty(),
        )],
    );
}

#[test]
fn criterion_08_permutation_calibration() {
    let spec = InformationSetSpec::contiguous(1, 1).unwrap();
    let config = EstimatorConfig::default();
    let outer = 200u64;
    let mut rejections = 0;
    let mut ar_misses = Vec::new();
    for seed in 0..outer {
        let wn = ar1(0.0, 1000, 10_000 + seed);
        let r = permutation_test(&wn, &spec, &config, 99, seed).unwrap();
        if r[0].p_value <= 0.05 {
            rejections += 1;
        }
        let strong = ar1(0.95, 1000, 20_000 + seed);
        let r = permutation_test(&strong, &spec, &config, 99, seed).unwrap();
        if r[0].p_value != 0.01 {
            ar_misses.push(seed);
        }
    }
    let rate = rejections as f64 / outer as f64;
    report(
        8,
        "permutation test calibration (n=1000, h=1, B=99, 200 seeds)",
        &[
            (
                format!("white-noise rejection rate at 0.05 = {rate:.3} in [0.01, 0.12]"),
                (0.01..=0.12).contains(&rate),
            ),
            (
                format!("AR(1) phi=0.95 seeds with p != 0.01: {ar_misses:?}"),
                ar_misses.is_empty(),
            ),
        ],
    );
}

fn normal_log_density(x: f64, mean: f64, var: f64) -> f64 {
    -0.5 * (2.0 * std::f64::consts::PI * var).ln() - 0.5 * (x - mean).powi(2) / var
}

#[test]
fn criterion_09_loss_decomposition() {
    let phi = 0.95;
    let config = EstimatorConfig::default();
    let spec = InformationSetSpec::contiguous(1, 1).unwrap();
    let mut checks = Vec::new();
    for seed in 0..3u64 {
        let series = ar1(phi, 5000, 900 + seed);
        let y = series.values();
        let fhat = estimate_profile(&series, &spec, &config).unwrap();
        let f1 = fhat.value(1).unwrap();
        let origins: Vec<usize> = (0..y.len() - 1).collect();

        let oracle = ProbeEvaluation::new(
            1,
            origins.clone(),
            origins
                .iter()
                .map(|&t| normal_log_density(y[t + 1], phi * y[t], 1.0))
                .collect(),
        )
        .unwrap();
        let d = decompose_loss(&oracle, &series, &fhat, &config).unwrap();
        checks.push((
            format!(
                "seed {seed}: oracle chi_q = {:.4} in [0.85, 1.1]",
                d.exploitation_ratio
            ),
            (0.85..=1.1).contains(&d.exploitation_ratio),
        ));
        checks.push((
            format!(
                "seed {seed}: oracle X_q = {:.4} <= F_hat + 0.08 = {:.4}",
                d.exploitability_nats,
                f1 + 0.08
            ),
            d.exploitability_nats <= f1 + 0.08,
        ));

        let n = y.len() as f64;
        let mean = y.iter().sum::<f64>() / n;
        let var = y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let marginal = ProbeEvaluation::new(
            1,
            origins.clone(),
            origins
                .iter()
                .map(|&t| normal_log_density(y[t + 1], mean, var))
                .collect(),
        )
        .unwrap();
        let m = decompose_loss(&marginal, &series, &fhat, &config).unwrap();
        checks.push((
            format!(
                "seed {seed}: marginal |X_q| = {:.4} <= 0.05",
                m.exploitability_nats.abs()
            ),
            m.exploitability_nats.abs() <= 0.05,
        ));
        checks.push((
            format!(
                "seed {seed}: marginal X_q = {:.4} <= F_hat + 0.08",
                m.exploitability_nats
            ),
            m.exploitability_nats <= f1 + 0.08,
        ));
    }
    report(
        9,
        "loss decomposition on AR(1) phi=0.95 (n=5000, h=1)",
        &checks,
    );
}

#[test]
fn criterion_10_bounds() {
    let pinsker = pinsker_bound(0.02).unwrap();
    let fano = fano_bound(0.0, 8f64.ln(), 8).unwrap();
    let expected = (8f64.ln() - 1.0) / 8f64.ln();
    let mut flag_ok = true;
    for m in [2usize, 3, 8, 64] {
        for h in [0.1, 0.5, 1.0, 2.0, 4.0] {
            for f in [0.0, 0.25, 0.5, 1.0, 3.0] {
                let b = fano_bound(f, h, m).unwrap();
                flag_ok &= b.vacuous == (b.min_error <= 0.0);
            }
        }
    }
    report(
        10,
        "Pinsker and Fano bounds",
        &[
            (
                format!("pinsker_bound(0.02) = {pinsker:?} == 0.1"),
                pinsker == 0.1,
            ),
            (
                format!(
                    "fano_bound(0, ln 8, 8) = {:.15} vs {expected:.15}",
                    fano.min_error
                ),
                within(fano.min_error, expected, 1e-12),
            ),
            (
                "vacuous flag raised exactly when value <= 0".to_string(),
                flag_ok,
            ),
        ],
    );
}
