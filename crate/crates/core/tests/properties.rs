//! Cross-module properties on simulated data.

use forecastability::analytic::{seasonal_ar_profile, DEFAULT_BURN_IN};
use forecastability::{
    ar1_profile, decompose_loss, estimate_profile, finite_window_budget, gaussian_entropy_summary,
    kl_entropy, ksg_mutual_information, simulate, EstimatorConfig, GaussianProcessSpec,
    InformationSetSpec, Points, ProbeEvaluation, TimeSeries,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn ar1(phi: f64, n: usize, seed: u64) -> TimeSeries {
    simulate(
        &GaussianProcessSpec::ar1(phi).unwrap(),
        n,
        seed,
        DEFAULT_BURN_IN,
    )
    .unwrap()
}

fn seasonal(n: usize, seed: u64) -> TimeSeries {
    let spec = GaussianProcessSpec::seasonal_ar(0.5, 0.8, 12).unwrap();
    simulate(&spec, n, seed, DEFAULT_BURN_IN).unwrap()
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

fn h1(series: &TimeSeries, config: &EstimatorConfig) -> f64 {
    let spec = InformationSetSpec::contiguous(1, 1).unwrap();
    estimate_profile(series, &spec, config)
        .unwrap()
        .value(1)
        .unwrap()
}

#[test]
fn estimation_error_shrinks_with_sample_size() {
    let truth = ar1_profile(0.6, &[1]).unwrap().dense_values()[0];
    let config = EstimatorConfig::default();
    let errors: Vec<f64> = [500, 2000, 8000]
        .iter()
        .map(|&n| {
            median(
                (0..20)
                    .map(|s| (h1(&ar1(0.6, n, 3000 + s), &config) - truth).abs())
                    .collect(),
            )
        })
        .collect();
    assert!(
        errors.windows(2).all(|w| w[1] <= w[0]),
        "median errors {errors:?}"
    );
}

#[test]
fn affine_rescaling_leaves_estimate_unchanged() {
    let base = ar1(0.8, 3000, 11);
    let moved = TimeSeries::new(base.values().iter().map(|v| -250.0 * v + 1e4).collect()).unwrap();
    let spec = InformationSetSpec::contiguous(2, 4).unwrap();
    let config = EstimatorConfig::default();
    let a = estimate_profile(&base, &spec, &config)
        .unwrap()
        .dense_values();
    let b = estimate_profile(&moved, &spec, &config)
        .unwrap()
        .dense_values();
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() <= 1e-3, "{x} vs {y}");
    }
}

#[test]
fn ksg_agrees_with_entropy_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 5000;
    for rho in [0.0, 0.5, 0.8] {
        let mut x = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        let mut joint = Vec::with_capacity(2 * n);
        for _ in 0..n {
            let a: f64 = rng.sample(StandardNormal);
            let b: f64 = rng.sample(StandardNormal);
            let yv = rho * a + (1.0f64 - rho * rho).sqrt() * b;
            x.push(a);
            y.push(yv);
            joint.extend([a, yv]);
        }
        let (xp, yp) = (Points::scalar(x), Points::scalar(y));
        let jp = Points::from_flat(joint, 2).unwrap();
        let via_entropy =
            kl_entropy(&xp, 5).unwrap() + kl_entropy(&yp, 5).unwrap() - kl_entropy(&jp, 5).unwrap();
        let ksg = ksg_mutual_information(&xp, &yp, 5).unwrap();
        assert!(
            (ksg - via_entropy).abs() <= 0.05,
            "rho {rho}: {ksg} vs {via_entropy}"
        );
    }
}

#[test]
fn white_noise_profile_is_flat_at_zero() {
    let spec = InformationSetSpec::contiguous(1, 10).unwrap();
    let profile = estimate_profile(&ar1(0.0, 2000, 8), &spec, &EstimatorConfig::default()).unwrap();
    for (h, v) in profile.horizons().iter().zip(profile.dense_values()) {
        assert!(v.abs() <= 0.03, "h={h}: {v}");
    }
}

#[test]
fn seasonal_estimate_tracks_analytic_shape() {
    let spec = InformationSetSpec::new(1, vec![1, 6, 12]).unwrap();
    let f = estimate_profile(&seasonal(20_000, 31), &spec, &EstimatorConfig::default())
        .unwrap()
        .dense_values();
    assert!((f[0] - 0.14).abs() <= 0.05, "F(1) = {}", f[0]);
    assert!(f[1] <= 0.03, "F(6) = {}", f[1]);
    assert!((f[2] - 0.49).abs() <= 0.07, "F(12) = {}", f[2]);
}

#[test]
fn markov_process_has_no_truncation_budget() {
    let budget =
        finite_window_budget(&ar1(0.95, 5000, 2), 1, 3, &[1], &EstimatorConfig::default()).unwrap();
    assert!(
        budget.delta_nats[0].abs() <= 0.05,
        "{:?}",
        budget.delta_nats
    );

    let rho: Vec<f64> = (1..=20).map(|j| 0.95f64.powi(j)).collect();
    let horizons: Vec<usize> = (1..=8).collect();
    let one = forecastability::gaussian_profile_from_acf(&rho, 1, &horizons)
        .unwrap()
        .dense_values();
    for p in 2..=6 {
        let more = forecastability::gaussian_profile_from_acf(&rho, p, &horizons)
            .unwrap()
            .dense_values();
        for (a, b) in one.iter().zip(&more) {
            assert!((a - b).abs() <= 1e-12, "p={p}: {a} vs {b}");
        }
    }
}

#[test]
fn budget_rejects_equal_orders() {
    assert!(
        finite_window_budget(&ar1(0.5, 500, 1), 3, 3, &[1], &EstimatorConfig::default()).is_err()
    );
}

#[test]
fn analytic_profiles_ignore_innovation_variance() {
    let horizons: Vec<usize> = (1..=30).collect();
    let unit = GaussianProcessSpec::seasonal_ar(0.5, 0.8, 12).unwrap();
    let scaled = unit.clone().with_innovation_variance(7.5).unwrap();
    assert_eq!(
        unit.profile(2, &horizons).unwrap().dense_values(),
        scaled.profile(2, &horizons).unwrap().dense_values()
    );
    let s1 = gaussian_entropy_summary(&GaussianProcessSpec::ar1(0.95).unwrap()).unwrap();
    let s2 = gaussian_entropy_summary(
        &GaussianProcessSpec::ar1(0.95)
            .unwrap()
            .with_innovation_variance(2.0)
            .unwrap(),
    )
    .unwrap();
    assert!((s1.one_step_forecastability_nats - s2.one_step_forecastability_nats).abs() <= 1e-12);
    let f1 = ar1_profile(0.95, &[1]).unwrap().dense_values()[0];
    assert!((s1.one_step_forecastability_nats - f1).abs() <= 1e-12);
}

#[test]
fn seasonal_profile_dips_then_peaks_at_the_period() {
    let horizons: Vec<usize> = (1..=13).collect();
    let f = seasonal_ar_profile(0.5, 0.8, 12, 1, &horizons)
        .unwrap()
        .dense_values();
    let dip = (4..=8).min_by(|&a, &b| f[a].total_cmp(&f[b])).unwrap();
    assert!(
        f[dip - 1] > f[dip] && f[dip + 1] > f[dip],
        "local minimum at h={}",
        dip + 1
    );
    assert!(f[11] > f[10] && f[11] > f[12]);
    assert!((f[5] - 0.0004).abs() < 5e-5);
}

#[test]
fn simulator_moments() {
    let wn = ar1(0.0, 10_000, 99);
    let n = wn.len() as f64;
    let mean = wn.values().iter().sum::<f64>() / n;
    let var = wn.values().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    assert!(mean.abs() <= 4.0 / n.sqrt());
    assert!((var - 1.0).abs() <= 0.1);

    let y = ar1(0.95, 10_000, 99).into_values();
    let m = y.iter().sum::<f64>() / n;
    let c0: f64 = y.iter().map(|v| (v - m).powi(2)).sum();
    let c1: f64 = y.windows(2).map(|w| (w[0] - m) * (w[1] - m)).sum();
    assert!((c1 / c0 - 0.95).abs() <= 0.02);
}

#[test]
fn estimation_is_deterministic_per_seed() {
    let series = ar1(0.7, 1500, 4);
    let spec = InformationSetSpec::contiguous(2, 3).unwrap();
    let config = EstimatorConfig::default().with_seed(17);
    let a = estimate_profile(&series, &spec, &config).unwrap();
    let b = estimate_profile(&series, &spec, &config).unwrap();
    let bits = |p: &forecastability::ForecastabilityProfile| -> Vec<u64> {
        p.dense_values().iter().map(|v| v.to_bits()).collect()
    };
    assert_eq!(bits(&a), bits(&b));
}

#[test]
fn a_probe_cannot_exploit_white_noise() {
    // any fixed predictive density is at best the marginal on white noise
    let series = ar1(0.0, 3000, 21);
    let y = series.values();
    let config = EstimatorConfig::default();
    let fhat = estimate_profile(
        &series,
        &InformationSetSpec::contiguous(1, 1).unwrap(),
        &config,
    )
    .unwrap();
    let origins: Vec<usize> = (0..y.len() - 1).collect();
    let ln_norm = |x: f64, m: f64, v: f64| {
        -0.5 * (2.0 * std::f64::consts::PI * v).ln() - 0.5 * (x - m).powi(2) / v
    };
    for (slope, var) in [(0.0, 1.0), (0.5, 1.0), (0.9, 0.5)] {
        let probe = ProbeEvaluation::new(
            1,
            origins.clone(),
            origins
                .iter()
                .map(|&t| ln_norm(y[t + 1], slope * y[t], var))
                .collect(),
        )
        .unwrap();
        let d = decompose_loss(&probe, &series, &fhat, &config).unwrap();
        assert!(
            d.exploitability_nats <= 0.05,
            "slope {slope}: X = {}",
            d.exploitability_nats
        );
        assert!(d.low_forecastability);
    }
}
