//! How much of the available forecastability a probe forecaster captures,
//! and what small forecastability implies for any forecaster.
//!
//! Probe log densities are in the series' original units. The marginal
//! entropy they are compared against is therefore estimated on the raw
//! outcomes, never on the standardized copy used inside MI estimation
//! (MI is scale-free, differential entropy is not).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{kl_entropy_with, prepare_values, EstimatorConfig};
use crate::points::Points;
use crate::profile::ForecastabilityProfile;
use crate::series::TimeSeries;

/// Denominator floor for the exploitation ratio.
pub const RATIO_FLOOR_NATS: f64 = 1e-6;
/// Below this forecastability the exploitation ratio is not interpretable.
pub const LOW_FORECASTABILITY_NATS: f64 = 0.01;
/// Evaluation counts below this are accepted but noisy.
pub const RECOMMENDED_MIN_EVAL: usize = 30;

/// A probe forecaster's log predictive densities at realized outcomes.
///
/// Entry `i` is `log q_h(y[origins[i] + horizon] | information up to origins[i])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeEvaluation {
    pub horizon: usize,
    pub origins: Vec<usize>,
    pub log_densities: Vec<f64>,
}

impl ProbeEvaluation {
    pub fn new(horizon: usize, origins: Vec<usize>, log_densities: Vec<f64>) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidSpec("probe horizon must be positive".into()));
        }
        if origins.len() != log_densities.len() {
            return Err(Error::Config(format!(
                "{} origins but {} log densities",
                origins.len(),
                log_densities.len()
            )));
        }
        if origins.len() < 2 {
            return Err(Error::InsufficientData {
                needed: 2,
                available: origins.len(),
            });
        }
        if let Some(i) = log_densities.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("log density {i} is not finite")));
        }
        Ok(Self {
            horizon,
            origins,
            log_densities,
        })
    }

    pub fn n_eval(&self) -> usize {
        self.log_densities.len()
    }

    /// Mean of `-log_densities`, as a running mean so a constant loss is
    /// reproduced exactly.
    pub fn expected_loss(&self) -> f64 {
        self.log_densities
            .iter()
            .enumerate()
            .fold(0.0, |mean, (i, v)| mean + (-v - mean) / (i + 1) as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LossDecomposition {
    pub horizon: usize,
    pub n_eval: usize,
    /// Mean log loss of the probe.
    pub expected_loss_nats: f64,
    /// Entropy of the outcome marginal, i.e. the loss of the ideal
    /// unconditional forecaster.
    pub marginal_entropy_nats: f64,
    pub forecastability_nats: f64,
    /// `marginal_entropy - expected_loss`.
    pub exploitability_nats: f64,
    /// `exploitability / max(forecastability, RATIO_FLOOR_NATS)`.
    pub exploitation_ratio: f64,
    /// `forecastability - exploitability`.
    pub approximation_gap_nats: f64,
    pub low_forecastability: bool,
}

/// Splits the probe's expected loss against the estimated forecastability.
pub fn decompose_loss(
    probe: &ProbeEvaluation,
    series: &TimeSeries,
    fhat: &ForecastabilityProfile,
    config: &EstimatorConfig,
) -> Result<LossDecomposition> {
    config.validate()?;
    let forecastability = fhat.value(probe.horizon)?;
    let values = series.values();
    let outcomes = probe
        .origins
        .iter()
        .map(|&t| {
            values.get(t + probe.horizon).copied().ok_or_else(|| {
                Error::Config(format!(
                    "origin {t} plus horizon {} is past the end of a series of length {}",
                    probe.horizon,
                    values.len()
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;

    // jitter only; standardizing would change the entropy's units
    let raw_config = EstimatorConfig {
        standardize: false,
        ..*config
    };
    let jittered = prepare_values(&outcomes, &raw_config)?;
    let marginal_entropy = kl_entropy_with(&Points::scalar(jittered), config.k, config.search)?;

    let expected_loss = probe.expected_loss();
    let exploitability = marginal_entropy - expected_loss;
    Ok(LossDecomposition {
        horizon: probe.horizon,
        n_eval: probe.n_eval(),
        expected_loss_nats: expected_loss,
        marginal_entropy_nats: marginal_entropy,
        forecastability_nats: forecastability,
        exploitability_nats: exploitability,
        exploitation_ratio: exploitability / forecastability.max(RATIO_FLOOR_NATS),
        approximation_gap_nats: forecastability - exploitability,
        low_forecastability: forecastability < LOW_FORECASTABILITY_NATS,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanoBound {
    /// Lower bound on the error probability of any predictor of an
    /// `alphabet_size`-valued outcome. Reported raw, even when negative.
    pub min_error: f64,
    pub alphabet_size: usize,
    /// The bound is `<= 0` and says nothing.
    pub vacuous: bool,
}

/// `(H - F - 1) / ln M`, natural logs throughout.
pub fn fano_bound(
    forecastability_nats: f64,
    marginal_entropy_nats: f64,
    alphabet_size: usize,
) -> Result<FanoBound> {
    if alphabet_size < 2 {
        return Err(Error::Domain(format!(
            "alphabet size must be at least 2, got {alphabet_size}"
        )));
    }
    let min_error =
        (marginal_entropy_nats - forecastability_nats - 1.0) / (alphabet_size as f64).ln();
    Ok(FanoBound {
        min_error,
        alphabet_size,
        vacuous: min_error.is_nan() || min_error <= 0.0,
    })
}

/// Upper bound `sqrt(F / 2)` on the total variation distance between the
/// conditional and marginal predictive distributions.
pub fn pinsker_bound(forecastability_nats: f64) -> Result<f64> {
    if !forecastability_nats.is_finite() || forecastability_nats < 0.0 {
        return Err(Error::Domain(format!(
            "Pinsker bound needs finite non-negative forecastability, got {forecastability_nats}"
        )));
    }
    Ok((forecastability_nats / 2.0).sqrt())
}

/// Both floors for one horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FloorBounds {
    pub pinsker_tv_bound: f64,
    pub fano: Option<FanoBound>,
}

impl FloorBounds {
    /// Negative forecastability estimates are clamped to zero first.
    pub fn new(
        forecastability_nats: f64,
        marginal_entropy_nats: f64,
        alphabet_size: Option<usize>,
    ) -> Result<Self> {
        let f = forecastability_nats.max(0.0);
        Ok(Self {
            pinsker_tv_bound: pinsker_bound(f)?,
            fano: alphabet_size
                .map(|m| fano_bound(f, marginal_entropy_nats, m))
                .transpose()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn profile(h: usize, v: f64) -> ForecastabilityProfile {
        ForecastabilityProfile::estimated(
            vec![h],
            vec![Some(v)],
            crate::profile::EstimatorMeta {
                k: 5,
                lag_order: 1,
                n_effective: vec![100],
                jitter_scale: 1e-10,
                standardize: true,
                seed: 0,
            },
        )
    }

    fn series() -> TimeSeries {
        TimeSeries::new((0..200).map(|i| ((i * 37) % 101) as f64 * 0.1).collect()).unwrap()
    }

    #[test]
    fn loss_equal_to_marginal_entropy_has_zero_exploitability() {
        let s = series();
        let origins: Vec<usize> = (0..150).collect();
        let cfg = EstimatorConfig::default();
        let raw_cfg = EstimatorConfig {
            standardize: false,
            ..cfg
        };
        let outcomes: Vec<f64> = origins.iter().map(|t| s.values()[t + 1]).collect();
        let h = kl_entropy_with(
            &Points::scalar(prepare_values(&outcomes, &raw_cfg).unwrap()),
            cfg.k,
            cfg.search,
        )
        .unwrap();
        let probe = ProbeEvaluation::new(1, origins, vec![-h; 150]).unwrap();
        let d = decompose_loss(&probe, &s, &profile(1, 0.2), &cfg).unwrap();
        assert_eq!(d.exploitability_nats, 0.0);
        assert_eq!(d.exploitation_ratio, 0.0);
        assert_eq!(d.approximation_gap_nats, 0.2);
        assert_abs_diff_eq!(
            d.expected_loss_nats,
            d.marginal_entropy_nats - d.exploitability_nats,
            epsilon = 1e-14
        );
    }

    #[test]
    fn low_forecastability_is_flagged_and_floored() {
        let s = series();
        let probe = ProbeEvaluation::new(2, (0..100).collect(), vec![-1.0; 100]).unwrap();
        let d =
            decompose_loss(&probe, &s, &profile(2, -0.003), &EstimatorConfig::default()).unwrap();
        assert!(d.low_forecastability);
        assert_abs_diff_eq!(
            d.exploitation_ratio,
            d.exploitability_nats / 1e-6,
            epsilon = 1e-6
        );
    }

    #[test]
    fn probe_contract() {
        let s = series();
        let cfg = EstimatorConfig::default();
        let probe = ProbeEvaluation::new(3, (0..100).collect(), vec![-1.0; 100]).unwrap();
        assert_eq!(
            decompose_loss(&probe, &s, &profile(1, 0.1), &cfg),
            Err(Error::MissingHorizon(3))
        );
        let late = ProbeEvaluation::new(1, vec![10, 199], vec![-1.0, -1.0]).unwrap();
        assert!(decompose_loss(&late, &s, &profile(1, 0.1), &cfg).is_err());
        assert!(ProbeEvaluation::new(1, vec![1], vec![-1.0]).is_err());
        assert!(ProbeEvaluation::new(1, vec![1, 2], vec![-1.0]).is_err());
        assert!(ProbeEvaluation::new(1, vec![1, 2], vec![-1.0, f64::NAN]).is_err());
    }

    #[test]
    fn fano_values() {
        let b = fano_bound(0.0, 8f64.ln(), 8).unwrap();
        assert_abs_diff_eq!(b.min_error, (8f64.ln() - 1.0) / 8f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(b.min_error, 0.5192, epsilon = 1e-4);
        assert!(!b.vacuous);
        let binary = fano_bound(0.0, 2f64.ln(), 2).unwrap();
        assert!(binary.min_error < 0.0 && binary.vacuous);
        let full = fano_bound(1.3, 1.3, 5).unwrap();
        assert!(full.min_error < 0.0 && full.vacuous);
        assert!(matches!(fano_bound(0.0, 1.0, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn pinsker_values() {
        assert_eq!(pinsker_bound(0.0).unwrap(), 0.0);
        assert_eq!(pinsker_bound(0.02).unwrap(), 0.1);
        assert_eq!(pinsker_bound(0.5).unwrap(), 0.5);
        assert!(matches!(pinsker_bound(-0.1), Err(Error::Domain(_))));
        assert!(pinsker_bound(f64::NAN).is_err());
    }

    #[test]
    fn floor_bounds_clamp_negative_estimates() {
        let b = FloorBounds::new(-0.01, 3.0, Some(16)).unwrap();
        assert_eq!(b.pinsker_tv_bound, 0.0);
        assert_abs_diff_eq!(b.fano.unwrap().min_error, 2.0 / 16f64.ln(), epsilon = 1e-15);
        assert!(FloorBounds::new(0.1, 1.0, None).unwrap().fano.is_none());
    }

    proptest! {
        #[test]
        fn pinsker_monotone_concave(a in 0.0f64..5.0, b in 0.0f64..5.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let f = |x| pinsker_bound(x).unwrap();
            prop_assert!(f(lo) <= f(hi));
            prop_assert!(f(0.5 * (lo + hi)) + 1e-12 >= 0.5 * (f(lo) + f(hi)));
        }

        #[test]
        fn fano_decreasing_in_forecastability(a in 0.0f64..3.0, b in 0.0f64..3.0, m in 2usize..64) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let h = 4.0;
            prop_assert!(fano_bound(hi, h, m).unwrap().min_error <= fano_bound(lo, h, m).unwrap().min_error);
        }
    }
}
