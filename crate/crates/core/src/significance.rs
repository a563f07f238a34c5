//! Permutation null for estimated forecastability.
//!
//! Each replicate shuffles the whole series, which destroys every temporal
//! dependence while keeping the marginal, then re-runs the same estimation
//! pipeline (standardization, jitter, KSG) as the observed statistic.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{estimate_profile, EstimatorConfig};
use crate::rng;
use crate::series::{InformationSetSpec, TimeSeries};

/// Fewest replicates that can resolve p <= 0.05.
pub const MIN_REPLICATES: usize = 19;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignificanceResult {
    pub horizon: usize,
    pub observed_nats: f64,
    pub null_samples: Vec<f64>,
    pub p_value: f64,
    pub replicates: usize,
    pub seed: u64,
}

impl SignificanceResult {
    pub fn new(horizon: usize, observed_nats: f64, null_samples: Vec<f64>, seed: u64) -> Self {
        let p_value = add_one_p_value(observed_nats, &null_samples);
        Self {
            horizon,
            observed_nats,
            replicates: null_samples.len(),
            null_samples,
            p_value,
            seed,
        }
    }

    /// Empirical quantile of the null (linear interpolation, `q` in [0, 1]).
    pub fn null_quantile(&self, q: f64) -> f64 {
        let mut sorted = self.null_samples.clone();
        sorted.sort_by(f64::total_cmp);
        let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

/// `(1 + #{null >= observed}) / (B + 1)`.
pub fn add_one_p_value(observed: f64, null_samples: &[f64]) -> f64 {
    let exceed = null_samples.iter().filter(|v| **v >= observed).count();
    (1 + exceed) as f64 / (null_samples.len() + 1) as f64
}

/// Seed of replicate `b`: `derive_seed(seed, STREAM_PERMUTATION + b)`.
pub fn replicate_seed(seed: u64, replicate: usize) -> u64 {
    rng::derive_seed(seed, rng::STREAM_PERMUTATION.wrapping_add(replicate as u64))
}

/// Permutation test of `F(h) = 0` at every horizon of `spec`.
///
/// Fails with `InsufficientData` if any horizon cannot be estimated.
pub fn permutation_test(
    series: &TimeSeries,
    spec: &InformationSetSpec,
    config: &EstimatorConfig,
    replicates: usize,
    seed: u64,
) -> Result<Vec<SignificanceResult>> {
    if replicates < MIN_REPLICATES {
        return Err(Error::Config(format!(
            "at least {MIN_REPLICATES} replicates are required, got {replicates}"
        )));
    }
    let observed = estimate_profile(series, spec, config)?;
    if let Some(h) = observed.gap_horizons().first() {
        return Err(Error::InsufficientData {
            needed: config.min_pairs() + spec.lag_order() + h - 1,
            available: series.len(),
        });
    }
    let observed = observed.dense_values();

    let mut nulls = vec![Vec::with_capacity(replicates); observed.len()];
    let mut shuffled = series.values().to_vec();
    for b in 0..replicates {
        shuffled.copy_from_slice(series.values());
        let mut rng = ChaCha8Rng::seed_from_u64(replicate_seed(seed, b));
        shuffled.shuffle(&mut rng);
        let permuted = TimeSeries::new(shuffled.clone())?;
        let null = estimate_profile(&permuted, spec, config)?.dense_values();
        for (column, v) in nulls.iter_mut().zip(null) {
            column.push(v);
        }
    }

    Ok(spec
        .horizons()
        .iter()
        .zip(observed)
        .zip(nulls)
        .map(|((&h, obs), null)| SignificanceResult::new(h, obs, null, seed))
        .collect())
}
