//! Nonparametric entropy and mutual information, and the profile
//! estimators built on them.

mod digamma;
mod entropy;
mod knn;
mod ksg;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use digamma::digamma;
pub use entropy::{kl_entropy, kl_entropy_with};
pub use knn::{kth_neighbour_distances, strict_counts, NeighbourSearch};
pub use ksg::{ksg_mutual_information, ksg_mutual_information_with};

use crate::embed::{effective_len, embed_values};
use crate::error::{Error, Result};
use crate::profile::{EstimatorMeta, ForecastabilityProfile};
use crate::rng;
use crate::series::{InformationSetSpec, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    /// Neighbour count.
    pub k: usize,
    /// Tie-breaking noise amplitude, relative to the sample standard deviation.
    pub jitter_scale: f64,
    /// Rescale to zero mean and unit variance before estimation.
    pub standardize: bool,
    /// Seed for the jitter stream.
    pub seed: u64,
    #[serde(skip)]
    pub search: NeighbourSearch,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            k: 5,
            jitter_scale: 1e-10,
            standardize: true,
            seed: 0,
            search: NeighbourSearch::KdTree,
        }
    }
}

impl EstimatorConfig {
    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if !(self.jitter_scale.is_finite() && self.jitter_scale >= 0.0) {
            return Err(Error::Config(format!(
                "jitter scale must be finite and non-negative, got {}",
                self.jitter_scale
            )));
        }
        Ok(())
    }

    /// Smallest pair count for which a horizon is estimated.
    pub fn min_pairs(&self) -> usize {
        self.k + 2
    }
}

fn mean_and_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, var.sqrt())
}

/// Standardizes (if configured) and adds seeded uniform jitter of amplitude
/// `jitter_scale * std`.
pub fn prepare_values(values: &[f64], config: &EstimatorConfig) -> Result<Vec<f64>> {
    let (mean, std) = mean_and_std(values);
    if std.is_nan() || std <= 0.0 {
        return Err(Error::DegenerateSample("series has zero variance".into()));
    }
    let (shift, scale, amplitude) = if config.standardize {
        (mean, 1.0 / std, config.jitter_scale)
    } else {
        (0.0, 1.0, config.jitter_scale * std)
    };
    let mut rng = rng::stream_rng(config.seed, rng::STREAM_JITTER);
    Ok(values
        .iter()
        .map(|v| {
            let base = if config.standardize {
                (v - shift) * scale
            } else {
                *v
            };
            if amplitude > 0.0 {
                base + amplitude * rng.gen_range(-1.0..1.0)
            } else {
                base
            }
        })
        .collect())
}

/// Estimated forecastability profile.
///
/// For each horizon `h` the prepared series is lag-embedded at `(p, h)` and
/// `F(h)` is the KSG estimate between window and future value. Horizons with
/// fewer than `k + 2` pairs are left as gaps rather than failing the profile.
pub fn estimate_profile(
    series: &TimeSeries,
    spec: &InformationSetSpec,
    config: &EstimatorConfig,
) -> Result<ForecastabilityProfile> {
    config.validate()?;
    let prepared = prepare_values(series.values(), config)?;
    estimate_prepared(&prepared, spec, config)
}

pub(crate) fn estimate_prepared(
    prepared: &[f64],
    spec: &InformationSetSpec,
    config: &EstimatorConfig,
) -> Result<ForecastabilityProfile> {
    let p = spec.lag_order();
    let mut values = Vec::with_capacity(spec.horizons().len());
    let mut counts = Vec::with_capacity(spec.horizons().len());
    for &h in spec.horizons() {
        let m = effective_len(prepared.len(), p, h).unwrap_or(0);
        counts.push(m);
        if m < config.min_pairs() {
            values.push(None);
            continue;
        }
        let pairs = embed_values(prepared, p, h)?;
        let future = crate::points::Points::scalar(pairs.future);
        values.push(Some(ksg_mutual_information_with(
            &pairs.past,
            &future,
            config.k,
            config.search,
        )?));
    }
    Ok(ForecastabilityProfile::estimated(
        spec.horizons().to_vec(),
        values,
        EstimatorMeta {
            k: config.k,
            lag_order: p,
            n_effective: counts,
            jitter_scale: config.jitter_scale,
            standardize: config.standardize,
            seed: config.seed,
        },
    ))
}

/// Estimated forecastability lost by truncating a `p_large` window to
/// `p_small` lags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteWindowBudget {
    pub horizons: Vec<usize>,
    pub p_small: usize,
    pub p_large: usize,
    /// `F(h; p_large) - F(h; p_small)`; may dip slightly below zero.
    pub delta_nats: Vec<f64>,
    pub n_effective: Vec<usize>,
}

/// Both estimates use the pairs of the `p_large` embedding; the `p_small`
/// window is the leading (most recent) coordinates of the same rows, so the
/// difference is taken over an identical sample.
pub fn finite_window_budget(
    series: &TimeSeries,
    p_small: usize,
    p_large: usize,
    horizons: &[usize],
    config: &EstimatorConfig,
) -> Result<FiniteWindowBudget> {
    config.validate()?;
    if p_small == 0 || p_small >= p_large {
        return Err(Error::Config(format!(
            "need 1 <= p_small < p_large, got p_small = {p_small}, p_large = {p_large}"
        )));
    }
    let spec = InformationSetSpec::new(p_large, horizons.to_vec())?;
    let prepared = prepare_values(series.values(), config)?;

    let mut delta = Vec::with_capacity(horizons.len());
    let mut counts = Vec::with_capacity(horizons.len());
    for &h in spec.horizons() {
        let m = effective_len(prepared.len(), p_large, h).unwrap_or(0);
        if m < config.min_pairs() {
            return Err(Error::InsufficientData {
                needed: config.min_pairs() + p_large + h - 1,
                available: prepared.len(),
            });
        }
        let pairs = embed_values(&prepared, p_large, h)?;
        let future = crate::points::Points::scalar(pairs.future);
        let short = pairs.past.leading_coordinates(p_small)?;
        let large = ksg_mutual_information_with(&pairs.past, &future, config.k, config.search)?;
        let small = ksg_mutual_information_with(&short, &future, config.k, config.search)?;
        delta.push(large - small);
        counts.push(m);
    }
    Ok(FiniteWindowBudget {
        horizons: spec.horizons().to_vec(),
        p_small,
        p_large,
        delta_nats: delta,
        n_effective: counts,
    })
}
