//! Forecastability as a function of horizon.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileSource {
    Analytic,
    Estimated,
}

/// How an estimated profile was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorMeta {
    pub k: usize,
    pub lag_order: usize,
    /// Pair count per horizon; zero where the horizon was a gap.
    pub n_effective: Vec<usize>,
    pub jitter_scale: f64,
    pub standardize: bool,
    pub seed: u64,
}

/// `F(h)` in nats per horizon.
///
/// Estimated profiles can hold small negative values (estimator noise) and
/// gaps (`None`) where a horizon had too few pairs. Neither is hidden here;
/// use [`ForecastabilityProfile::clamped_nonneg`] when a non-negative view
/// is wanted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForecastabilityProfile {
    horizons: Vec<usize>,
    values_nats: Vec<Option<f64>>,
    source: ProfileSource,
    estimator_meta: Option<EstimatorMeta>,
}

impl ForecastabilityProfile {
    pub fn analytic(horizons: Vec<usize>, values_nats: Vec<f64>) -> Self {
        debug_assert_eq!(horizons.len(), values_nats.len());
        debug_assert!(values_nats.iter().all(|v| *v >= 0.0));
        Self {
            horizons,
            values_nats: values_nats.into_iter().map(Some).collect(),
            source: ProfileSource::Analytic,
            estimator_meta: None,
        }
    }

    pub fn estimated(
        horizons: Vec<usize>,
        values_nats: Vec<Option<f64>>,
        meta: EstimatorMeta,
    ) -> Self {
        debug_assert_eq!(horizons.len(), values_nats.len());
        Self {
            horizons,
            values_nats,
            source: ProfileSource::Estimated,
            estimator_meta: Some(meta),
        }
    }

    pub fn horizons(&self) -> &[usize] {
        &self.horizons
    }

    pub fn values_nats(&self) -> &[Option<f64>] {
        &self.values_nats
    }

    pub fn source(&self) -> ProfileSource {
        self.source
    }

    pub fn estimator_meta(&self) -> Option<&EstimatorMeta> {
        self.estimator_meta.as_ref()
    }

    pub fn len(&self) -> usize {
        self.horizons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.horizons.is_empty()
    }

    /// Value at horizon `h`; `MissingHorizon` if `h` is absent or a gap.
    pub fn value(&self, h: usize) -> Result<f64> {
        self.horizons
            .binary_search(&h)
            .ok()
            .and_then(|i| self.values_nats[i])
            .ok_or(Error::MissingHorizon(h))
    }

    /// Gap-free values; panics on a gap. Intended for analytic profiles.
    pub fn dense_values(&self) -> Vec<f64> {
        self.values_nats
            .iter()
            .zip(&self.horizons)
            .map(|(v, h)| v.unwrap_or_else(|| panic!("gap at horizon {h}")))
            .collect()
    }

    pub fn clamped_nonneg(&self) -> Vec<Option<f64>> {
        self.values_nats
            .iter()
            .map(|v| v.map(|x| x.max(0.0)))
            .collect()
    }

    pub fn gap_horizons(&self) -> Vec<usize> {
        self.horizons
            .iter()
            .zip(&self.values_nats)
            .filter(|(_, v)| v.is_none())
            .map(|(h, _)| *h)
            .collect()
    }

    pub fn all_gaps(&self) -> bool {
        self.values_nats.iter().all(Option::is_none)
    }
}
