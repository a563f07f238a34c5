//! Observed series and the declared information set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered real-valued observations in original units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    values: Vec<f64>,
    name: Option<String>,
    period_hint: Option<usize>,
}

impl TimeSeries {
    /// Fails unless there are at least two observations and all are finite.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidSeries(format!(
                "at least 2 observations required, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSeries(format!(
                "non-finite value at index {i}"
            )));
        }
        Ok(Self {
            values,
            name: None,
            period_hint: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_period_hint(mut self, period: usize) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidSeries("period hint must be positive".into()));
        }
        self.period_hint = Some(period);
        Ok(self)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; a valid series has at least two observations.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn period_hint(&self) -> Option<usize> {
        self.period_hint
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Lag-window information set: the `lag_order` most recent observations,
/// evaluated at each of `horizons`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InformationSetSpec {
    lag_order: usize,
    horizons: Vec<usize>,
}

impl InformationSetSpec {
    pub fn new(lag_order: usize, horizons: Vec<usize>) -> Result<Self> {
        if lag_order == 0 {
            return Err(Error::InvalidSpec("lag order must be at least 1".into()));
        }
        if horizons.is_empty() {
            return Err(Error::InvalidSpec("horizon list is empty".into()));
        }
        if horizons[0] == 0 {
            return Err(Error::InvalidSpec("horizons must be at least 1".into()));
        }
        if horizons.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSpec(
                "horizons must be strictly ascending".into(),
            ));
        }
        Ok(Self {
            lag_order,
            horizons,
        })
    }

    /// Lag order `p` with horizons `1..=max_horizon`.
    pub fn contiguous(lag_order: usize, max_horizon: usize) -> Result<Self> {
        Self::new(lag_order, (1..=max_horizon).collect())
    }

    pub fn lag_order(&self) -> usize {
        self.lag_order
    }

    pub fn horizons(&self) -> &[usize] {
        &self.horizons
    }
}
