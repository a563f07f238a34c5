//! Pairing each lag window with the value `h` steps ahead.

use crate::error::{Error, Result};
use crate::points::Points;
use crate::series::TimeSeries;

/// `(past window, future value)` pairs for one horizon.
///
/// Pair `i` has `past = (y[p-1+i], y[p-2+i], ..., y[i])`, most recent lag
/// first, and `future = y[p-1+i+h]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedPairs {
    pub past: Points,
    pub future: Vec<f64>,
    pub horizon: usize,
}

impl EmbeddedPairs {
    pub fn n_effective(&self) -> usize {
        self.future.len()
    }

    pub fn lag_order(&self) -> usize {
        self.past.dim()
    }

    /// Index into the source series of the last observation in window `i`.
    pub fn origin_index(&self, i: usize) -> usize {
        self.lag_order() - 1 + i
    }
}

/// Number of pairs available for a series of length `n`, or `None` if the
/// window plus horizon does not fit.
pub fn effective_len(n: usize, lag_order: usize, horizon: usize) -> Option<usize> {
    (n + 1).checked_sub(horizon + lag_order).filter(|&m| m >= 1)
}

pub fn lag_embed(series: &TimeSeries, lag_order: usize, horizon: usize) -> Result<EmbeddedPairs> {
    embed_values(series.values(), lag_order, horizon)
}

pub(crate) fn embed_values(
    values: &[f64],
    lag_order: usize,
    horizon: usize,
) -> Result<EmbeddedPairs> {
    if lag_order == 0 || horizon == 0 {
        return Err(Error::InvalidSpec(
            "lag order and horizon must be positive".into(),
        ));
    }
    let n = values.len();
    let m = effective_len(n, lag_order, horizon).ok_or(Error::InsufficientData {
        needed: lag_order + horizon,
        available: n,
    })?;

    let mut past = Vec::with_capacity(m * lag_order);
    let mut future = Vec::with_capacity(m);
    for i in 0..m {
        let origin = lag_order - 1 + i;
        past.extend((0..lag_order).map(|lag| values[origin - lag]));
        future.push(values[origin + horizon]);
    }
    Ok(EmbeddedPairs {
        past: Points::from_flat(past, lag_order)?,
        future,
        horizon,
    })
}
