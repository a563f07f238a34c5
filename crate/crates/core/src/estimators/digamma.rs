use crate::error::{Error, Result};

/// Digamma function `psi(x)` for `x > 0`.
///
/// Shifts `x` upward with `psi(x) = psi(x + 1) - 1/x` until `x >= 6`, then
/// uses the asymptotic series in `1/x^2`.
pub fn digamma(x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(digamma_positive(x))
    } else {
        Err(Error::Domain(format!("digamma requires x > 0, got {x}")))
    }
}

/// Caller guarantees `x > 0`.
pub(crate) fn digamma_positive(mut x: f64) -> f64 {
    let mut shift = 0.0;
    while x < 6.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Bernoulli terms B_2k / (2k x^2k), k = 1..7
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2
                                        * (1.0 / 132.0
                                            - inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    shift + x.ln() - 0.5 / x - series
}

/// `psi(n)` for positive integers, through a lookup for small `n`.
pub(crate) struct DigammaTable {
    values: Vec<f64>,
}

impl DigammaTable {
    /// Exact harmonic-sum values for `1..=max`.
    pub fn new(max: usize) -> Self {
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        let mut values = Vec::with_capacity(max + 1);
        values.push(f64::NAN);
        let mut acc = -EULER_GAMMA;
        for n in 1..=max {
            values.push(if n < 64 {
                acc
            } else {
                digamma_positive(n as f64)
            });
            acc += 1.0 / n as f64;
        }
        Self { values }
    }

    #[inline]
    pub fn get(&self, n: usize) -> f64 {
        match self.values.get(n) {
            Some(v) => *v,
            None => digamma_positive(n as f64),
        }
    }
}
