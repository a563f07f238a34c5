//! Exact forecastability for stationary Gaussian processes.
//!
//! For a Gaussian process the mutual information between `Y_{t+h}` and a
//! `p`-lag window depends only on the autocorrelations:
//! `F(h) = -0.5 * ln(1 - R_h^2)` where `R_h^2` is the population
//! coefficient of determination of the best linear predictor. Everything
//! here is computed from the ACF, so profiles are invariant to the
//! innovation variance.

use nalgebra::{DMatrix, DVector};
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::ForecastabilityProfile;
use crate::rng;
use crate::series::TimeSeries;

/// Relative tail mass at which the MA(inf) expansion is truncated.
pub const ACF_TAIL_TOLERANCE: f64 = 1e-12;

/// Transient length discarded by [`simulate`] unless told otherwise.
pub const DEFAULT_BURN_IN: usize = 1000;

/// Longest MA(inf) expansion we are willing to build before declaring the
/// process too close to a unit root.
const MAX_MA_TERMS: usize = 50_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ProcessKind {
    /// `Y_t = phi Y_{t-1} + e_t`.
    Ar1 { phi: f64 },
    /// `(1 - phi B)(1 - seasonal_phi B^period) Y_t = e_t`.
    SeasonalAr {
        phi: f64,
        seasonal_phi: f64,
        period: usize,
    },
    /// Autocorrelations `rho_1..rho_L`. Simulated through the AR(L) model
    /// that reproduces them exactly (Yule–Walker).
    ExplicitAcf { rho: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianProcessSpec {
    pub kind: ProcessKind,
    pub innovation_variance: f64,
}

impl GaussianProcessSpec {
    pub fn ar1(phi: f64) -> Result<Self> {
        Self::new(ProcessKind::Ar1 { phi }, 1.0)
    }

    pub fn seasonal_ar(phi: f64, seasonal_phi: f64, period: usize) -> Result<Self> {
        Self::new(
            ProcessKind::SeasonalAr {
                phi,
                seasonal_phi,
                period,
            },
            1.0,
        )
    }

    pub fn explicit_acf(rho: Vec<f64>) -> Result<Self> {
        Self::new(ProcessKind::ExplicitAcf { rho }, 1.0)
    }

    pub fn new(kind: ProcessKind, innovation_variance: f64) -> Result<Self> {
        let spec = Self {
            kind,
            innovation_variance,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_innovation_variance(mut self, sigma2: f64) -> Result<Self> {
        self.innovation_variance = sigma2;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.innovation_variance.is_finite() && self.innovation_variance > 0.0) {
            return Err(Error::Domain(format!(
                "innovation variance must be positive and finite, got {}",
                self.innovation_variance
            )));
        }
        match &self.kind {
            ProcessKind::Ar1 { phi } => check_coefficient("phi", *phi),
            ProcessKind::SeasonalAr {
                phi,
                seasonal_phi,
                period,
            } => {
                check_coefficient("phi", *phi)?;
                check_coefficient("Phi", *seasonal_phi)?;
                if *period == 0 {
                    return Err(Error::Domain("seasonal period must be positive".into()));
                }
                Ok(())
            }
            ProcessKind::ExplicitAcf { rho } => {
                if rho.is_empty() {
                    return Err(Error::Domain("explicit ACF is empty".into()));
                }
                if let Some((i, r)) = rho
                    .iter()
                    .enumerate()
                    .find(|(_, r)| !(r.is_finite() && r.abs() < 1.0))
                {
                    return Err(Error::Domain(format!(
                        "autocorrelation at lag {} must lie in (-1, 1), got {r}",
                        i + 1
                    )));
                }
                Ok(())
            }
        }
    }

    /// Autocorrelations `rho_1..rho_max_lag`.
    ///
    /// For an explicit ACF, lags beyond the supplied ones are extended by the
    /// Yule–Walker AR recursion.
    pub fn acf(&self, max_lag: usize) -> Result<Vec<f64>> {
        self.validate()?;
        match &self.kind {
            ProcessKind::Ar1 { phi } => Ok((1..=max_lag).map(|h| phi.powi(h as i32)).collect()),
            ProcessKind::SeasonalAr {
                phi,
                seasonal_phi,
                period,
            } => seasonal_ar_acf(*phi, *seasonal_phi, *period, max_lag),
            ProcessKind::ExplicitAcf { rho } => {
                if max_lag <= rho.len() {
                    return Ok(rho[..max_lag].to_vec());
                }
                let (coeffs, _) = yule_walker(rho)?;
                let mut out = rho.clone();
                for h in rho.len() + 1..=max_lag {
                    // rho_h = sum_j a_j rho_{h-j}, with rho_0 = 1
                    let next = coeffs
                        .iter()
                        .enumerate()
                        .map(|(j, a)| {
                            let lag = h - (j + 1);
                            a * if lag == 0 { 1.0 } else { out[lag - 1] }
                        })
                        .sum();
                    out.push(next);
                }
                Ok(out)
            }
        }
    }

    /// Exact profile for a `lag_order`-window at each horizon.
    pub fn profile(&self, lag_order: usize, horizons: &[usize]) -> Result<ForecastabilityProfile> {
        check_horizons(horizons)?;
        let max_lag = horizons[horizons.len() - 1] + lag_order.max(1) - 1;
        let rho = self.acf(max_lag)?;
        gaussian_profile_from_acf(&rho, lag_order, horizons)
    }
}

fn check_coefficient(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} must satisfy |{name}| < 1 for stationarity, got {value}"
        )))
    }
}

fn check_horizons(horizons: &[usize]) -> Result<()> {
    if horizons.is_empty() {
        return Err(Error::InvalidSpec("horizon list is empty".into()));
    }
    if horizons[0] == 0 || horizons.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSpec(
            "horizons must be positive and strictly ascending".into(),
        ));
    }
    Ok(())
}

/// `F(h) = -0.5 ln(1 - phi^(2h))` for an AR(1).
pub fn ar1_profile(phi: f64, horizons: &[usize]) -> Result<ForecastabilityProfile> {
    check_coefficient("phi", phi)?;
    check_horizons(horizons)?;
    let values = horizons
        .iter()
        .map(|&h| -0.5 * (-phi.powi(2 * h as i32)).ln_1p())
        .collect();
    Ok(ForecastabilityProfile::analytic(horizons.to_vec(), values))
}

/// Exact autocorrelations `rho_1..rho_max_lag` of
/// `(1 - phi B)(1 - seasonal_phi B^period) Y_t = e_t`.
///
/// Built from the MA(inf) weights `psi_j = sum_{a + period*b = j} phi^a Phi^b`,
/// truncated once the remaining tail is below [`ACF_TAIL_TOLERANCE`] of the
/// variance.
pub fn seasonal_ar_acf(
    phi: f64,
    seasonal_phi: f64,
    period: usize,
    max_lag: usize,
) -> Result<Vec<f64>> {
    check_coefficient("phi", phi)?;
    check_coefficient("Phi", seasonal_phi)?;
    if period == 0 {
        return Err(Error::Domain("seasonal period must be positive".into()));
    }

    // |psi_j| <= (j/period + 1) r^j
    let r = phi.abs().max(seasonal_phi.abs().powf(1.0 / period as f64));
    let s = period as f64;

    // psi is the convolution of phi^a with the seasonal weights Phi^(j/period),
    // so psi_j = phi psi_{j-1} + [period | j] Phi^(j/period).
    let seasonal_weight = |j: usize| {
        if j % period == 0 {
            seasonal_phi.powi((j / period) as i32)
        } else {
            0.0
        }
    };
    let mut psi = vec![1.0];
    let mut sum_sq = 1.0;
    let mut j = 0usize;
    loop {
        let next_j = j + 1;
        let jf = next_j as f64;
        let envelope = (jf / s + 1.0).powi(2) * r.powf(2.0 * jf);
        let growth = ((jf / s + 2.0) / (jf / s + 1.0)).powi(2) * r * r;
        let tail_bound = if growth < 1.0 {
            envelope / (1.0 - growth)
        } else {
            f64::INFINITY
        };
        if next_j > max_lag && tail_bound <= ACF_TAIL_TOLERANCE * sum_sq {
            break;
        }
        if next_j > MAX_MA_TERMS {
            return Err(Error::Domain(
                "process too close to a unit root for MA(inf) truncation".into(),
            ));
        }
        let value = phi * psi[j] + seasonal_weight(next_j);
        sum_sq += value * value;
        psi.push(value);
        j = next_j;
    }
    let truncation = psi.len();
    for jj in truncation..truncation + max_lag {
        let value = phi * psi[jj - 1] + seasonal_weight(jj);
        psi.push(value);
    }

    let gamma = |h: usize| -> f64 {
        psi[..truncation]
            .iter()
            .zip(&psi[h..h + truncation])
            .map(|(a, b)| a * b)
            .sum()
    };
    let gamma0 = gamma(0);
    Ok((1..=max_lag).map(|h| gamma(h) / gamma0).collect())
}

/// Gaussian forecastability from an autocorrelation sequence.
///
/// `rho[i]` is the autocorrelation at lag `i + 1`. For each horizon the
/// `lag_order x lag_order` Toeplitz system `R beta = r_h` is solved by
/// Cholesky, with `r_h = (rho_h, ..., rho_{h+p-1})`.
pub fn gaussian_profile_from_acf(
    rho: &[f64],
    lag_order: usize,
    horizons: &[usize],
) -> Result<ForecastabilityProfile> {
    if lag_order == 0 {
        return Err(Error::InvalidSpec("lag order must be at least 1".into()));
    }
    check_horizons(horizons)?;
    let needed = horizons[horizons.len() - 1] + lag_order - 1;
    if rho.len() < needed {
        return Err(Error::Coverage {
            needed,
            available: rho.len(),
        });
    }
    if rho.iter().any(|r| !r.is_finite()) {
        return Err(Error::Domain("autocorrelations must be finite".into()));
    }

    let at = |lag: usize| if lag == 0 { 1.0 } else { rho[lag - 1] };
    let toeplitz = DMatrix::from_fn(lag_order, lag_order, |i, j| at(i.abs_diff(j)));
    let chol = toeplitz.cholesky().ok_or(Error::SingularSystem)?;

    let values = horizons
        .iter()
        .map(|&h| {
            let cross = DVector::from_fn(lag_order, |i, _| at(h + i));
            let beta = chol.solve(&cross);
            let r2 = cross.dot(&beta);
            let residual = 1.0 - r2;
            if residual.is_nan() || residual <= 0.0 {
                return Err(Error::SingularSystem);
            }
            Ok((-0.5 * residual.ln()).max(0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ForecastabilityProfile::analytic(horizons.to_vec(), values))
}

/// Seasonal AR profile for a `lag_order` window.
pub fn seasonal_ar_profile(
    phi: f64,
    seasonal_phi: f64,
    period: usize,
    lag_order: usize,
    horizons: &[usize],
) -> Result<ForecastabilityProfile> {
    GaussianProcessSpec::seasonal_ar(phi, seasonal_phi, period)?.profile(lag_order, horizons)
}

/// Marginal entropy, entropy rate and one-step forecastability of an AR(1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianEntropySummary {
    pub marginal_entropy_nats: f64,
    pub entropy_rate_nats: f64,
    pub one_step_forecastability_nats: f64,
}

/// Only AR(1) is covered; the entropy rate of other specs needs a spectral
/// integral.
pub fn gaussian_entropy_summary(spec: &GaussianProcessSpec) -> Result<GaussianEntropySummary> {
    spec.validate()?;
    let ProcessKind::Ar1 { phi } = spec.kind else {
        return Err(Error::Domain(
            "entropy summary is only available for AR(1) processes".into(),
        ));
    };
    let sigma2 = spec.innovation_variance;
    let log_2pie = (2.0 * std::f64::consts::PI * std::f64::consts::E).ln();
    let one_minus = -(phi * phi) + 1.0;
    let entropy_rate = 0.5 * (log_2pie + sigma2.ln());
    let marginal = 0.5 * (log_2pie + sigma2.ln() - one_minus.ln());
    Ok(GaussianEntropySummary {
        marginal_entropy_nats: marginal,
        entropy_rate_nats: entropy_rate,
        one_step_forecastability_nats: -0.5 * (-(phi * phi)).ln_1p(),
    })
}

/// Levinson–Durbin: AR coefficients `a_1..a_L` reproducing `rho_1..rho_L`,
/// and the prediction error variance relative to the marginal variance.
pub fn yule_walker(rho: &[f64]) -> Result<(Vec<f64>, f64)> {
    let order = rho.len();
    let mut coeffs: Vec<f64> = Vec::with_capacity(order);
    let mut error = 1.0;
    for m in 0..order {
        let acc: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| a * rho[m - j - 1])
            .sum();
        let kappa = (rho[m] - acc) / error;
        if kappa.is_nan() || kappa.abs() >= 1.0 {
            return Err(Error::SingularSystem);
        }
        let previous = coeffs.clone();
        for j in 0..m {
            coeffs[j] = previous[j] - kappa * previous[m - 1 - j];
        }
        coeffs.push(kappa);
        error *= 1.0 - kappa * kappa;
    }
    Ok((coeffs, error))
}

/// Seeded sample path of length `n`.
///
/// Recursion starts from zeros; the first `burn_in` values are discarded.
/// Innovations are standard normal draws from a ChaCha8 stream scaled by
/// `sqrt(innovation_variance)`.
pub fn simulate(
    spec: &GaussianProcessSpec,
    n: usize,
    seed: u64,
    burn_in: usize,
) -> Result<TimeSeries> {
    spec.validate()?;
    if n < 2 {
        return Err(Error::InvalidSeries(format!(
            "simulated series needs at least 2 observations, got {n}"
        )));
    }
    // AR coefficients indexed by lag (index 0 is lag 1).
    let coeffs: Vec<f64> = match &spec.kind {
        ProcessKind::Ar1 { phi } => vec![*phi],
        ProcessKind::SeasonalAr {
            phi,
            seasonal_phi,
            period,
        } => {
            let mut a = vec![0.0; period + 1];
            a[0] += phi;
            a[period - 1] += seasonal_phi;
            a[*period] -= phi * seasonal_phi;
            a
        }
        ProcessKind::ExplicitAcf { rho } => yule_walker(rho)?.0,
    };
    let sigma = spec.innovation_variance.sqrt();
    let mut rng = rng::stream_rng(seed, 0);
    let total = n + burn_in;
    let mut path = Vec::with_capacity(total);
    for t in 0..total {
        let mut value: f64 = coeffs
            .iter()
            .enumerate()
            .take(t)
            .map(|(j, a)| a * path[t - 1 - j])
            .sum();
        let z: f64 = StandardNormal.sample(&mut rng);
        value += sigma * z;
        path.push(value);
    }
    path.drain(..burn_in);
    TimeSeries::new(path)
}
