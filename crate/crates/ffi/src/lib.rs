//! C ABI for the forecastability library.
//!
//! Conventions:
//! - Every fallible function returns an [`FcStatus`]; results go through
//!   out-pointers. On failure the out-pointer is left untouched and
//!   [`fc_last_error_message`] describes the error.
//! - Objects are opaque handles created by `fc_*_new` / producer functions
//!   and released with the matching `fc_*_free`. Freeing NULL is a no-op.
//! - Arrays are `(pointer, length)` pairs; a zero length permits NULL.
//! - Panics never cross the boundary; they surface as `FC_STATUS_PANIC`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use forecastability::analytic::{seasonal_ar_profile, GaussianProcessSpec, ProcessKind};
use forecastability::{
    ar1_profile, decompose_loss, digamma, estimate_profile, fano_bound, finite_window_budget,
    gaussian_profile_from_acf, kl_entropy, ksg_mutual_information, permutation_test, pinsker_bound,
    simulate, Error, EstimatorConfig, ForecastabilityProfile, InformationSetSpec, Points,
    ProbeEvaluation, ProfileSource, SignificanceResult, TimeSeries,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InsufficientData = 3,
    DomainError = 4,
    SingularSystem = 5,
    CoverageError = 6,
    DegenerateSample = 7,
    ConfigError = 8,
    MissingHorizon = 9,
    Panic = 10,
}

impl From<&Error> for FcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidSeries(_) | Error::InvalidSpec(_) => FcStatus::InvalidArgument,
            Error::InsufficientData { .. } => FcStatus::InsufficientData,
            Error::Domain(_) => FcStatus::DomainError,
            Error::SingularSystem => FcStatus::SingularSystem,
            Error::Coverage { .. } => FcStatus::CoverageError,
            Error::DegenerateSample(_) => FcStatus::DegenerateSample,
            Error::Config(_) => FcStatus::ConfigError,
            Error::MissingHorizon(_) => FcStatus::MissingHorizon,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(msg).ok());
}

struct Failure(FcStatus);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        set_last_error(e.to_string());
        Failure(FcStatus::from(&e))
    }
}

fn fail(status: FcStatus, msg: &str) -> Failure {
    set_last_error(msg);
    Failure(status)
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            FcStatus::Ok
        }
        Ok(Err(Failure(status))) => status,
        Err(_) => {
            set_last_error("internal panic");
            FcStatus::Panic
        }
    }
}

unsafe fn slice<'a, T>(ptr: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(fail(FcStatus::NullPointer, &format!("{what} is NULL")));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn out_ref<'a, T>(ptr: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    ptr.as_mut()
        .ok_or_else(|| fail(FcStatus::NullPointer, &format!("{what} is NULL")))
}

unsafe fn handle<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, Failure> {
    ptr.as_ref()
        .ok_or_else(|| fail(FcStatus::NullPointer, &format!("{what} is NULL")))
}

/// Message for the most recent failure on this thread, or NULL. Valid until
/// the next `fc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn fc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// ---------------------------------------------------------------- series

/// Opaque time series.
pub struct FcSeries(TimeSeries);

#[no_mangle]
pub unsafe extern "C" fn fc_series_new(
    values: *const f64,
    len: usize,
    out: *mut *mut FcSeries,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let values = slice(values, len, "values")?;
        let series = TimeSeries::new(values.to_vec())?;
        *out = Box::into_raw(Box::new(FcSeries(series)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn fc_series_len(series: *const FcSeries) -> usize {
    series.as_ref().map_or(0, |s| s.0.len())
}

/// Borrowed view of the observations; valid while `series` lives.
#[no_mangle]
pub unsafe extern "C" fn fc_series_values(series: *const FcSeries) -> *const f64 {
    series
        .as_ref()
        .map_or(std::ptr::null(), |s| s.0.values().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn fc_series_free(series: *mut FcSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

unsafe fn simulate_into(
    spec: Result<GaussianProcessSpec, Error>,
    n: usize,
    seed: u64,
    burn_in: usize,
    out: *mut *mut FcSeries,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let series = simulate(&spec?, n, seed, burn_in)?;
        *out = Box::into_raw(Box::new(FcSeries(series)));
        Ok(())
    })
}

/// AR(1) sample path; see `fc_simulate_seasonal_ar` for the seasonal model.
#[no_mangle]
pub unsafe extern "C" fn fc_simulate_ar1(
    phi: f64,
    innovation_variance: f64,
    n: usize,
    seed: u64,
    burn_in: usize,
    out: *mut *mut FcSeries,
) -> FcStatus {
    let spec = GaussianProcessSpec::new(ProcessKind::Ar1 { phi }, innovation_variance);
    simulate_into(spec, n, seed, burn_in, out)
}

#[no_mangle]
pub unsafe extern "C" fn fc_simulate_seasonal_ar(
    phi: f64,
    seasonal_phi: f64,
    period: usize,
    innovation_variance: f64,
    n: usize,
    seed: u64,
    burn_in: usize,
    out: *mut *mut FcSeries,
) -> FcStatus {
    let spec = GaussianProcessSpec::new(
        ProcessKind::SeasonalAr {
            phi,
            seasonal_phi,
            period,
        },
        innovation_variance,
    );
    simulate_into(spec, n, seed, burn_in, out)
}

// ---------------------------------------------------------------- profiles

/// Opaque forecastability profile.
pub struct FcProfile(ForecastabilityProfile);

/// Estimator settings; obtain defaults from `fc_estimator_config_default`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FcEstimatorConfig {
    pub k: usize,
    pub jitter_scale: f64,
    pub standardize: bool,
    pub seed: u64,
}

impl From<FcEstimatorConfig> for EstimatorConfig {
    fn from(c: FcEstimatorConfig) -> Self {
        EstimatorConfig {
            k: c.k,
            jitter_scale: c.jitter_scale,
            standardize: c.standardize,
            seed: c.seed,
            ..EstimatorConfig::default()
        }
    }
}

#[no_mangle]
pub extern "C" fn fc_estimator_config_default() -> FcEstimatorConfig {
    let d = EstimatorConfig::default();
    FcEstimatorConfig {
        k: d.k,
        jitter_scale: d.jitter_scale,
        standardize: d.standardize,
        seed: d.seed,
    }
}

unsafe fn config_or_default(config: *const FcEstimatorConfig) -> EstimatorConfig {
    config
        .as_ref()
        .map_or_else(EstimatorConfig::default, |c| (*c).into())
}

fn emit_profile(out: &mut *mut FcProfile, profile: ForecastabilityProfile) {
    *out = Box::into_raw(Box::new(FcProfile(profile)));
}

#[no_mangle]
pub unsafe extern "C" fn fc_ar1_profile(
    phi: f64,
    horizons: *const usize,
    n_horizons: usize,
    out: *mut *mut FcProfile,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let horizons = slice(horizons, n_horizons, "horizons")?;
        emit_profile(out, ar1_profile(phi, horizons)?);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn fc_seasonal_ar_profile(
    phi: f64,
    seasonal_phi: f64,
    period: usize,
    lag_order: usize,
    horizons: *const usize,
    n_horizons: usize,
    out: *mut *mut FcProfile,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let horizons = slice(horizons, n_horizons, "horizons")?;
        emit_profile(
            out,
            seasonal_ar_profile(phi, seasonal_phi, period, lag_order, horizons)?,
        );
        Ok(())
    })
}

/// Gaussian profile from autocorrelations `rho[0] = rho_1, ..., rho[n_rho-1]`.
#[no_mangle]
pub unsafe extern "C" fn fc_acf_profile(
    rho: *const f64,
    n_rho: usize,
    lag_order: usize,
    horizons: *const usize,
    n_horizons: usize,
    out: *mut *mut FcProfile,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let rho = slice(rho, n_rho, "rho")?;
        let horizons = slice(horizons, n_horizons, "horizons")?;
        emit_profile(out, gaussian_profile_from_acf(rho, lag_order, horizons)?);
        Ok(())
    })
}

/// KSG profile of `series`. `config` may be NULL for defaults.
#[no_mangle]
pub unsafe extern "C" fn fc_estimate_profile(
    series: *const FcSeries,
    lag_order: usize,
    horizons: *const usize,
    n_horizons: usize,
    config: *const FcEstimatorConfig,
    out: *mut *mut FcProfile,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let series = handle(series, "series")?;
        let horizons = slice(horizons, n_horizons, "horizons")?;
        let spec = InformationSetSpec::new(lag_order, horizons.to_vec())?;
        emit_profile(
            out,
            estimate_profile(&series.0, &spec, &config_or_default(config))?,
        );
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn fc_profile_len(profile: *const FcProfile) -> usize {
    profile.as_ref().map_or(0, |p| p.0.len())
}

/// True for estimated profiles, false for analytic ones.
#[no_mangle]
pub unsafe extern "C" fn fc_profile_is_estimated(profile: *const FcProfile) -> bool {
    profile
        .as_ref()
        .is_some_and(|p| p.0.source() == ProfileSource::Estimated)
}

/// Entry `index`: horizon, value in nats and gap flag. `value` is set to NaN
/// at a gap.
#[no_mangle]
pub unsafe extern "C" fn fc_profile_get(
    profile: *const FcProfile,
    index: usize,
    horizon: *mut usize,
    value_nats: *mut f64,
    is_gap: *mut bool,
) -> FcStatus {
    guard(|| {
        let p = &handle(profile, "profile")?.0;
        let horizon = out_ref(horizon, "horizon")?;
        let value_nats = out_ref(value_nats, "value_nats")?;
        let is_gap = out_ref(is_gap, "is_gap")?;
        if index >= p.len() {
            return Err(fail(
                FcStatus::InvalidArgument,
                "profile index out of range",
            ));
        }
        *horizon = p.horizons()[index];
        let v = p.values_nats()[index];
        *value_nats = v.unwrap_or(f64::NAN);
        *is_gap = v.is_none();
        Ok(())
    })
}

/// Pair count used at entry `index`; 0 for analytic profiles.
#[no_mangle]
pub unsafe extern "C" fn fc_profile_n_effective(profile: *const FcProfile, index: usize) -> usize {
    profile
        .as_ref()
        .and_then(|p| p.0.estimator_meta())
        .and_then(|m| m.n_effective.get(index).copied())
        .unwrap_or(0)
}

#[no_mangle]
pub unsafe extern "C" fn fc_profile_free(profile: *mut FcProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Writes `n_horizons` truncation-budget values into `delta_nats`.
#[no_mangle]
pub unsafe extern "C" fn fc_finite_window_budget(
    series: *const FcSeries,
    p_small: usize,
    p_large: usize,
    horizons: *const usize,
    n_horizons: usize,
    config: *const FcEstimatorConfig,
    delta_nats: *mut f64,
) -> FcStatus {
    guard(|| {
        let series = handle(series, "series")?;
        let horizons = slice(horizons, n_horizons, "horizons")?;
        if n_horizons > 0 && delta_nats.is_null() {
            return Err(fail(FcStatus::NullPointer, "delta_nats is NULL"));
        }
        let budget = finite_window_budget(
            &series.0,
            p_small,
            p_large,
            horizons,
            &config_or_default(config),
        )?;
        std::slice::from_raw_parts_mut(delta_nats, n_horizons).copy_from_slice(&budget.delta_nats);
        Ok(())
    })
}

// ---------------------------------------------------------------- significance

/// Opaque list of per-horizon permutation results.
pub struct FcSignificance(Vec<SignificanceResult>);

#[no_mangle]
pub unsafe extern "C" fn fc_permutation_test(
    series: *const FcSeries,
    lag_order: usize,
    horizons: *const usize,
    n_horizons: usize,
    config: *const FcEstimatorConfig,
    replicates: usize,
    seed: u64,
    out: *mut *mut FcSignificance,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let series = handle(series, "series")?;
        let horizons = slice(horizons, n_horizons, "horizons")?;
        let spec = InformationSetSpec::new(lag_order, horizons.to_vec())?;
        let results = permutation_test(
            &series.0,
            &spec,
            &config_or_default(config),
            replicates,
            seed,
        )?;
        *out = Box::into_raw(Box::new(FcSignificance(results)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn fc_significance_len(results: *const FcSignificance) -> usize {
    results.as_ref().map_or(0, |r| r.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn fc_significance_get(
    results: *const FcSignificance,
    index: usize,
    horizon: *mut usize,
    observed_nats: *mut f64,
    p_value: *mut f64,
) -> FcStatus {
    guard(|| {
        let r = &handle(results, "results")?.0;
        let horizon = out_ref(horizon, "horizon")?;
        let observed_nats = out_ref(observed_nats, "observed_nats")?;
        let p_value = out_ref(p_value, "p_value")?;
        let item = r
            .get(index)
            .ok_or_else(|| fail(FcStatus::InvalidArgument, "result index out of range"))?;
        *horizon = item.horizon;
        *observed_nats = item.observed_nats;
        *p_value = item.p_value;
        Ok(())
    })
}

/// Borrowed null statistics of entry `index`; `len` receives their count.
/// NULL if the index is out of range.
#[no_mangle]
pub unsafe extern "C" fn fc_significance_null_samples(
    results: *const FcSignificance,
    index: usize,
    len: *mut usize,
) -> *const f64 {
    let Some(item) = results.as_ref().and_then(|r| r.0.get(index)) else {
        return std::ptr::null();
    };
    if let Some(len) = len.as_mut() {
        *len = item.null_samples.len();
    }
    item.null_samples.as_ptr()
}

#[no_mangle]
pub unsafe extern "C" fn fc_significance_free(results: *mut FcSignificance) {
    if !results.is_null() {
        drop(Box::from_raw(results));
    }
}

// ---------------------------------------------------------------- estimators

#[no_mangle]
pub unsafe extern "C" fn fc_digamma(x: f64, out: *mut f64) -> FcStatus {
    guard(|| {
        *out_ref(out, "out")? = digamma(x)?;
        Ok(())
    })
}

/// `data` holds `n` row-major points of dimension `dim`.
#[no_mangle]
pub unsafe extern "C" fn fc_kl_entropy(
    data: *const f64,
    n: usize,
    dim: usize,
    k: usize,
    out: *mut f64,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let data = slice(data, n.saturating_mul(dim), "data")?;
        let points = Points::from_flat(data.to_vec(), dim)?;
        *out = kl_entropy(&points, k)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn fc_ksg_mutual_information(
    x: *const f64,
    x_dim: usize,
    y: *const f64,
    y_dim: usize,
    n: usize,
    k: usize,
    out: *mut f64,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let xs = Points::from_flat(slice(x, n.saturating_mul(x_dim), "x")?.to_vec(), x_dim)?;
        let ys = Points::from_flat(slice(y, n.saturating_mul(y_dim), "y")?.to_vec(), y_dim)?;
        *out = ksg_mutual_information(&xs, &ys, k)?;
        Ok(())
    })
}

// ---------------------------------------------------------------- diagnostics

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct FcLossDecomposition {
    pub horizon: usize,
    pub n_eval: usize,
    pub expected_loss_nats: f64,
    pub marginal_entropy_nats: f64,
    pub forecastability_nats: f64,
    pub exploitability_nats: f64,
    pub exploitation_ratio: f64,
    pub approximation_gap_nats: f64,
    pub low_forecastability: bool,
}

/// Decomposes a probe's loss at `horizon`. `origins[i]` is the forecast
/// origin of `log_densities[i]`; the scored outcome is `series[origins[i] + horizon]`.
#[no_mangle]
pub unsafe extern "C" fn fc_decompose_loss(
    series: *const FcSeries,
    profile: *const FcProfile,
    horizon: usize,
    origins: *const usize,
    log_densities: *const f64,
    n_eval: usize,
    config: *const FcEstimatorConfig,
    out: *mut FcLossDecomposition,
) -> FcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let series = handle(series, "series")?;
        let profile = handle(profile, "profile")?;
        let origins = slice(origins, n_eval, "origins")?;
        let log_densities = slice(log_densities, n_eval, "log_densities")?;
        let probe = ProbeEvaluation::new(horizon, origins.to_vec(), log_densities.to_vec())?;
        let d = decompose_loss(&probe, &series.0, &profile.0, &config_or_default(config))?;
        *out = FcLossDecomposition {
            horizon: d.horizon,
            n_eval: d.n_eval,
            expected_loss_nats: d.expected_loss_nats,
            marginal_entropy_nats: d.marginal_entropy_nats,
            forecastability_nats: d.forecastability_nats,
            exploitability_nats: d.exploitability_nats,
            exploitation_ratio: d.exploitation_ratio,
            approximation_gap_nats: d.approximation_gap_nats,
            low_forecastability: d.low_forecastability,
        };
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn fc_pinsker_bound(forecastability_nats: f64, out: *mut f64) -> FcStatus {
    guard(|| {
        *out_ref(out, "out")? = pinsker_bound(forecastability_nats)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn fc_fano_bound(
    forecastability_nats: f64,
    marginal_entropy_nats: f64,
    alphabet_size: usize,
    min_error: *mut f64,
    vacuous: *mut bool,
) -> FcStatus {
    guard(|| {
        let min_error = out_ref(min_error, "min_error")?;
        let vacuous = out_ref(vacuous, "vacuous")?;
        let b = fano_bound(forecastability_nats, marginal_entropy_nats, alphabet_size)?;
        *min_error = b.min_error;
        *vacuous = b.vacuous;
        Ok(())
    })
}
