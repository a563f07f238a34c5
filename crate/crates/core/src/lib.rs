//! Forecastability profiles for univariate time series.
//!
//! Forecastability at horizon `h` is the mutual information between the
//! value `h` steps ahead and a declared lag window of the series' own past.
//! It is the largest reduction in expected log loss any forecaster using
//! that window can obtain over the unconditional (marginal) predictor.
//!
//! The crate is organised as:
//!
//! - [`series`], [`embed`], [`profile`]: domain types and lag embedding.
//! - [`analytic`]: exact Gaussian profiles and a seeded simulator.
//! - [`estimators`]: Kozachenko–Leonenko entropy, KSG mutual information,
//!   profile estimation and the finite-window truncation budget.
//! - [`significance`]: permutation-null p-values per horizon.
//! - [`diagnostics`]: loss decomposition for a probe forecaster, plus the
//!   Fano and Pinsker floors.
//! - [`cli`]: the command-line front end used by the `forecastability` binary.

pub mod analytic;
pub mod cli;
pub mod diagnostics;
pub mod embed;
pub mod error;
pub mod estimators;
pub mod points;
pub mod profile;
pub mod rng;
pub mod series;
pub mod significance;

pub use analytic::{
    ar1_profile, gaussian_entropy_summary, gaussian_profile_from_acf, seasonal_ar_acf, simulate,
    GaussianEntropySummary, GaussianProcessSpec, ProcessKind,
};
pub use diagnostics::{
    decompose_loss, fano_bound, pinsker_bound, FanoBound, FloorBounds, LossDecomposition,
    ProbeEvaluation,
};
pub use embed::{lag_embed, EmbeddedPairs};
pub use error::{Error, Result};
pub use estimators::{
    digamma, estimate_profile, finite_window_budget, kl_entropy, ksg_mutual_information,
    EstimatorConfig, FiniteWindowBudget, NeighbourSearch,
};
pub use points::Points;
pub use profile::{EstimatorMeta, ForecastabilityProfile, ProfileSource};
pub use series::{InformationSetSpec, TimeSeries};
pub use significance::{permutation_test, SignificanceResult};
