use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid information set: {0}")]
    InvalidSpec(String),

    #[error("insufficient data: {needed} observations needed, {available} available")]
    InsufficientData { needed: usize, available: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("Toeplitz system is not positive definite")]
    SingularSystem,

    #[error("autocorrelation sequence too short: lag {needed} needed, {available} given")]
    Coverage { needed: usize, available: usize },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("profile has no value at horizon {0}")]
    MissingHorizon(usize),
}
