use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid lognormal parameters: mu = {mu}, sigma = {sigma}")]
    InvalidParams { mu: f64, sigma: f64 },

    #[error("a series needs at least one paper")]
    EmptySeries,

    #[error("citation count must be positive and finite, got {0}")]
    NonPositiveCitations(f64),

    #[error("invalid threshold set: {0}")]
    InvalidThresholds(String),

    #[error("threshold {0} is not part of this table")]
    UnknownThreshold(f64),

    #[error("root is not bracketed on [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("power-law fit requires strictly positive coordinates, got ({x}, {y})")]
    NonPositivePoint { x: f64, y: f64 },

    #[error("{0} has zero variance")]
    ZeroVariance(&'static str),

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
}
