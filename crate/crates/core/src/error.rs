use thiserror::Error;

/// Errors raised by the model layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a physical formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// A lookup fell outside tabulated data (no extrapolation is done).
    #[error("range error: {what} = {value} outside [{min}, {max}]")]
    Range {
        what: String,
        value: f64,
        min: f64,
        max: f64,
    },

    /// A model object violates one of its structural invariants.
    #[error("validation error: {0}")]
    Validation(String),

    /// A configuration the models deliberately do not cover.
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// An optimization has no feasible point inside its search space.
    /// `limiting` names the stage or noise term that blocks feasibility.
    #[error("infeasible (limited by {limiting}): {detail}")]
    Infeasible { limiting: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

pub(crate) fn require_positive(what: &str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(domain(format!("{what} must be positive and finite, got {value}")))
    }
}

pub(crate) fn require_non_negative(what: &str, value: f64) -> Result<f64> {
    if value >= 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(domain(format!("{what} must be non-negative and finite, got {value}")))
    }
}
