//! Error type shared by every module of the core crate.

use thiserror::Error;

/// Errors raised by validation, belief computation, certification and simulation.
///
/// Violated equilibrium conditions are *not* errors: they are reported as data inside an
/// [`EquilibriumCertificate`](crate::certifier::EquilibriumCertificate). Errors are reserved
/// for inputs outside the model's domain and for structurally undefined expressions.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    /// A probability-like parameter lies outside its admissible range.
    #[error("probability range: {name} = {value} must lie in {range}")]
    ProbabilityRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// The voter does not strictly prefer state-matching policies.
    #[error("payoff monotonicity: {0}")]
    PayoffMonotonicity(&'static str),

    /// A rent distribution has a negative upper bound.
    #[error("negative rent bound: {name} = {value}")]
    NegativeRentBound { name: &'static str, value: f64 },

    /// A parameter is NaN or infinite.
    #[error("non-finite value for {0}")]
    NonFinite(&'static str),

    /// The operation needs bureaucratic influence strictly inside (0, 1).
    #[error("interior bureaucratic influence required, got lambda = {0}")]
    EndpointLambda(f64),

    /// A quantile was requested for a level outside [0, 1].
    #[error("quantile level {0} outside [0, 1]")]
    QuantileRange(f64),

    /// A closed form is undefined because a denominator is not positive.
    #[error("structural error: {0}")]
    Structural(String),

    /// Bayes' rule is undefined because the conditioning event has probability zero.
    #[error("degenerate posterior: {0}")]
    DegeneratePosterior(&'static str),

    /// The requested operation is not available for this equilibrium class.
    #[error("{op} is not available for class {class}")]
    UnsupportedClass { op: &'static str, class: String },

    /// An operation was called outside its stated domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A strategy profile was requested for a class that is not certified.
    #[error("class {class} is not certified at these parameters (failing: {failing})")]
    Uncertified { class: String, failing: String },

    /// A configuration key is not part of the parameter schema.
    #[error("unknown parameter key `{0}`")]
    UnknownKey(String),

    /// A configuration value could not be parsed as a number.
    #[error("invalid value for `{key}`: `{value}`")]
    InvalidValue { key: String, value: String },

    /// A configuration document could not be parsed.
    #[error("config parse error: {0}")]
    Config(String),
}

impl ModelError {
    /// True when the error stems from invalid user-supplied parameters or configuration
    /// (as opposed to an operation being called outside its domain).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            ModelError::ProbabilityRange { .. }
                | ModelError::PayoffMonotonicity(_)
                | ModelError::NegativeRentBound { .. }
                | ModelError::NonFinite(_)
                | ModelError::UnknownKey(_)
                | ModelError::InvalidValue { .. }
                | ModelError::Config(_)
        )
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, ModelError>;
