//! Shared error type for the estimator layer.

/// Errors produced by construction and evaluation of estimators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Distribution parameters violate family constraints.
    #[error("invalid distribution parameters: {0}")]
    InvalidParameters(String),

    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An order-statistic or shift index is out of its valid range.
    #[error("index out of range: {0}")]
    IndexRange(String),

    /// The model cannot support the requested derivation (e.g. the scale
    /// root-find cannot bracket because the density vanishes).
    #[error("model unsupported: {0}")]
    ModelUnsupported(String),

    /// A density entering a denominator is zero at the evaluation point.
    #[error("degenerate density: {0}")]
    DegenerateDensity(String),

    /// The sample MAD is zero, so depth weights are undefined.
    #[error("degenerate scale: {0}")]
    DegenerateScale(String),

    /// A bootstrap resample has zero MAD; the replicate should be skipped
    /// and counted rather than aborting a run.
    #[error("degenerate bootstrap resample (zero MAD)")]
    DegenerateResample,

    /// Exhaustive enumeration was requested beyond the nⁿ size guard.
    #[error("enumeration size limit exceeded: n = {n} > {max}")]
    SizeLimit { n: usize, max: usize },

    /// Too few draws to run a statistical check.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A model/weight combination fails the numeric integrability check.
    #[error("non-integrable combination: {0}")]
    Integrability(String),
}

pub type Result<T> = std::result::Result<T, Error>;
