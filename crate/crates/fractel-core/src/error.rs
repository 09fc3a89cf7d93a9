//! Error types shared across the crate.

use thiserror::Error;

/// Failure modes of the numerical kernels and samplers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum CoreError {
    /// Input outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Result not representable in f64.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The method cannot certify its accuracy target for these arguments.
    #[error("accuracy loss: {0}")]
    AccuracyLoss(String),

    /// A quadrature or series did not converge within its budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// An iterative sampler exceeded its iteration cap.
    #[error("iteration budget exceeded: {0}")]
    Budget(String),

    /// Parameter combination valid per se but not supported by this routine.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Malformed run configuration.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A tabulated sampler was queried outside its precomputed range.
    #[error("table range exceeded: {0}")]
    TableRange(String),
}

impl CoreError {
    /// True for errors caused by bad inputs rather than numerical failure.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            CoreError::Domain(_) | CoreError::Unsupported(_) | CoreError::InvalidConfig(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, CoreError>;
