use thiserror::Error;

/// Errors surfaced by tensor construction, transforms, and inverse kernels.
#[derive(Debug, Error)]
pub enum MprodError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("transform matrix rejected: {0}")]
    SingularTransform(String),

    /// A transformed frontal slice that must be invertible is numerically singular.
    #[error("slice {slice} is singular: {reason}")]
    SingularSlice { slice: usize, reason: String },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// An input violated a documented precondition (e.g. a matrix that must be
    /// nilpotent is not).
    #[error("contract violation: {0}")]
    ContractViolation(String),
}

pub type Result<T> = std::result::Result<T, MprodError>;
