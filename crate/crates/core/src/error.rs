use thiserror::Error;

/// Errors raised by the distribution kernel, the decision algebra and the tests built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid error budget: alpha + beta = {sum} exceeds 1")]
    InvalidBudget { sum: f64 },

    #[error("invalid level: {0}")]
    InvalidLevel(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("design matrix is rank deficient (rank {rank} < {columns} columns)")]
    SingularDesign { rank: usize, columns: usize },

    #[error("contrast matrix is rank deficient")]
    SingularContrast,

    #[error("degenerate fit: residual variance is zero")]
    DegenerateFit,

    #[error("capacity exceeded: {needed} relabelings > limit {limit}")]
    Capacity { needed: u128, limit: u128 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
