use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Caller violated an operation precondition (order or mode mismatch,
    /// malformed input, wrong parameter shape).
    #[error("usage error: {0}")]
    Usage(String),

    #[error("singular denominator: constant term of {series} is zero")]
    SingularDenominator { series: String },

    #[error("index {index} exceeds truncation order {order}")]
    Range { index: usize, order: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("divergent sum: {0}")]
    DivergentSum(String),

    #[error("tail bound {tail_bound:e} did not reach tolerance after {terms} terms")]
    TailNotConverged { terms: usize, tail_bound: f64 },

    #[error("hazard undefined at {point:?}: reliability is zero")]
    UndefinedHazard { point: Vec<u64> },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn invalid(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
