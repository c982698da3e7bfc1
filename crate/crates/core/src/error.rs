use thiserror::Error;

/// Errors raised by the exact arithmetic, enumeration, and sampling layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has zero constant term and cannot be inverted")]
    SingularSeries,

    #[error("division by exact zero")]
    DivisionByZero,

    #[error("infinite product diverges: |q| = {q} is not greater than 1")]
    Divergence { q: String },

    #[error("invalid parameter: {0}")]
    Usage(String),

    #[error("enumeration budget exceeded: {what} needs {needed} candidates, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        budget: String,
    },

    #[error("negative kernel entry K({a},{b}) = {value}")]
    NegativeProbability { a: String, b: usize, value: String },

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
