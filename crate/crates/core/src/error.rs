use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {input:?}: {reason}")]
    Syntax { input: String, reason: &'static str },
    #[error("continued-fraction expansion requires a non-negative rational")]
    NegativeInput,
    #[error("convergent index {k} out of range: need 0 < k < {n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("{value} has no convergent within {limit}")]
    Unrepresentable { value: String, limit: String },
    #[error("invalid rounding policy {input:?}: {reason}")]
    Policy { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
