use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime at most 2^31")]
    InvalidField(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("exponent overflow (limit {limit})", limit = u16::MAX)]
    ExponentOverflow,
    #[error("operands belong to different ring contexts")]
    ContextMismatch,
    #[error("input is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("free module rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("the zero module has no depth")]
    ZeroModule,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("resolution truncated at length {0}; index {1} is not certified")]
    Truncated(usize, usize),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
