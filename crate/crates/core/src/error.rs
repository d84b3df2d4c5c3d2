use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order must be at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },

    #[error("dimension {got} is outside the supported range 1..={max}")]
    InvalidDim { got: usize, max: usize },

    #[error("index {index} is out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("expected {expected} trailing indices, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("support set of size {size} is not realizable at order {order} (needs 1..={max})", max = order - 1)]
    SupportSize { size: usize, order: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("dense tensor needs {cells} cells, cap is {cap}")]
    CapExceeded { cells: u128, cap: usize },

    #[error("entry {0} is negative or not a number")]
    NegativeValue(f64),

    #[error("arithmetic overflow or underflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("verification failed: {0}")]
    Verification(String),
}
