use thiserror::Error;

/// Errors produced by algebra, representation and matrix operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("generator count {n} exceeds the supported maximum of {max}")]
    TooManyGenerators { n: usize, max: usize },

    #[error("generator {index} has a zero square")]
    ZeroSquare { index: usize },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("operation requires the standard signature (every generator squares to -1)")]
    NonstandardSignature,

    #[error("operation requires {0}")]
    Parity(String),

    #[error("invalid generator count: {0}")]
    InvalidGeneratorCount(String),

    #[error("blade mask {mask:#b} is out of range for {n} generators")]
    BladeOutOfRange { mask: u32, n: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular to working tolerance")]
    Singular,

    #[error("element is not invertible")]
    NotInvertible,
}

pub type Result<T> = std::result::Result<T, Error>;
