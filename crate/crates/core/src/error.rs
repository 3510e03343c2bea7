use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative index {0} where a nonnegative one is required")]
    NegativeIndex(i64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("polynomial has a term with nonzero q-exponent; cannot project to the cyclotomic ring")]
    NonZeroQExponent,

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("negative supernomial entry L_{index} = {value}")]
    NegativeSupernomialEntry { index: usize, value: i64 },

    #[error("support is not finite: L_{index} = {value} < 0")]
    NonFinite { index: usize, value: i64 },

    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,

    #[error("site vector is not decomposable into elementary vectors: {0}")]
    NotDecomposable(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
