use thiserror::Error;

/// Errors raised by the symbolic and dense layers of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("level {k} is below the minimum {min} required here")]
    LevelTooLow { k: u32, min: u32 },

    #[error("level {k} exceeds the supported maximum {max}")]
    LevelTooHigh { k: u32, max: u32 },

    #[error("tensor operand level {inner} exceeds outer level {outer}")]
    LevelOrder { outer: u32, inner: u32 },

    #[error("list length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("matrix is not square: {rows} rows, row of length {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("binary matrix is singular over GF(2)")]
    SingularMatrix,

    #[error("operator is not unitary (deviation {0:.3e})")]
    NonUnitary(f64),

    #[error("entry {index} has modulus {modulus:.6}, expected 1")]
    NonUnitModulus { index: usize, modulus: f64 },

    #[error("size guard exceeded: {what} = {value}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
