use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Some affine/linear dependence that the operation requires to be absent.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A tuple of objects violates the general-position condition; indices are 1-based.
    #[error("general position violated by tuple {indices:?}: {reason}")]
    GeneralPosition { indices: Vec<usize>, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("predicted entry size of {predicted_bits} bits exceeds the budget of {budget_bits} bits")]
    GuardrailRefusal { predicted_bits: u64, budget_bits: u64 },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
