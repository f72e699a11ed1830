use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exact evaluation unavailable: {0}")]
    ExactUnavailable(String),

    #[error("Gram matrix is singular or not positive definite (pivot {pivot} at index {index})")]
    SingularGram { index: usize, pivot: f64 },

    #[error("degree-1 solve is asymmetric (|beta - gamma| = {observed:.3e} > {tolerance:.0e}); raise the truncation degree")]
    Asymmetry { observed: f64, tolerance: f64 },

    #[error("undecided: {0}")]
    Undecided(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("only the graded monomial ordering is supported")]
    NonGradedOrdering,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
