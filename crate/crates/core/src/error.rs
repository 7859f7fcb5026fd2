use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch { what: &'static str, expected: usize, found: usize },
    #[error("matrix is singular to working precision (pivot {pivot})")]
    Singular { pivot: usize },
    #[error("matrix is not positive definite (failed at index {index}); use the general solver")]
    NotPositiveDefinite { index: usize },
    #[error("{what} did not converge within {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("inconsistent ranks: {identity} evaluates to {value}")]
    Inconsistent { identity: &'static str, value: i64 },
    #[error("cannot group eigenvalues into quadruples: {0}")]
    Grouping(String),
    #[error("spectrum does not match any valid structure: {0}")]
    Spectrum(String),
    #[error("eigenvector block {0} is below the norm floor")]
    DegenerateVector(&'static str),
    #[error("formulation {0} is not supported here")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
