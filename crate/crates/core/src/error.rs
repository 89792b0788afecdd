use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad category of a failure, used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input.
    Validation,
    /// The numerical problem is unbounded, degenerate or otherwise unsolvable.
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("points {i} and {j} are coincident (distance {distance:e})")]
    CoincidentPoints { i: usize, j: usize, distance: f64 },

    #[error("point {index} lies outside the domain (excess {excess:e})")]
    OutsideDomain { index: usize, excess: f64 },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The admissible radii are unbounded, so the extrinsic vertex area is +∞.
    #[error("unbounded instance: {0}")]
    Unbounded(String),

    #[error("degenerate polytope: {0}")]
    Degenerate(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("{n} points exceed the exact-search limit of {max}; use the greedy algorithm")]
    SizeLimit { n: usize, max: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid mesh: {0}")]
    Mesh(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Unbounded(_) | Error::Degenerate(_) => ErrorKind::Numerical,
            _ => ErrorKind::Validation,
        }
    }
}
