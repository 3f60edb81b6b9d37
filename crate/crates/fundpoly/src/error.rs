use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("size limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("polyhedron is empty")]
    Empty,
    #[error("objective is unbounded")]
    Unbounded,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("point is outside the fundamental polytope")]
    OutsidePolytope,
    #[error("decoding contradiction at variable node {0}")]
    Contradiction(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
