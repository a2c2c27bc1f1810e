use thiserror::Error;

/// Errors raised by the library. Each variant corresponds to a class of
/// contract failure so callers (and the CLI) can report them distinctly.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain an operation accepts.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// An input violates a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A graph does not belong to the declared class.
    #[error("classification error: {0}")]
    Classification(String),
    /// Not enough blocks or room to fit the requested family.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// A numeric argument is outside the function's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Exhaustive search refused because the instance is too large.
    #[error("search refused: {0}")]
    Infeasible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
