//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by the lattice and kernel routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on the arguments was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Evaluation at a hyper-singular point of a kernel.
    #[error("singular point: {0}")]
    SingularPoint(String),

    /// An iterative or truncated scheme failed to reach the requested
    /// tolerance within its configured budget.
    #[error("non-convergence: {0}")]
    NonConvergence(String),

    /// Vector/matrix dimensions do not match.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn singular(msg: impl Into<String>) -> Self {
        Error::SingularPoint(msg.into())
    }

    pub(crate) fn no_convergence(msg: impl Into<String>) -> Self {
        Error::NonConvergence(msg.into())
    }
}
