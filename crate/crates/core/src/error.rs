use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("grid of {fine} cells cannot be coarsened to {coarse} cells")]
    IncompatibleCoarsening { fine: usize, coarse: usize },

    #[error("matrix is not positive definite (pivot {pivot} at row {index})")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("zero or non-finite diagonal entry at row {0}")]
    ZeroDiagonal(usize),

    #[error("invalid smoother parameters: {0}")]
    InvalidSmoother(String),

    #[error("no tabulated optimized 4th-kind coefficients for order {0} (available: 1..=16)")]
    BetaOrderOutOfRange(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("preconditioner is not positive definite (breakdown at iteration {iteration})")]
    IndefinitePreconditioner { iteration: usize },

    #[error("no sign change on [1, 1e12]: the full cycle bound is always better")]
    NoCriticalValue,

    #[error("operator too large for dense assembly ({dim} > {limit})")]
    TooLarge { dim: usize, limit: usize },

    #[error("all tuning candidates failed for case {0}")]
    TuningFailed(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
