use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("x* is not a subgradient of f at x (delta = {delta:e}, tolerance = {tolerance:e})")]
    InvalidSubgradient { delta: f64, tolerance: f64 },

    #[error("point already satisfies the constraint (residual norm {residual:e})")]
    FeasiblePoint { residual: f64 },

    #[error("hyperplane normal is zero")]
    ZeroNormal,

    #[error("line search direction is zero")]
    ZeroDirection,

    #[error("box does not contain the origin (coordinate {index})")]
    BoxWithoutZero { index: usize },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("groups do not partition 0..{dim}: {reason}")]
    InvalidGroups { dim: usize, reason: String },

    #[error("preset `{0}` requires a lambda")]
    MissingLambda(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("step sizes violate tau*sigma < 1/|A|^2 ({product:e} >= {bound:e})")]
    StepSizeViolation { product: f64, bound: f64 },

    #[error("no candidate lambda reproduced the input vector")]
    CertificationFailed,

    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },

    #[error("i/o error on {path:?}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
