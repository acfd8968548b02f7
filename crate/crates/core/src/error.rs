use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at s = {0}")]
    Pole(Complex64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature failed to reach tolerance (estimate {estimate:e}, error {error:e})")]
    Quadrature { estimate: f64, error: f64 },

    #[error("line integral tail {tail:e} too large against accumulated value {total:e}")]
    Tail { tail: f64, total: f64 },

    #[error("pole at s = {0} lies on the rectangle boundary")]
    PoleOnBoundary(f64),

    #[error("series did not converge: {0}")]
    Convergence(String),

    #[error("oscillatory integral did not stabilize (c = {c}, spread {spread:e})")]
    Oscillation { c: f64, spread: f64 },

    #[error("table size {requested} exceeds the memory budget of {budget} entries")]
    Capacity { requested: usize, budget: usize },

    #[error("tail bound {bound:e} cannot certify tolerance {tol:e} within table limit {limit}")]
    TailBound { bound: f64, tol: f64, limit: usize },

    #[error("height {height} is within {distance:e} of the zero ordinate {ordinate}")]
    ZeroProximity { height: f64, ordinate: f64, distance: f64 },

    #[error("s = {0} is not a tabulated zero")]
    NotAZero(Complex64),

    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
