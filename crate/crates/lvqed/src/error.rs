//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of the library operations.
///
/// Each variant carries enough context to explain which precondition was
/// violated; numeric payloads are reported as found, never clamped.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LvError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for dimension {dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },

    #[error("unsupported dimension {0}; expected 3 or 4")]
    UnsupportedDimension(usize),

    #[error("matrix is not Hermitian: max |M - M^dagger| = {0:e}")]
    NotHermitian(f64),

    #[error("{object} is not available in {dimension} dimensions")]
    NotAvailable {
        object: &'static str,
        dimension: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("background case mismatch: {0}")]
    CaseMismatch(String),

    #[error("momentum lies on a pole: |denominator| = {denominator:e} below margin {margin:e}")]
    OnPole { denominator: f64, margin: f64 },

    #[error("series does not converge: spectral radius {0} >= 1")]
    DivergentSeries(f64),

    #[error("numerical method failed to converge: {0}")]
    NoConvergence(String),

    #[error("unsupported integral: {0}")]
    UnsupportedIntegral(String),
}

/// Convenience alias used throughout the crate.
pub type LvResult<T> = Result<T, LvError>;
