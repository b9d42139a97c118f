use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dense materialization refused: M = {m} exceeds the cap of {cap}")]
    DenseCapExceeded { m: usize, cap: usize },

    #[error("banded Cholesky hit a non-positive pivot {value:e} at row {row}")]
    NonPositivePivot { row: usize, value: f64 },

    #[error("circulant eigenvalue {value:e} at index {index} is not positive")]
    NonPositiveCirculant { index: usize, value: f64 },

    #[error("FFT spectrum has an imaginary residue {residue:e} (relative), expected a real spectrum")]
    ComplexSpectrum { residue: f64 },

    #[error("matrix is singular")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
