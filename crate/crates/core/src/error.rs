use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// `(D')^k f` did not vanish for the requested `k`.
    #[error("input is not polymonogenic of degree {k}")]
    NotPolymonogenic { k: usize },

    #[error("input is not homogeneous of degree {degree} for the umbral Euler operator")]
    NotHomogeneous { degree: usize },

    #[error("input is not annihilated by the umbral Laplacian")]
    NotHarmonic,

    #[error("generating function mismatch at multi-index {alpha:?}")]
    GeneratingMismatch { alpha: Vec<u32> },

    #[error("unsupported: {0}")]
    Unsupported(String),
}
