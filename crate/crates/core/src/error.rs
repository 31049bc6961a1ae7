use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported alphabet size q={0}")]
    UnsupportedAlphabet(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("problem size exceeds dense limit: {size} > 2^{limit}")]
    DenseLimitExceeded { size: usize, limit: u32 },

    #[error("distribution is not normalized (mass = {0})")]
    NotNormalized(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
