use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("radical requires characteristic zero")]
    NonZeroCharacteristic,
    #[error("simple list incomplete or wrong: {0}")]
    BadSimpleList(String),
    #[error("subspace is not contained in the ambient space")]
    NotASubspace,
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unknown basis: {0}")]
    UnknownBasis(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
