use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("no valid certificate: {0}")]
    NoCertificate(String),

    #[error("constant regime violated: {0}")]
    ConstantRegime(String),

    #[error("vector is not a unit vector (norm {0})")]
    NotUnit(f64),

    #[error("numerical procedure did not converge: {0}")]
    Unresolved(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad user configuration rather than runtime
    /// or numerical failure.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_) | Error::Json(_) | Error::Parse(_) | Error::ConstantRegime(_)
        )
    }
}
