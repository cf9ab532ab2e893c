use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not Hermitian (max entry deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("unsupported channel: {0}")]
    Unsupported(String),

    #[error("singular {which} block at index {index}")]
    Singular { which: &'static str, index: usize },

    #[error("truncation window too small: {0}")]
    WindowInsufficient(String),

    #[error("degenerate measure: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
