use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpneError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("regime error: {0}")]
    Regime(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("grid too coarse: step {step} exceeds requested resolution {resolution}")]
    GridTooCoarse { step: f64, resolution: f64 },
    #[error("config line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, SpneError>;
