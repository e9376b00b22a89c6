use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("operator is singular on graded piece {piece}")]
    Singular { piece: String },
    #[error("no convergence: {0}")]
    NotNilpotent(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
