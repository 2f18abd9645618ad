use thiserror::Error;

#[derive(Debug, Error)]
pub enum PairweaveError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
