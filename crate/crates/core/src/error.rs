use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Cartan datum: {0}")]
    Cartan(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("series not expandable: {0}")]
    NotExpandable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
