use thiserror::Error;

/// Errors raised by game construction, enumeration and index computation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("invalid cause family: {0}")]
    InvalidCauseFamily(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{n} features exceeds the exhaustive limit of {limit}; use a sampling estimator")]
    Capacity { n: usize, limit: usize },
    #[error("causal model incomplete: {0}")]
    ModelIncomplete(String),
    #[error("invalid intervention: {0}")]
    InvalidIntervention(String),
    #[error("invalid causal model: {0}")]
    InvalidModel(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
