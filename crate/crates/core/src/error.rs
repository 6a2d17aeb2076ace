use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("color {color} out of range 1..={r}")]
    ColorRange { color: u32, r: u32 },
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size error: {0}")]
    Size(String),
    #[error("malformed certificate at path {path:?}: {reason}")]
    Structure { path: Vec<u8>, reason: String },
    #[error("strategy error: {0}")]
    Strategy(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("range error: {0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, Error>;
