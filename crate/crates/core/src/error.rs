use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("pyramid must be a non-empty sequence of positive row lengths")]
    EmptyPyramid,
    #[error("row {row} has length {len}; row lengths must be positive")]
    NonPositiveRow { row: usize, len: i64 },
    #[error("row lengths must be non-decreasing: row {row} has {len} after {prev}")]
    DecreasingRows { row: usize, prev: usize, len: usize },
    #[error("box index {index} out of range 1..={max}")]
    BoxOutOfRange { index: usize, max: usize },
    #[error("{0} is not a basis element for this pyramid")]
    InvalidGenId(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("element is not valid in the {0} context")]
    ContextMismatch(&'static str),
    #[error("act needs a generator of nonnegative depth in the vacuum module, got depth {0}")]
    NegativeDepthAction(i32),
    #[error("operation requires {expected}, got {got}")]
    WrongShape { expected: String, got: String },
    #[error("invalid JSON document: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
