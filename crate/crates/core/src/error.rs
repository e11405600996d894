use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),

    #[error("index {index} is outside the table (covers {start}..={end})")]
    IndexOutOfRange { index: i64, start: i64, end: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid tile shape: {0}")]
    InvalidTile(String),

    #[error("tiles use mixed slot resolutions (expected {expected}, found {found})")]
    MixedResolution { expected: usize, found: usize },

    #[error("enumeration exceeded the cap of {cap} tilings")]
    CapExceeded { cap: usize },

    #[error("operation requires resolution {expected}, board has {found}")]
    UnsupportedResolution { expected: usize, found: usize },

    #[error("invalid board: {0}")]
    InvalidBoard(String),

    #[error("slot swap does not produce a valid tiling: {0}")]
    SwapInvalid(String),

    #[error("invalid offset set: {0}")]
    InvalidOffsetSet(String),

    #[error("offset set span {span} exceeds the cap of {cap}")]
    SpanCapExceeded { span: u32, cap: u32 },

    #[error("matrix order {order} exceeds the cap of {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("digraph exceeded the node cap of {cap}")]
    NodeCapExceeded { cap: usize },
}
