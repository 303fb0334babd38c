use thiserror::Error;

/// Errors raised while loading text, building an index or decoding one.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,
    #[error("sentinel symbol {0:#04x} occurs in the input")]
    SentinelCollision(u8),
    #[error("input uses all 256 byte values; no room for an automatic sentinel")]
    AlphabetOverflow,
    #[error("position {pos} out of range [1..{n}]")]
    OutOfRange { pos: usize, n: usize },
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("malformed index: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
