use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("exponent bit cap exceeded: intermediate value has {bits} bits (cap {cap})")]
    BitCap { bits: u64, cap: u64 },

    #[error("word too long: {0}")]
    TooLong(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("group order {order} exceeds the size cap {cap}")]
    SizeCap { order: u128, cap: u128 },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
