use thiserror::Error;

/// Errors raised by the oscillator toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain of the operation.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// An input violated an operation precondition (e.g. an unnormalized density).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A grid index was outside the admissible range.
    #[error("index ({i}, {j}) out of range: {reason}")]
    OutOfRange { i: usize, j: usize, reason: String },

    /// The requested mode is not available for these parameters.
    #[error("unsupported mode: {0}")]
    UnsupportedMode(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
