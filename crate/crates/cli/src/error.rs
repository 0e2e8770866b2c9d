use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid {field}: {reason}")]
    Invalid { field: &'static str, reason: String },

    #[error("{path}:{line}: {reason}")]
    Config { path: PathBuf, line: usize, reason: String },

    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Core(#[from] covosc_core::Error),
}

impl CliError {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Self::Invalid { field, reason: reason.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
