use std::path::PathBuf;

use thiserror::Error;

/// Harness failures, split by the exit code they map to.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error in '{field}': {message}")]
    Config { field: String, message: String },

    #[error("{0}")]
    Core(#[from] wmofss_core::Error),

    #[error("I/O error on {path}: {message}")]
    Io { path: PathBuf, message: String },
}

impl HarnessError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        HarnessError::Config { field: field.into(), message: message.into() }
    }

    pub fn io(path: impl Into<PathBuf>, err: impl std::fmt::Display) -> Self {
        HarnessError::Io { path: path.into(), message: err.to_string() }
    }

    /// 2 for configuration problems, 3 for I/O problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config { .. } | HarnessError::Core(_) => 2,
            HarnessError::Io { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
