use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    /// The computation ran but did not meet its target.
    #[error("{0}")]
    Numerical(String),

    #[error(transparent)]
    Core(#[from] tachyon_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use tachyon_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Core(E::Parameter { .. } | E::Parse(_)) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
