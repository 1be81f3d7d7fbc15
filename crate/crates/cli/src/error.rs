use std::path::PathBuf;

use hardy_core::HardyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Args(String),

    #[error("{}: {message}", path.display())]
    BadFile { path: PathBuf, message: String },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("invalid weights in {}: {source}", path.display())]
    Weights { path: PathBuf, source: HardyError },

    #[error(transparent)]
    Core(#[from] HardyError),
}

impl CliError {
    pub fn bad_file(path: &std::path::Path, message: impl Into<String>) -> Self {
        Self::BadFile { path: path.to_path_buf(), message: message.into() }
    }

    /// 2 for rejected arguments or input values, 3 for unreadable or
    /// malformed files, 4 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Args(_) | Self::Weights { .. } => 2,
            Self::BadFile { .. } | Self::Io { .. } => 3,
            Self::Core(e) => match e {
                HardyError::ZeroEnergy
                | HardyError::NoBracket
                | HardyError::AllSeedsDegenerate
                | HardyError::BoundaryMismatch(_)
                | HardyError::UnresolvedBoundary { .. } => 4,
                _ => 2,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
