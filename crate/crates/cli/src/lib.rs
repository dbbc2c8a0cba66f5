//! Command line front end: text formats, argument definitions and the
//! command implementations behind the `starpart` binary.

pub mod args;
pub mod commands;
pub mod format;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use args::Cli;
pub use commands::run;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input, or an unsupported combination of options.
    #[error("{0}")]
    Input(String),
    /// The checked solution is wrong.
    #[error("{0}")]
    Rejected(String),
    /// A solver produced something that does not check out.
    #[error("internal invariant breach: {0}")]
    Internal(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Rejected(_) => 1,
            CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub(crate) fn input(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError::Input(format!("{}: {e}", path.display()))
    }
}
