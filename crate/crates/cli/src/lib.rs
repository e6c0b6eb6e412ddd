//! Ring-spec parsing, commands and reports behind the `ringcomm` binary.

pub mod commands;
pub mod report;
pub mod ringspec;

use thiserror::Error;

/// A command that produced no report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// Malformed input or usage; exit status 2.
    #[error("{0}")]
    Input(String),
    /// A cap or budget was exceeded; exit status 3.
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}
