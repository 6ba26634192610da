use std::process::ExitCode;

use crate::format::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Core(#[from] divdfa_core::Error),

    #[error("{0}")]
    Capacity(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 0 success, 1 verification failure, 2 usage or parse error, 3 capacity.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Capacity(_) => 3,
            CliError::Core(e) if e.is_capacity() => 3,
            CliError::Core(divdfa_core::Error::InconsistentPackages { .. }) => 1,
            _ => 2,
        }
    }
}

impl From<&CliError> for ExitCode {
    fn from(e: &CliError) -> Self {
        ExitCode::from(e.exit_code())
    }
}
