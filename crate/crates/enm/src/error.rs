use thiserror::Error;

/// Failures of a CLI run, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Numeric(#[from] enm_core::Error),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Numeric(enm_core::Error::InfeasibleRates { .. }) => 2,
            CliError::Numeric(_) => 1,
            CliError::Verification(_) => 3,
        }
    }
}
