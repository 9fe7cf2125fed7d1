use coxlen_core::Error;

/// Failures surfaced by the CLI, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Verification(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for a failed check, 2 for bad input, 3 for an exhausted budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else if e == Error::OracleDisagreement {
            CliError::Verification(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}
