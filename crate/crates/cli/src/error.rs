use thiserror::Error;
use zerosum_core::{DavenportError, EngineError, GraphError, GroupError, LabError, OracleError};

/// Successful exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok = 0,
    Negative = 3,
    Flagged = 4,
    Budget = 5,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Budget(_) => 5,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Usage(e.to_string())
            }
        })*
    };
}

usage_from!(
    GroupError,
    GraphError,
    OracleError,
    EngineError,
    DavenportError,
    serde_json::Error
);

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        match e {
            LabError::Tainted { .. } | LabError::NoConvergence { .. } => {
                CliError::Budget(e.to_string())
            }
            LabError::Io(io) => CliError::Io(io),
            other => CliError::Usage(other.to_string()),
        }
    }
}
