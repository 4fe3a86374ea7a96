//! CLI-level error classification and process exit codes.

use thiserror::Error;

/// Everything the binary can fail with, grouped by exit code.
///
/// The grouping is the user-facing contract: scripts branch on the exit
/// status, not on message text. Bad invocations and bad configs are
/// usage errors; a computation that has no value at the requested point
/// (or a validation battery outside its gate) is a numerical failure;
/// everything filesystem-shaped is I/O.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Exit code for a usage error (bad flags, bad config, bad ranges).
pub const EXIT_USAGE: i32 = 1;
/// Exit code for a numerical-gate failure (validation battery outside
/// its tolerance, or a quantity evaluated where it has no value).
pub const EXIT_NUMERICAL: i32 = 2;
/// Exit code for filesystem failures.
pub const EXIT_IO: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_IO,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        CliError::Numerical(msg.into())
    }
}

impl From<oqgt_xy::XYError> for CliError {
    fn from(e: oqgt_xy::XYError) -> Self {
        use oqgt_xy::XYError::*;
        match e {
            // caller gave coordinates no computation can accept
            InvalidSpinCount { .. } | ModeIndexOutOfRange { .. } | WrongAxisCount { .. } => {
                CliError::Usage(e.to_string())
            }
            // the request was well-formed but lands on a gap closing
            CriticalMode { .. } | GaplessChain { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<oqgt_core::CoreError> for CliError {
    fn from(e: oqgt_core::CoreError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<oqgt_oracle::OracleError> for CliError {
    fn from(e: oqgt_oracle::OracleError) -> Self {
        use oqgt_oracle::OracleError::*;
        match e {
            SpinCountOutOfRange { .. } => CliError::Usage(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<toml::de::Error> for CliError {
    fn from(e: toml::de::Error) -> Self {
        CliError::Usage(format!("config file does not parse: {e}"))
    }
}
