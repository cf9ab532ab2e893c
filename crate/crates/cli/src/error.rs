use std::fmt;

use ctqmc_core::Error;

/// Failures mapped onto process exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad configuration or an input that violates a documented invariant.
    Validation(String),
    /// An oracle comparison exceeded its tolerance.
    Tolerance(String),
    Io(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Tolerance(_) => 3,
            CliError::Io(_) | CliError::Numeric(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Tolerance(_) => "tolerance",
            CliError::Io(_) => "io",
            CliError::Numeric(_) => "numeric",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            CliError::Validation(m) | CliError::Tolerance(m) | CliError::Io(m) | CliError::Numeric(m) => m,
        };
        write!(f, "error[{}]: {msg}", self.kind())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Singular { .. } => CliError::Numeric(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}
