use std::process::ExitCode;

use thiserror::Error;

/// Command failures, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Input(_) => 3,
            CliError::Numerical(_) => 4,
            CliError::Resource(_) => 5,
        })
    }
}

impl From<ida_core::Error> for CliError {
    fn from(e: ida_core::Error) -> Self {
        use ida_core::Error as E;
        let msg = e.to_string();
        match e {
            E::Precondition(_) => CliError::Config(msg),
            E::Parse(_) | E::DegenerateData(_) => CliError::Input(msg),
            E::NumericalRank(_) | E::InsufficientSample { .. } | E::NotExtendable => CliError::Numerical(msg),
            E::Resource(_) => CliError::Resource(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
