use thiserror::Error;

/// Process-level failure, one exit code per class.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("infeasible sampling: {0}")]
    Infeasible(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Infeasible(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<depol_core::Error> for CliError {
    fn from(e: depol_core::Error) -> Self {
        use depol_core::Error as E;
        match e {
            E::InfeasiblePacking { .. } => CliError::Infeasible(e.to_string()),
            _ if e.is_numerical() => CliError::Numerical(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}
