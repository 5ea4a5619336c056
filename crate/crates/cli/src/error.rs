use thiserror::Error;

/// Exit status 1.
pub const EXIT_USAGE: i32 = 1;
/// Exit status 2.
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }

    pub fn data(context: impl std::fmt::Display, err: impl std::fmt::Display) -> Self {
        CliError::Data(format!("{context}: {err}"))
    }
}

impl From<coauthor_core::Error> for CliError {
    fn from(e: coauthor_core::Error) -> Self {
        use coauthor_core::Error as E;
        match e {
            E::Config(_) | E::InvalidArgument(_) | E::MissingFactor(_) | E::FactorOutOfRange(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Data(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
