use std::fmt;

use torsion_core::Error;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Config(String),
    Core(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Core(Error::Domain(_)) => 3,
            CliError::Core(Error::Unsupported(_)) | CliError::Core(Error::EliminationFailure(_)) => 4,
            CliError::Core(Error::Undecided(_)) => 5,
            CliError::Core(Error::Parse(_)) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub const EXIT_MISMATCH: i32 = 6;
