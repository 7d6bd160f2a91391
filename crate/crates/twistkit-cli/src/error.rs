//! Command failures and their exit codes.

use thiserror::Error;

use crate::schema::ReportJson;

/// Why a command did not succeed.
#[derive(Debug, Error)]
pub enum CliError {
    /// The input is not a well-formed file of the expected kind, or a
    /// parameter is out of range. Exit code 2.
    #[error("malformed input: {0}")]
    Malformed(String),
    /// Reading or writing a file failed. Exit code 2.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    /// The input parsed but failed validation, or a construction refused it.
    /// Exit code 1; the report is printed on standard output.
    #[error("invalid input ({} errors)", .0.errors)]
    Invalid(ReportJson),
}

impl CliError {
    /// The process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Malformed(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<twistkit::Error> for CliError {
    /// Refusals of a construction are invalid input; everything else means
    /// the data could not be assembled at all.
    fn from(e: twistkit::Error) -> Self {
        use twistkit::Error as E;
        match &e {
            E::HornShape(_)
            | E::Refused(_)
            | E::NoInverse(_)
            | E::ConversionRefused(_)
            | E::NotSplittable(_) => {
                CliError::Invalid(ReportJson::refusal("refused", e.to_string()))
            }
            _ => CliError::Malformed(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Malformed(e.to_string())
    }
}
