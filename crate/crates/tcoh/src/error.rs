use thiserror::Error;

/// Errors of the command-line layer.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: bad JSON, unknown or missing keys, bad flag values.
    #[error("{0}")]
    Usage(String),
    /// A library operation failed on well-formed input.
    #[error(transparent)]
    Compute(#[from] tcoh_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) | CliError::Io { .. } => 1,
        }
    }

    pub(crate) fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(msg.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;
