use multiboost::Error as CoreError;
use std::path::PathBuf;
use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 2 config (including unreadable or unwritable paths), 3 parse,
    /// 4 numeric.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Parse { .. } | CliError::Malformed(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Infeasible { .. }
            | CoreError::NotPositiveSemidefinite(_)
            | CoreError::Singular(_)
            | CoreError::EpsilonOutOfRange(_)
            | CoreError::InvalidPlausibility(_)
            | CoreError::InvalidWeights(_)
            | CoreError::ZeroAlphaNorm => CliError::Numeric(e.to_string()),
            CoreError::EmptyDataset | CoreError::InvalidDataset(_) => CliError::Malformed(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Malformed(e.to_string())
    }
}
