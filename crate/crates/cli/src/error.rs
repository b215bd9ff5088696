use rydberg1d_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}, line {line}: {message}")]
    Parse {
        path: String,
        line: u64,
        message: String,
    },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0} verification check(s) failed")]
    Verification(usize),
}

impl CliError {
    /// 2 usage/input, 3 numeric/convergence, 4 failed verification.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Core(e) => match e {
                CoreError::Convergence { .. }
                | CoreError::Numeric(_)
                | CoreError::Accuracy { .. } => 3,
                _ => 2,
            },
            CliError::Json(_) | CliError::Csv(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}
