use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{origin}: {message}")]
    Parse { origin: String, message: String },

    #[error("{context}{source}")]
    Fan {
        context: String,
        source: toric_csm::Error,
    },

    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl From<toric_csm::Error> for CliError {
    fn from(source: toric_csm::Error) -> Self {
        CliError::Fan {
            context: String::new(),
            source,
        }
    }
}

impl CliError {
    /// 1 for usage and I/O problems, 2 for rejected input, 3 when an internal
    /// consistency check failed.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Output(_) => 1,
            CliError::Parse { .. } => 2,
            CliError::Fan { source, .. } if source.is_input_error() => 2,
            CliError::Fan { .. } => 3,
        }
    }
}
