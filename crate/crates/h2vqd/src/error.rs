use std::io;
use std::path::PathBuf;

use h2vqd_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    /// Malformed tabular input. `line` is 1-based and counts the header.
    #[error("{origin}: line {line}: {message}")]
    Parse {
        origin: String,
        line: u64,
        message: String,
    },
    #[error("{origin}: {message}")]
    Data { origin: String, message: String },
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{failures} of {total} points exceed the {tolerance:e} Ha accuracy threshold")]
    Accuracy {
        failures: usize,
        total: usize,
        tolerance: f64,
    },
}

impl AppError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        AppError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(origin: &str, line: u64, message: impl Into<String>) -> Self {
        AppError::Parse {
            origin: origin.to_owned(),
            line,
            message: message.into(),
        }
    }

    /// 1 usage, 2 data/parse/IO, 3 exact-mode accuracy failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 1,
            AppError::Core(
                CoreError::BetaTooSmall { .. }
                | CoreError::InvalidBeta(_)
                | CoreError::InvalidConfig(_)
                | CoreError::ZeroShots,
            ) => 1,
            AppError::Accuracy { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = AppError> = std::result::Result<T, E>;
