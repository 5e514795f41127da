use thiserror::Error;

/// Exit status for a run that failed validation.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit status for a run stopped by a size or budget guard.
pub const EXIT_RESOURCE: i32 = 3;
/// Exit status for I/O failures.
pub const EXIT_IO: i32 = 1;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] daqc_core::Error),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("invalid initial state `{input}`: {message}")]
    InitialState { input: String, message: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Core(e) if e.is_resource() => EXIT_RESOURCE,
            HarnessError::Io { .. } => EXIT_IO,
            _ => EXIT_VALIDATION,
        }
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        HarnessError::Argument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
