use std::path::PathBuf;

use thiserror::Error;

/// Failures of a command, tagged with the stage that produced them.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("error[{stage}]: {message}")]
    Invalid { stage: &'static str, message: String },

    #[error("error[{stage}]: {}: {source}", path.display())]
    Io {
        stage: &'static str,
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("error[{stage}]: {}: {source}", path.display())]
    Parse {
        stage: &'static str,
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("error[{stage}]: {source}")]
    Core {
        stage: &'static str,
        #[source]
        source: bohrlift::Error,
    },
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn invalid(stage: &'static str, message: impl Into<String>) -> CliError {
    CliError::Invalid {
        stage,
        message: message.into(),
    }
}

/// Attaches a stage tag to core errors.
pub trait Stage<T> {
    fn stage(self, stage: &'static str) -> CliResult<T>;
}

impl<T> Stage<T> for bohrlift::Result<T> {
    fn stage(self, stage: &'static str) -> CliResult<T> {
        self.map_err(|source| CliError::Core { stage, source })
    }
}
