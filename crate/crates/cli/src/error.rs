use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read config {path}: {source}")]
    ReadConfig {
        path: PathBuf,
        source: std::io::Error,
    },

    /// Malformed document; `message` carries the line and column.
    #[error("malformed config {origin}: {message}")]
    Parse { origin: String, message: String },

    #[error("config names experiment {found:?} but the {requested} subcommand was run")]
    ExperimentMismatch { requested: &'static str, found: String },

    #[error("invalid config: {}", .0.join("; "))]
    Invalid(Vec<String>),

    #[error("ISAC_NET_THREADS must be a nonnegative integer, got {0:?}")]
    Threads(String),

    #[error(transparent)]
    Model(#[from] isac_core::Error),

    #[error("cannot serialize output: {0}")]
    Serialize(String),

    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Serialize(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Serialize(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
