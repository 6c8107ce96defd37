//! Batch curation pipeline for function-documentation pairs.
//!
//! This crate carries everything that touches the outside world: source
//! tree discovery, Tree-sitter extraction, the TOML config and repo
//! manifest formats, JSONL/CSV outputs, and the CLI. The filter, scoring,
//! dedup, and flagging kernels live in `docmine-core`.

pub mod configfile;
pub mod extract;
pub mod ingest;
pub mod output;
pub mod packs;
pub mod run;
pub mod stages;

use std::path::PathBuf;

pub use docmine_core as core;

/// Errors surfaced to the CLI; the variant picks the process exit code
/// (1 usage, 2 I/O, 3 validation).
#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Validation(String),
}

impl PipelineError {
    pub fn usage(message: impl Into<String>) -> Self {
        PipelineError::Usage(message.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        PipelineError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        PipelineError::Validation(message.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Usage(_) => 1,
            PipelineError::Io { .. } => 2,
            PipelineError::Validation(_) => 3,
        }
    }
}

impl From<docmine_core::config::ConfigError> for PipelineError {
    fn from(err: docmine_core::config::ConfigError) -> Self {
        PipelineError::Validation(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, PipelineError>;
