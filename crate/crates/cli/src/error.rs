use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::scenario::Diagnostics;

/// Anything that ends a run with the usage exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}:\n{diagnostics}", path.display())]
    Scenario { path: PathBuf, diagnostics: Diagnostics },

    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },

    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },

    #[error(transparent)]
    Core(#[from] cstar_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Report(#[from] ReportError),
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
