//! Configuration, subcommands and CSV output behind the `gjfr` binary.

use std::path::PathBuf;

pub mod commands;
pub mod config;

pub use commands::{run, Command};
pub use config::{Model, RunConfig, Settings, Sweep};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{key}: {message}")]
    Config { key: String, message: String },

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Core(#[from] gjfr_core::Error),
}
