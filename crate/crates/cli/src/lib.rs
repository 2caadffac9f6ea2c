//! `spectra-lab`: command-line experiments over `spectra-core`.
//!
//! Every output starts with a `# spectra-lab v1 <command>` header (or a
//! `schema` field in JSON) and records its seed.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod ingest;
pub mod table;

pub use config::{ExperimentConfig, Global};
pub use error::{CliError, Result};

/// Validates and runs one parsed invocation.
pub fn execute(cli: args::Cli) -> Result<Vec<std::path::PathBuf>> {
    let (cfg, global) = ExperimentConfig::from_cli(cli)?;
    commands::run(&cfg, &global)
}
