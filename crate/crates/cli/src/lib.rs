//! Configuration parsing and subcommands of the `oblab` binary.

pub mod commands;
pub mod config;
pub mod error;

pub use commands::execute;
pub use config::{parse_config, ExperimentConfig, Mode};
pub use error::CliError;
