//! Experiment runner behind the `geoqm` binary.

pub mod config;
pub mod error;
pub mod experiments;
pub mod report;

pub use config::Config;
pub use error::CliError;
pub use experiments::{run, run_with, Experiment};
pub use report::{Check, Report};
