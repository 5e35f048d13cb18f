//! Scenario files, output formats and Monte Carlo experiments around `igsmac-core`.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod output;
pub mod parallel;
pub mod sampling;
pub mod scenario_file;
pub mod stats;
pub mod svg;

pub use error::{CliError, Result};
