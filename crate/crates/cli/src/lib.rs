//! Command-line front end for the `sparse-card` solver.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;

pub use error::CliError;
