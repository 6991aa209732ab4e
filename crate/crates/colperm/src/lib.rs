//! Std companion to `colperm-core`: pattern files and set spec strings, JSON
//! and CSV reports, parallel counting, the formula-vs-oracle verification
//! harness and the `colperm` command line.

pub mod checks;
pub mod cli;
mod error;
pub mod parallel;
pub mod report;
pub mod sequence;
pub mod setspec;
pub mod verify;

pub use error::{CliError, ExitCode};
