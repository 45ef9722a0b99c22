//! File formats, run reports and subcommand drivers behind the `gl11`
//! binary.

pub mod commands;
pub mod error;
pub mod formats;
pub mod report;

pub use error::{CliError, Result};
pub use report::{CheckRecord, RunReport};
