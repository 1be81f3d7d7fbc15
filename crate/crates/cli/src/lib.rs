//! Command-line front end for `hardy-core`: weight file ingestion, experiment
//! commands and JSON reports.
//!
//! Exit codes: 0 success, 2 invalid arguments or weights, 3 unreadable or
//! malformed input file, 4 numerical failure.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;

pub use commands::{run, Cli};
pub use error::{CliError, Result};
