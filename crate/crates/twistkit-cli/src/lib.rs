//! Library side of the `twistkit` command-line tool: the JSON file format,
//! its conversion to twistkit values and the subcommands.
//!
//! Exit codes are 0 for success, 1 for input that parses but is invalid or
//! refused (a JSON report is printed), and 2 for malformed input.

pub mod codec;
pub mod commands;
pub mod error;
pub mod schema;

pub use error::CliError;
pub use schema::{DescentFile, Kind, ReportJson};
