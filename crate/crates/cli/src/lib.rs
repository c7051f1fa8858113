//! File formats and subcommands of the `gnk` command-line tool.

pub mod diagnose;
pub mod error;
pub mod eval;
pub mod json;
pub mod schema;
pub mod solve;

pub use error::CliError;
