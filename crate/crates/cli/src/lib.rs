//! Command-line front end for `cfladder-core`.

pub mod commands;
pub mod error;
pub mod output;
pub mod spec;

pub use commands::{run, Cli, Command};
pub use error::CliError;
pub use spec::{parse_number_spec, NumberSpec};
