//! Command-line front end for `cayleyseq-core`: the automaton file format,
//! serializable reports and the subcommands.

pub mod app;
pub mod error;
pub mod format;
pub mod report;

pub use app::{run, Cli, Command};
pub use error::CliError;
pub use format::{parse_automaton, serialize_automaton, FormatError};
