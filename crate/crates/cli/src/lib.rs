//! File formats and command implementations for the `agc` binary.
//!
//! Graphs are read and written as `.agr` matrices, invariants as `.tps`
//! point lists; see [`format`].

pub mod app;
pub mod format;

pub use app::{run, Cli, CliError, Command, Outcome, EXIT_ERROR, EXIT_NO, EXIT_OK};
pub use format::{parse_agr, parse_moves, parse_tps, write_agr, write_moves, write_tps, FormatError};
