//! Command-line front end for `divdfa-core`: counting, tables, automaton
//! import and export, and bulk verification.

pub mod commands;
pub mod digits;
mod error;
pub mod format;
pub mod sweep;
pub mod tables;

pub use error::CliError;
pub use format::{DfaDocument, Format, ParseError};
pub use sweep::{check_pair, parse_range, run_sweep, PairOutcome, SweepConfig, SweepReport};
