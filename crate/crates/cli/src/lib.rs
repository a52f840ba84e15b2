//! Command line front end: input formats, command dispatch and reports.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;

pub use args::{Cli, Command, Format};
pub use commands::{execute, load, run, Context, Output};
pub use error::{CliError, Result};
pub use input::{parse_digraph, parse_matrix, parse_points, print_digraph, print_matrix, Input};
pub use report::ReportRecord;
