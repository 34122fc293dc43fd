//! Command-line front end for `toric-csm`: the fan file format, built-in fan
//! specs, report rendering and the benchmark harness.

pub mod bench;
pub mod cli;
pub mod error;
pub mod fanfile;
pub mod report;
pub mod spec;

pub use cli::{main_with_args, run, Cli};
pub use error::CliError;
