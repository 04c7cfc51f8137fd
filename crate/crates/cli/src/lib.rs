//! Command-line driver for the twisted quasi-Hopf toolkit: polynomial
//! expression parsing, preset configuration, the `verify`, `twist`, `star`,
//! `assoc` and `hom` subcommands, and deterministic JSON reports.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
//! or configuration errors.

pub mod commands;
pub mod config;
pub mod error;
pub mod parse;
pub mod report;

use clap::Parser;

pub use commands::{Cli, Command};
pub use config::{ConfigFile, Overrides, PresetConfig};
pub use error::CliError;
pub use parse::{parse_poly_expr, ParseError};
pub use report::VerificationReport;

/// What a run prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match commands::execute(&cli.command) {
        Ok((report, timing)) => Outcome {
            code: if report.passed() { 0 } else { 1 },
            stdout: report.to_json(timing),
            stderr: String::new(),
        },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
