//! The `umbra` command line. [`run_command`] holds the whole program so that tests can
//! drive it in-process; the binary only forwards `argv` and the exit code.

mod args;
mod commands;
mod grid;
mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{CommandFactory, Parser};

pub use args::{Cli, Command, Format};
pub use grid::parse_grid;

/// Success.
pub const EXIT_OK: i32 = 0;
/// A numerical or mathematical domain error, or a failed self-test.
pub const EXIT_DOMAIN: i32 = 1;
/// Malformed arguments.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Domain(umbra_core::Error),
    Io(String),
}

impl From<umbra_core::Error> for CliError {
    fn from(e: umbra_core::Error) -> Self {
        match e {
            umbra_core::Error::Parse(msg) => CliError::Usage(msg),
            other => CliError::Domain(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match commands::dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let usage = Cli::command().render_usage().to_string();
            let _ = writeln!(err, "error: {msg}\n\n{usage}");
            EXIT_USAGE
        }
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
        Err(CliError::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
    }
}
