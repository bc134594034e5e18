//! Command-line front end: group files and reports.

pub mod commands;
pub mod groupfile;
pub mod report;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use commands::{execute, Cli, Failure};

/// Runs one command line and returns the process exit code:
/// 0 on success, 1 when a mathematical check fails, 2 on bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let _ = write!(out, "{}", outcome.report.render(cli.format));
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            1
        }
    }
}
