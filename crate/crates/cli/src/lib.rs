//! Command-line front end: material database, CSV ingestion and the `eos`
//! subcommands.

// Negated comparisons are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod db;
pub mod error;
pub mod format;
pub mod io;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::error::CliError;

/// Runs the CLI and returns the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let first = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            let _ = writeln!(err, "{}", CliError::Usage(first.to_string()).render());
            return 2;
        }
    };
    let result = match &cli.command {
        Command::Calibrate(a) => commands::calibrate(a, out),
        Command::CalibrateCvt(a) => commands::calibrate_cvt_cmd(a, out),
        Command::Sweep(a) => commands::sweep(a, out),
        Command::MixSweep(a) => commands::mix_sweep(a, out, err),
        Command::Audit(a) => commands::audit(a, out),
        Command::State(a) => commands::state(a, out),
    };
    let _ = out.flush();
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", e.render());
            e.exit_code()
        }
    }
}
