//! Command-line front-end: shattering queries, VC estimates, exact matrix
//! computation and the half-space timing bench.
//!
//! Exit codes: 0 success, 1 bad configuration or input, 2 oracle failure,
//! 3 not shattered, 4 estimate differs from `--expect`.

pub mod args;
pub mod chart;
mod commands;
pub mod points;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;

pub use args::Cli;
pub use commands::{
    execute, parse_dims, read_matrix, run_bench, run_exact, run_shatter, run_vcdim, Outcome,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_ORACLE: i32 = 2;
pub const EXIT_NOT_SHATTERED: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Oracle(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Oracle(_) => EXIT_ORACLE,
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

/// Writes the outcome's artifacts where the flags ask for them. A report
/// sent to stdout (`--report -`) replaces the human summary there.
fn emit(cli: &Cli, outcome: &Outcome, out: &mut dyn Write) -> Result<(), CliError> {
    use args::Command;
    let (report_path, csv_path, svg_path) = match &cli.command {
        Command::Shatter(a) => (a.report.as_deref(), None, None),
        Command::Vcdim(a) => (a.report.as_deref(), a.csv.as_deref(), None),
        Command::Exact(a) => (a.report.as_deref(), None, None),
        Command::Bench(a) => (a.report.as_deref(), a.csv.as_deref(), a.svg.as_deref()),
    };
    let json_to_stdout = report_path == Some(Path::new("-"));

    if let (Some(p), Some(csv)) = (csv_path, &outcome.csv) {
        write_file(p, csv)?;
    }
    if let (Some(p), Some(svg)) = (svg_path, &outcome.svg) {
        write_file(p, svg)?;
    }
    match report_path {
        Some(_) if json_to_stdout => {
            let _ = out.write_all(outcome.report.to_json().as_bytes());
        }
        Some(p) => write_file(p, &outcome.report.to_json())?,
        None => {}
    }
    if !json_to_stdout {
        let _ = out.write_all(outcome.summary.as_bytes());
        // The bench table goes to stdout unless a file was named for it.
        if matches!(cli.command, Command::Bench(_)) && csv_path.is_none() {
            if let Some(csv) = &outcome.csv {
                let _ = out.write_all(csv.as_bytes());
            }
        }
    }
    Ok(())
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_CONFIG
                }
            };
        }
    };
    let result = execute(&cli).and_then(|outcome| {
        emit(&cli, &outcome, out)?;
        Ok(outcome.exit_code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
