//! Command-line front end over `irs-core`: single-placement evaluation,
//! placement optimization, active-vs-passive comparison, crossover scans,
//! and CSV sweeps.
//!
//! Exit codes: 0 success, 2 infeasible scenario, 3 bad arguments,
//! 4 I/O failure.

use clap::error::ErrorKind;
use clap::Parser;

pub mod commands;
pub mod fmt;
pub mod opts;
pub mod scenario;
pub mod sweep;

/// Error carrying the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Model error from the core library.
    Core(irs_core::Error),
    /// Malformed arguments or sweep specification.
    BadArgs(String),
    /// Filesystem failure.
    Io(std::io::Error),
}

impl From<irs_core::Error> for CliError {
    fn from(e: irs_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::BadArgs(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(irs_core::Error::Io(_)) | CliError::Io(_) => 4,
            CliError::Core(e) if e.is_infeasibility() => 2,
            CliError::Core(_) | CliError::BadArgs(_) => 3,
        }
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn main_impl() -> i32 {
    let cli = match opts::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return code;
        }
    };
    match commands::run(cli) {
        Ok(output) => {
            println!("{output}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
