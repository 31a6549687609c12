//! Front end for `ellvb-core`: argument handling, JSON and ASCII reports, and
//! the regression-manifest runner behind `ellvb verify`.
//!
//! Exit codes: 0 success, 1 a check or computation failed, 2 invalid flags or
//! input, 3 a resource cap was hit.

pub mod checks;
pub mod cli;
pub mod commands;
pub mod construct;
pub mod manifest;
pub mod render;

use std::ffi::OsString;

use clap::Parser;

pub use cli::{Cli, Command, Format};

/// Environment variable overriding the cobar basis cap.
pub const BASIS_CAP_ENV: &str = "ELLVB_BASIS_CAP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Cap(String),
    #[error(transparent)]
    Core(#[from] ellvb_core::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use ellvb_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Failed(_) => 1,
            CliError::Core(e) => match e {
                E::ResourceCap { .. } => 3,
                E::InvalidArgument(_) | E::Unsupported(_) | E::NotSubgroup(_) | E::MalformedClass(_) => 2,
                _ => 1,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match commands::dispatch(&cli.command) {
        Ok(report) => Outcome { code: report.code, stdout: report.stdout, stderr: report.stderr },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// The cap from `--cap`, else from the environment, else the default.
pub fn basis_cap(flag: Option<usize>) -> CliResult<usize> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(BASIS_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{BASIS_CAP_ENV}={v} is not a number"))),
        Err(_) => Ok(ellvb_core::hopfext::DEFAULT_BASIS_CAP),
    }
}
