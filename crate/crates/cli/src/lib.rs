//! Batch front end for `levelcut`: parses number and body documents, runs one diagnostic per
//! invocation and writes a JSON or CSV report.
//!
//! Exit status is 0 on success, 1 on any input or usage error, and 2 when `--strict` is set and
//! the computed verdict fails.

mod input;
mod options;
mod output;
mod verbs;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub use input::{auto_grid, load, Input};
pub use options::{DeltaGrid, GridSpec};
pub use output::{Header, Report, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERDICT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("{origin}: malformed input: {error}")]
    Parse {
        origin: String,
        error: serde_json::Error,
    },
    #[error("{origin}: {error}")]
    Invalid {
        origin: String,
        error: levelcut::Error,
    },
    #[error(transparent)]
    Core(#[from] levelcut::Error),
}

impl CliError {
    pub(crate) fn read(path: &str, source: std::io::Error) -> Self {
        Self::Read {
            path: path.to_string(),
            source,
        }
    }

    pub(crate) fn parse(source: &str, error: serde_json::Error) -> Self {
        Self::Parse {
            origin: source.to_string(),
            error,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "levelcut",
    version,
    about = "Metrics and compactness diagnostics for fuzzy numbers given by α-cuts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// α-grid: a level count (uniform grid) or a JSON file holding an array of levels.
    #[arg(long, global = true, value_name = "n|file")]
    pub grid: Option<String>,
    /// Tolerance for validation and for d∞ enclosures.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<usize>,
    /// Offsets for moduli: `geom:K0:K1` (2^-k for k = K0..K1) or a comma-separated list.
    #[arg(long = "delta-grid", global = true, value_name = "spec")]
    pub delta_grid: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_name = "path")]
    pub out: Option<String>,
    /// Exit with status 2 when the verdict fails.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check nonempty compact cuts, nestedness, left-continuity and closure at 0.
    Validate {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Supremum distance between two numbers (exact for sampled pairs, enclosed otherwise) or two bodies.
    Dist { a: String, b: String },
    /// Level distances `H` per α against a reference; several members give `alpha,n,H` rows.
    Profile {
        reference: String,
        members: Vec<String>,
    },
    /// Level convergence of members towards a limit. With no members and the counterexample
    /// limit, members are u_1..u_{n-max}.
    Converge { limit: String, members: Vec<String> },
    /// Support bound, equi-continuity moduli and the two compactness checklists for a family.
    FamilyReport {
        #[arg(required = true)]
        members: Vec<String>,
    },
    /// Machine-checked report on the closed-form counterexample sequence.
    Counterexample,
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Self::Validate { .. } => "validate",
            Self::Dist { .. } => "dist",
            Self::Profile { .. } => "profile",
            Self::Converge { .. } => "converge",
            Self::FamilyReport { .. } => "family-report",
            Self::Counterexample => "counterexample",
        }
    }
}

/// Parses `args` (program name first) and runs the command; returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli, stdout) {
        Ok(verdict) => {
            if !verdict.passed {
                let _ = writeln!(stderr, "verdict failed: {}", verdict.summary);
                if cli.strict {
                    return EXIT_VERDICT;
                }
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<Verdict, CliError> {
    let settings = verbs::Settings::from_cli(cli)?;
    let rendered = verbs::dispatch(&cli.command, &settings)?;
    let verdict = rendered.verdict.clone();
    match &cli.out {
        Some(path) => std::fs::write(path, &rendered.text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?,
        None => stdout
            .write_all(rendered.text.as_bytes())
            .map_err(|source| CliError::Write {
                path: "<stdout>".into(),
                source,
            })?,
    }
    Ok(verdict)
}
