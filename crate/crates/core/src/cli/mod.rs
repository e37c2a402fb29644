//! Command-line interface: documents, commands and reports.

pub mod document;
pub mod report;

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use document::to_canonical_json;

/// Exact combinatorics of stacky coloured fans.
#[derive(Debug, Parser)]
#[command(name = "horofan", version)]
pub struct Cli {
    /// Print the canonical JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a fan or map document against the axioms.
    Validate { document: PathBuf },
    /// Stabilizer group of a stacky fan.
    Kbeta { fan: PathBuf },
    /// Whether every colour set is empty.
    Toroidal { fan: PathBuf },
    /// Write the decolouration.
    Decolour {
        fan: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Whether a cone of the fan is unstable.
    Unstable {
        fan: PathBuf,
        /// Generators separated by ';', coordinates by ','.
        #[arg(long, allow_hyphen_values = true)]
        cone: String,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
        method: u8,
    },
    /// Construct the good moduli space fan.
    Gms { fan: PathBuf },
    /// Check whether a map is an isomorphism.
    Iso { map: PathBuf },
    /// Check whether a map is a good moduli space morphism.
    #[command(name = "gms-check")]
    GmsCheck { map: PathBuf },
    /// Build the fantastack for the colour points followed by extra columns.
    Fantastack {
        fan: PathBuf,
        /// Columns separated by ';', coordinates by ','.
        #[arg(long, allow_hyphen_values = true)]
        extra_columns: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the Cox construction.
    Cox {
        fan: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a root stack along a non-coloured ray.
    Rootstack {
        fan: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        ray: String,
        #[arg(long)]
        order: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Class group of the variety.
    Classgroup { fan: PathBuf },
    /// Write the product of two fans or of two maps.
    Product {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    /// 0 when the check passed, 1 on a negative verdict, 2 on an input error.
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CommandOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match commands::execute(&cli.command) {
        Ok(report) => {
            let stdout = if cli.json {
                to_canonical_json(&report.json)
            } else {
                let mut text = report.text;
                text.push('\n');
                text
            };
            CommandOutput {
                code: if report.passed { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => CommandOutput {
            code: 2,
            stdout: if cli.json {
                to_canonical_json(&json!({ "error": e.to_string() }))
            } else {
                String::new()
            },
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Runs with the process arguments, printing to the standard streams.
pub fn main() -> ExitCode {
    let out = run_command(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code)
}
