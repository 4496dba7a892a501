//! The `prtt` command-line front end.

mod commands;
mod error;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use prtt_nbe::DEFAULT_STEP_BUDGET;
use prtt_prir::DEFAULT_PR_BUDGET;

pub use error::CliError;

/// Version tag of every JSON document the tool writes.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "prtt", version, about = "Type-check, normalize and extract T_pr programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// ι-step budget for each normalization.
    #[arg(long, global = true, default_value_t = DEFAULT_STEP_BUDGET)]
    pub step_budget: u64,
    /// Unfolding budget for each primitive-recursive evaluation.
    #[arg(long, global = true, default_value_t = DEFAULT_PR_BUDGET)]
    pub pr_budget: u64,
    /// Write reports and diagnostics as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type-check modules.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Print the normal form of a definition.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        decl: String,
    },
    /// Print the numeral a closed natural-number definition computes.
    Canon {
        file: PathBuf,
        #[arg(long)]
        decl: String,
    },
    /// Compile a function `Nat -> ... -> Nat` to a primitive-recursive program.
    Extract {
        file: PathBuf,
        #[arg(long)]
        decl: String,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Evaluate a program written by `extract`.
    Run {
        ir: PathBuf,
        #[arg(last = true)]
        args: Vec<String>,
    },
    /// Run the property suite over a corpus directory.
    Test {
        dir: PathBuf,
        /// Largest argument value in differential grids.
        #[arg(long, default_value_t = 6)]
        grid: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Generated terms and programs per sweep.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

/// Parse `args` (including the program name), run the command and return
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            let code = if matches!(e.kind(), DisplayHelp | DisplayVersion) { 0 } else { 2 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match commands::dispatch(&cli, out, err) {
        Ok(()) => 0,
        Err(CliError::Reported(code)) => code,
        Err(e) => {
            let _ = if cli.json {
                writeln!(err, "{}", serde_json::json!({"schema": SCHEMA, "error": e.to_json()}))
            } else {
                writeln!(err, "error: {e}")
            };
            e.exit_code()
        }
    }
}
