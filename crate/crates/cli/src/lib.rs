//! The `stv` command line: reads a JSON job, runs one construction, and
//! writes a canonical JSON report.
//!
//! Exit codes: 0 on success, 2 when the input or flags are malformed (nothing
//! is written), 3 on a domain error (the report names the error and its
//! witness), 1 when the report cannot be written.

mod errors;
mod jobs;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use errors::{CliError, DomainError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_SCHEMA: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "stv", version, about = "Exact computations for affine stable toric varieties")]
pub struct Args {
    /// Input JSON file; standard input when absent or `-`.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Report destination; standard output when absent or `-`.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// GIT fan of a weight-data ambient.
    Gitfan,
    /// Saturation, cone and Hilbert basis of a weight monoid.
    Saturate,
    /// The generator set `A` and exponent `N` of an affine-space ambient.
    SelectBasis {
        #[arg(long, default_value_t = 3)]
        j_max: u64,
    },
    /// Truncated quasifan algebra: components and associativity.
    Bouquet {
        #[arg(long, default_value_t = 3)]
        box_bound: u64,
    },
    /// Weight-cone configurations over the GIT fan.
    Classify {
        #[arg(long, default_value_t = stv_core::stable_toric::DEFAULT_CHAMBER_CAP)]
        chamber_cap: usize,
    },
    /// Automorphism group of a configuration.
    Autgroup {
        #[arg(long, default_value_t = stv_core::stable_toric::DEFAULT_CHAMBER_CAP)]
        chamber_cap: usize,
    },
    /// The rank-one example family for a given `m`.
    VerifyExample {
        #[arg(long)]
        m: u64,
    },
}

impl Command {
    fn needs_input(&self) -> bool {
        !matches!(self, Command::VerifyExample { .. })
    }
}

/// Runs one job and returns the report text, or the error to signal.
pub fn run(command: &Command, input: Option<&str>) -> Result<String, CliError> {
    let input = input.unwrap_or("");
    let value = match command {
        Command::Gitfan => jobs::gitfan(input)?,
        Command::Saturate => jobs::saturate(input)?,
        Command::SelectBasis { j_max } => jobs::select_basis(input, *j_max)?,
        Command::Bouquet { box_bound } => jobs::bouquet(input, *box_bound)?,
        Command::Classify { chamber_cap } => jobs::classify(input, *chamber_cap)?,
        Command::Autgroup { chamber_cap } => jobs::autgroup(input, *chamber_cap)?,
        Command::VerifyExample { m } => jobs::verify_example(*m)?,
    };
    Ok(render(&value))
}

fn render(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Reads `STV_THREADS` and sizes the global pool; `0` runs sequentially.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("STV_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Schema(format!("STV_THREADS must be a nonnegative integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build_global()
        .map_err(|e| CliError::Schema(format!("cannot size thread pool: {e}")))
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| CliError::Schema(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Schema(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::write(p, text),
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

pub fn main_with(args: Args) -> u8 {
    let result = configure_threads()
        .and_then(|()| {
            if args.command.needs_input() {
                read_input(args.input.as_ref()).map(Some)
            } else {
                Ok(None)
            }
        })
        .and_then(|input| run(&args.command, input.as_deref()));
    let (text, code) = match result {
        Ok(text) => (text, EXIT_OK),
        Err(CliError::Schema(msg)) => {
            eprintln!("stv: invalid input: {msg}");
            return EXIT_SCHEMA;
        }
        Err(CliError::Domain(e)) => {
            eprintln!("stv: {}: {}", e.error, e.message);
            (render(&e.to_json()), EXIT_DOMAIN)
        }
    };
    match write_output(args.output.as_ref(), &text) {
        Ok(()) => code,
        Err(e) => {
            eprintln!("stv: cannot write report: {e}");
            EXIT_IO
        }
    }
}
