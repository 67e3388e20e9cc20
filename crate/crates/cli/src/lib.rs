//! Command-line driver for the `eccc` library: named ensemble families and
//! ensemble files in, CSV or JSON reports out.

pub mod commands;
pub mod format;

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use eccc::eccc::{EcccOptions, DEFAULT_SEED};
use eccc::EcccError;

pub use format::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] EcccError),
    #[error("{0}")]
    Usage(String),
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Parser)]
#[command(name = "eccc", version, about = "Classicality J and quantumness Q = 1 - J of quantum ensembles")]
pub struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute J and Q for a named family (optionally swept) or an ensemble file
    Eccc(commands::eccc::EcccArgs),
    /// Double-circle theta sweep: closed form, Monte Carlo, reference lines
    Fig1(commands::fig1::Fig1Args),
    /// Optimal intercept-resend error rate and a round-by-round simulation
    Qkd(commands::qkd::QkdArgs),
    /// Random search around the product inequality and the ancilla conjecture
    Explore(commands::explore::ExploreArgs),
    /// Check an ensemble file and summarize it
    Validate(commands::validate::ValidateArgs),
}

/// Parses decimal or `0x`-prefixed hexadecimal seeds.
pub fn parse_seed(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

#[derive(Debug, Clone, Args)]
pub struct OptimizerArgs {
    /// Random restarts on top of the warm starts
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,

    /// Simplex convergence tolerance
    #[arg(long, default_value_t = 1e-14)]
    pub tol: f64,

    /// Objective evaluations per start (0 = automatic)
    #[arg(long, default_value_t = 0)]
    pub max_evals: usize,

    /// RNG seed, decimal or hex
    #[arg(long, default_value = "0xECCC", value_parser = parse_seed)]
    pub seed: u64,

    /// Optimize over the whole space instead of the support of the mixture
    #[arg(long)]
    pub full_space: bool,
}

impl OptimizerArgs {
    pub fn options(&self) -> Result<EcccOptions, CliError> {
        if self.restarts == 0 {
            return Err(CliError::Usage("--restarts must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(CliError::Usage("--tol must be positive".into()));
        }
        Ok(EcccOptions {
            restarts: self.restarts,
            tolerance: self.tol,
            max_evals: self.max_evals,
            seed: self.seed,
            full_space: self.full_space,
            ..EcccOptions::default()
        })
    }
}

impl Default for OptimizerArgs {
    fn default() -> Self {
        Self {
            restarts: 32,
            tol: 1e-14,
            max_evals: 0,
            seed: DEFAULT_SEED,
            full_space: false,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Report format
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl OutputArgs {
    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn emit(&self, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
        match &self.output {
            Some(path) => std::fs::write(path, text)?,
            None => stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

/// Runs a parsed command. The report goes to `--output` or `stdout`; the seed
/// line, warnings and flags go to `stderr`.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let (out, text) = match &cli.command {
        Command::Eccc(a) => (&a.out, commands::eccc::run(a, stderr)?),
        Command::Fig1(a) => (&a.out, commands::fig1::run(a, stderr)?),
        Command::Qkd(a) => (&a.out, commands::qkd::run(a, stderr)?),
        Command::Explore(a) => (&a.out, commands::explore::run(a, stderr)?),
        Command::Validate(a) => (&a.out, commands::validate::run(a)?),
    };
    out.emit(&text, stdout)
}

/// Announces the seed of a randomized command.
pub(crate) fn print_seed(stderr: &mut dyn Write, seed: u64) -> Result<(), CliError> {
    writeln!(stderr, "seed: {seed} ({seed:#x})")?;
    Ok(())
}
