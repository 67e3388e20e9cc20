use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use eccc::ensemble::EnsembleFile;
use eccc::qkd::{min_error_rate, simulate_protocol, ErrorRateReport, ProtocolSpec, SimulationOptions};

use super::basis_entries;
use crate::format::{basis_cell, csv_table, json, opt_sig12, sig12, Format};
use crate::{print_seed, CliError, OptimizerArgs, OutputArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Protocol {
    Bb84,
    SixState,
}

#[derive(Debug, Clone, Args)]
pub struct QkdArgs {
    /// Named protocol
    #[arg(long, value_enum, conflicts_with = "input", required_unless_present = "input")]
    pub family: Option<Protocol>,

    /// Ensemble file of pure sending states; an optional "bases" array groups them
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Simulated rounds
    #[arg(long, default_value_t = 1_000_000)]
    pub rounds: u64,

    /// Fraction of rounds Eve intercepts
    #[arg(long, default_value_t = 1.0)]
    pub intercept_fraction: f64,

    #[command(flatten)]
    pub opt: OptimizerArgs,

    #[command(flatten)]
    pub out: OutputArgs,
}

/// Below this `Q` the ensemble gives Eve a free pass.
const CLASSICAL_Q: f64 = 1e-9;

#[derive(Debug, Serialize)]
struct Report {
    exact_r: f64,
    empirical_r: Option<f64>,
    rounds: u64,
    sifted: u64,
    q_reference: f64,
    eve_basis: Vec<Vec<[f64; 2]>>,
}

pub fn protocol(args: &QkdArgs) -> Result<ProtocolSpec, CliError> {
    match (&args.input, args.family) {
        (Some(path), _) => {
            let file: EnsembleFile = serde_json::from_str(&std::fs::read_to_string(path)?).map_err(eccc::EcccError::from)?;
            match &file.bases {
                Some(groups) => Ok(ProtocolSpec::from_groups(&file.states()?, groups)?),
                None => Ok(ProtocolSpec::infer(&file.to_ensemble()?)?),
            }
        }
        (None, Some(Protocol::Bb84)) => Ok(ProtocolSpec::bb84()),
        (None, Some(Protocol::SixState)) => Ok(ProtocolSpec::six_state()),
        (None, None) => Err(CliError::Usage("give --family or --input".into())),
    }
}

/// Eve's optimal basis from the sent ensemble, then a simulation against it.
pub fn report(args: &QkdArgs) -> Result<ErrorRateReport, CliError> {
    let opts = args.opt.options()?;
    let spec = protocol(args)?;
    let best = min_error_rate(&spec.sent_ensemble(), &opts)?;
    let eve = best.eve_basis.expect("optimal basis");
    let sim = SimulationOptions {
        rounds: args.rounds,
        seed: opts.seed,
        intercept_fraction: args.intercept_fraction,
        eccc: opts,
    };
    Ok(simulate_protocol(&spec, Some(&eve), &sim)?)
}

pub fn run(args: &QkdArgs, stderr: &mut dyn Write) -> Result<String, CliError> {
    print_seed(stderr, args.opt.seed)?;
    let rep = report(args)?;
    if rep.q_reference < CLASSICAL_Q {
        writeln!(
            stderr,
            "warning: Q = {} (the states commute); unsuitable for QKD, intercept-resend goes unnoticed",
            sig12(rep.q_reference)
        )?;
    }
    let out = Report {
        exact_r: rep.exact_r,
        empirical_r: rep.empirical_r,
        rounds: rep.rounds,
        sifted: rep.sifted,
        q_reference: rep.q_reference,
        eve_basis: rep.eve_basis.as_ref().map(basis_entries).unwrap_or_default(),
    };
    match args.out.format_or(Format::Json) {
        Format::Json => json(&out),
        Format::Csv => csv_table(
            &["exact_r", "empirical_r", "rounds", "sifted", "q_reference", "eve_basis"],
            [vec![
                sig12(out.exact_r),
                opt_sig12(out.empirical_r),
                out.rounds.to_string(),
                out.sifted.to_string(),
                sig12(out.q_reference),
                basis_cell(&out.eve_basis),
            ]],
        ),
    }
}
