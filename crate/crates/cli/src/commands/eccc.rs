use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use eccc::eccc::{eccc as compute, theorem1_bounds, theorem2_bound, EcccResult};
use eccc::ensemble::{
    double_circle_discretized, load_ensemble, make_bb84_weighted, make_bloch_uniform, make_six_state, Ensemble,
};
use eccc::infinite::estimate_j_infinite;

use super::{basis_entries, parse_sweep};
use crate::format::{basis_cell, csv_table, json, opt_sig12, sig12, Format};
use crate::{print_seed, CliError, OptimizerArgs, OutputArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Bb84,
    SixState,
    DoubleCircle,
    Bloch,
}

#[derive(Debug, Clone, Args)]
pub struct EcccArgs {
    /// Named ensemble family
    #[arg(long, value_enum, conflicts_with = "input", required_unless_present = "input")]
    pub family: Option<Family>,

    /// Ensemble file (JSON)
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// BB84 weight of the Z basis: a value or a range `a..b`
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,

    /// Double-circle polar angle in radians: a value or a range `a..b`
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,

    /// Sweep step for ranges
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,

    /// Azimuthal points per circle for the double-circle family
    #[arg(long, default_value_t = 720)]
    pub points: usize,

    /// Sampled states for the Bloch-uniform family
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,

    #[command(flatten)]
    pub opt: OptimizerArgs,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Serialize)]
pub struct EcccRow {
    pub family: String,
    pub p: Option<f64>,
    pub theta: Option<f64>,
    pub dim: usize,
    pub n_states: usize,
    pub j: f64,
    pub q: f64,
    /// `1/d + q_max (d−1)/d`.
    pub bound_lower: f64,
    /// `2/(d+1)` (pure) or `2/3` (qubit), when one applies.
    pub bound_attainable: Option<f64>,
    /// Monte Carlo standard error, sampled families only.
    pub stderr: Option<f64>,
    pub restarts: usize,
    pub gap: f64,
    pub converged: bool,
    pub epsilon_opt: f64,
    pub basis: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    seed: u64,
    results: &'a [EcccRow],
}

const HEADER: [&str; 15] = [
    "family",
    "p",
    "theta",
    "dim",
    "n_states",
    "j",
    "q",
    "bound_lower",
    "bound_attainable",
    "stderr",
    "restarts",
    "gap",
    "converged",
    "epsilon_opt",
    "basis",
];

fn row(label: &str, p: Option<f64>, theta: Option<f64>, e: &Ensemble, r: &EcccResult, stderr: Option<f64>) -> EcccRow {
    EcccRow {
        family: label.to_string(),
        p,
        theta,
        dim: e.dim(),
        n_states: e.len(),
        j: r.j,
        q: r.q,
        bound_lower: theorem1_bounds(e).lower,
        bound_attainable: theorem2_bound(e).ok(),
        stderr,
        restarts: r.restarts_used,
        gap: r.gap,
        converged: r.converged,
        epsilon_opt: r.epsilon_opt,
        basis: basis_entries(&r.basis),
    }
}

pub fn rows(args: &EcccArgs) -> Result<Vec<EcccRow>, CliError> {
    let opts = args.opt.options()?;
    let unused = |flag: &str, given: bool| {
        if given {
            Err(CliError::Usage(format!("{flag} does not apply to this ensemble")))
        } else {
            Ok(())
        }
    };
    if let Some(path) = &args.input {
        unused("--p", args.p.is_some())?;
        unused("--theta", args.theta.is_some())?;
        let e = load_ensemble(path)?;
        let r = compute(&e, &opts)?;
        return Ok(vec![row("file", None, None, &e, &r, None)]);
    }
    let family = args.family.expect("clap requires --family or --input");
    if family != Family::Bb84 {
        unused("--p", args.p.is_some())?;
    }
    if family != Family::DoubleCircle {
        unused("--theta", args.theta.is_some())?;
    }
    match family {
        Family::Bb84 => parse_sweep(args.p.as_deref().unwrap_or("0.5"), args.step)?
            .into_iter()
            .map(|p| {
                let e = make_bb84_weighted(p)?;
                let r = compute(&e, &opts)?;
                Ok(row("bb84", Some(p), None, &e, &r, None))
            })
            .collect(),
        Family::SixState => {
            let e = make_six_state();
            let r = compute(&e, &opts)?;
            Ok(vec![row("six-state", None, None, &e, &r, None)])
        }
        Family::DoubleCircle => {
            let spec = args
                .theta
                .as_deref()
                .ok_or_else(|| CliError::Usage("--family double-circle needs --theta".into()))?;
            parse_sweep(spec, args.step)?
                .into_iter()
                .map(|theta| {
                    let e = double_circle_discretized(theta, args.points)?;
                    let r = compute(&e, &opts)?;
                    Ok(row("double-circle", None, Some(theta), &e, &r, None))
                })
                .collect()
        }
        Family::Bloch => {
            let est = estimate_j_infinite(&make_bloch_uniform(), args.samples, &opts, opts.seed)?;
            let r = &est.result;
            Ok(vec![EcccRow {
                family: "bloch".into(),
                p: None,
                theta: None,
                dim: 2,
                n_states: est.samples,
                j: r.j,
                q: r.q,
                // infinite-ensemble limit of 1/d + q_max (d−1)/d
                bound_lower: 0.5,
                bound_attainable: Some(2.0 / 3.0),
                stderr: Some(est.stderr),
                restarts: r.restarts_used,
                gap: r.gap,
                converged: r.converged,
                epsilon_opt: r.epsilon_opt,
                basis: basis_entries(&r.basis),
            }])
        }
    }
}

pub fn render(rows: &[EcccRow], seed: u64, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(&Report { seed, results: rows }),
        Format::Csv => csv_table(
            &HEADER,
            rows.iter().map(|r| {
                vec![
                    r.family.clone(),
                    opt_sig12(r.p),
                    opt_sig12(r.theta),
                    r.dim.to_string(),
                    r.n_states.to_string(),
                    sig12(r.j),
                    sig12(r.q),
                    sig12(r.bound_lower),
                    opt_sig12(r.bound_attainable),
                    opt_sig12(r.stderr),
                    r.restarts.to_string(),
                    sig12(r.gap),
                    r.converged.to_string(),
                    sig12(r.epsilon_opt),
                    basis_cell(&r.basis),
                ]
            }),
        ),
    }
}

pub fn run(args: &EcccArgs, stderr: &mut dyn Write) -> Result<String, CliError> {
    print_seed(stderr, args.opt.seed)?;
    let rows = rows(args)?;
    render(&rows, args.opt.seed, args.out.format_or(Format::Csv))
}
