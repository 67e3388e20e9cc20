use std::io::Write;

use clap::Args;
use serde::Serialize;

use eccc::infinite::{fig1_thetas, sweep_double_circle, SweepPoint};

use crate::format::{csv_table, json, sig12, Format};
use crate::{print_seed, CliError, OptimizerArgs, OutputArgs};

/// Reference line: `J` of the Bloch-uniform ensemble.
pub const J_BLOCH_REF: f64 = 2.0 / 3.0;
/// Reference line: optimal universal cloning fidelity of a qubit.
pub const UC_REF: f64 = 5.0 / 6.0;

#[derive(Debug, Clone, Args)]
pub struct Fig1Args {
    /// Sampled states per angle
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,

    #[command(flatten)]
    pub opt: OptimizerArgs,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Serialize)]
struct Row {
    theta_rad: f64,
    j_closed: f64,
    j_mc: f64,
    stderr: f64,
    n_samples: usize,
    j_bloch_ref: f64,
    uc_ref: f64,
}

impl From<&SweepPoint> for Row {
    fn from(p: &SweepPoint) -> Self {
        Self {
            theta_rad: p.theta,
            j_closed: p.j_closed,
            j_mc: p.j_monte_carlo,
            stderr: p.stderr,
            n_samples: p.samples,
            j_bloch_ref: J_BLOCH_REF,
            uc_ref: UC_REF,
        }
    }
}

#[derive(Debug, Serialize)]
struct Report {
    seed: u64,
    rows: Vec<Row>,
}

pub const HEADER: [&str; 7] = ["theta_rad", "j_closed", "j_mc", "stderr", "n_samples", "j_bloch_ref", "uc_ref"];

pub fn run(args: &Fig1Args, stderr: &mut dyn Write) -> Result<String, CliError> {
    let opts = args.opt.options()?;
    print_seed(stderr, opts.seed)?;
    let points = sweep_double_circle(&fig1_thetas(), args.samples, &opts, opts.seed)?;
    let rows: Vec<Row> = points.iter().map(Row::from).collect();
    match args.out.format_or(Format::Csv) {
        Format::Json => json(&Report { seed: opts.seed, rows }),
        Format::Csv => csv_table(
            &HEADER,
            rows.iter().map(|r| {
                vec![
                    sig12(r.theta_rad),
                    sig12(r.j_closed),
                    sig12(r.j_mc),
                    sig12(r.stderr),
                    r.n_samples.to_string(),
                    sig12(r.j_bloch_ref),
                    sig12(r.uc_ref),
                ]
            }),
        ),
    }
}
