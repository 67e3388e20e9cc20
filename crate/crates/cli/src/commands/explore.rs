//! Random search over small ensembles for
//! - the product inequality `J(E_A ⊗ E_B) ≥ J(E_A) J(E_B)`, and whether it is
//!   ever strict;
//! - `J({p_i, ρ_i ⊗ |0⟩⟨0|}) ≥ J({p_i, ρ_i ⊗ ρ_i})`, an open conjecture.
//!
//! Apparent violations beyond `3 ε_opt` are flagged, never treated as errors.

use std::io::Write;

use clap::Args;
use rand::Rng;
use serde::Serialize;

use eccc::eccc::{check_product_inequality, eccc, epsilon_opt, EcccOptions};
use eccc::ensemble::Ensemble;
use eccc::quantum::random::{derive_seed, random_density_matrix_with, random_pure_state_with, rng_for, SimRng};
use eccc::quantum::{DensityMatrix, PureState};

use crate::format::{csv_table, json, sig12, Format};
use crate::{print_seed, CliError, OptimizerArgs, OutputArgs};

#[derive(Debug, Clone, Args)]
pub struct ExploreArgs {
    /// Random trials
    #[arg(long, default_value_t = 100)]
    pub trials: usize,

    /// Dimension of each factor
    #[arg(long, default_value_t = 2)]
    pub dim: usize,

    /// Largest number of states per ensemble
    #[arg(long, default_value_t = 3)]
    pub max_items: usize,

    /// Draw commuting (diagonal) states only
    #[arg(long)]
    pub commuting: bool,

    #[command(flatten)]
    pub opt: OptimizerArgs,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trial {
    pub trial: usize,
    pub seed: u64,
    pub n_a: usize,
    pub n_b: usize,
    pub j_a: f64,
    pub j_b: f64,
    pub j_ab: f64,
    /// `J(E_A ⊗ E_B) − J(E_A) J(E_B)`.
    pub product_gap: f64,
    /// `J({p_i, ρ_i ⊗ |0⟩⟨0|})`.
    pub j_ancilla: f64,
    /// `J({p_i, ρ_i ⊗ ρ_i})`.
    pub j_doubled: f64,
    /// `j_ancilla − j_doubled`.
    pub conjecture_gap: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Extreme {
    pub value: f64,
    pub trial: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub trials: usize,
    pub epsilon_opt: f64,
    pub max_product_gap: Extreme,
    pub min_product_gap: Extreme,
    pub min_conjecture_gap: Extreme,
    pub flagged: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub dim: usize,
    pub summary: Summary,
    pub trials: Vec<Trial>,
}

fn random_state(rng: &mut SimRng, dim: usize, commuting: bool) -> DensityMatrix {
    if commuting {
        let mut p: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
        let total: f64 = p.iter().sum();
        p.iter_mut().for_each(|x| *x /= total);
        return DensityMatrix::diagonal(&p).expect("normalized");
    }
    if rng.random_bool(0.5) {
        random_pure_state_with(dim, rng).density()
    } else {
        random_density_matrix_with(dim, dim, rng)
    }
}

fn random_ensemble(rng: &mut SimRng, dim: usize, max_items: usize, commuting: bool) -> Result<Ensemble, CliError> {
    let n = rng.random_range(1..=max_items);
    let raw: Vec<(f64, DensityMatrix)> = (0..n)
        .map(|_| (rng.random_range(0.05..1.0), random_state(rng, dim, commuting)))
        .collect();
    let total: f64 = raw.iter().map(|(w, _)| w).sum();
    Ok(Ensemble::new(raw.into_iter().map(|(w, s)| (w / total, s)).collect())?)
}

fn with_second_copy(e: &Ensemble, second: impl Fn(&DensityMatrix) -> DensityMatrix) -> Result<Ensemble, CliError> {
    let items = e
        .items()
        .iter()
        .map(|it| (it.weight, it.state.tensor(&second(&it.state))))
        .collect();
    Ok(Ensemble::new(items)?)
}

pub fn trial(args: &ExploreArgs, opts: &EcccOptions, index: usize) -> Result<Trial, CliError> {
    let seed = derive_seed(opts.seed, index as u64);
    let mut rng = rng_for(seed, 0);
    let ea = random_ensemble(&mut rng, args.dim, args.max_items, args.commuting)?;
    let eb = random_ensemble(&mut rng, args.dim, args.max_items, args.commuting)?;
    let opts = opts.clone().with_seed(seed);
    let product = check_product_inequality(&ea, &eb, &opts)?;
    let zero = PureState::basis(args.dim, 0)?.density();
    let j_ancilla = eccc(&with_second_copy(&ea, |_| zero.clone())?, &opts)?.j;
    let j_doubled = eccc(&with_second_copy(&ea, |rho| rho.clone())?, &opts)?.j;
    let eps = epsilon_opt(args.dim * args.dim);
    let conjecture_gap = j_ancilla - j_doubled;
    Ok(Trial {
        trial: index,
        seed,
        n_a: ea.len(),
        n_b: eb.len(),
        j_a: product.j_a,
        j_b: product.j_b,
        j_ab: product.j_ab,
        product_gap: product.gap,
        j_ancilla,
        j_doubled,
        conjecture_gap,
        flagged: product.gap < -3.0 * eps || conjecture_gap < -3.0 * eps,
    })
}

fn extreme(trials: &[Trial], key: impl Fn(&Trial) -> f64, max: bool) -> Extreme {
    let pick = trials
        .iter()
        .reduce(|a, b| {
            let better = if max { key(b) > key(a) } else { key(b) < key(a) };
            if better {
                b
            } else {
                a
            }
        })
        .expect("at least one trial");
    Extreme {
        value: key(pick),
        trial: pick.trial,
        seed: pick.seed,
    }
}

pub fn report(args: &ExploreArgs) -> Result<Report, CliError> {
    if args.trials == 0 || args.max_items == 0 {
        return Err(CliError::Usage("--trials and --max-items must be at least 1".into()));
    }
    if !(2..=3).contains(&args.dim) {
        return Err(CliError::Usage("--dim must be 2 or 3".into()));
    }
    let opts = args.opt.options()?;
    let trials = (0..args.trials)
        .map(|t| trial(args, &opts, t))
        .collect::<Result<Vec<_>, _>>()?;
    let summary = Summary {
        trials: trials.len(),
        epsilon_opt: epsilon_opt(args.dim * args.dim),
        max_product_gap: extreme(&trials, |t| t.product_gap, true),
        min_product_gap: extreme(&trials, |t| t.product_gap, false),
        min_conjecture_gap: extreme(&trials, |t| t.conjecture_gap, false),
        flagged: trials.iter().filter(|t| t.flagged).map(|t| t.trial).collect(),
    };
    Ok(Report {
        seed: opts.seed,
        dim: args.dim,
        summary,
        trials,
    })
}

pub fn run(args: &ExploreArgs, stderr: &mut dyn Write) -> Result<String, CliError> {
    print_seed(stderr, args.opt.seed)?;
    let rep = report(args)?;
    for t in rep.trials.iter().filter(|t| t.flagged) {
        writeln!(
            stderr,
            "flag: trial {} (seed {:#x}): product gap {}, conjecture gap {}",
            t.trial,
            t.seed,
            sig12(t.product_gap),
            sig12(t.conjecture_gap)
        )?;
    }
    let s = &rep.summary;
    writeln!(
        stderr,
        "max product gap {} at trial {} (seed {:#x}); min conjecture gap {} at trial {} (seed {:#x})",
        sig12(s.max_product_gap.value),
        s.max_product_gap.trial,
        s.max_product_gap.seed,
        sig12(s.min_conjecture_gap.value),
        s.min_conjecture_gap.trial,
        s.min_conjecture_gap.seed
    )?;
    match args.out.format_or(Format::Json) {
        Format::Json => json(&rep),
        Format::Csv => csv_table(
            &[
                "trial",
                "seed",
                "n_a",
                "n_b",
                "j_a",
                "j_b",
                "j_ab",
                "product_gap",
                "j_ancilla",
                "j_doubled",
                "conjecture_gap",
                "flagged",
            ],
            rep.trials.iter().map(|t| {
                vec![
                    t.trial.to_string(),
                    t.seed.to_string(),
                    t.n_a.to_string(),
                    t.n_b.to_string(),
                    sig12(t.j_a),
                    sig12(t.j_b),
                    sig12(t.j_ab),
                    sig12(t.product_gap),
                    sig12(t.j_ancilla),
                    sig12(t.j_doubled),
                    sig12(t.conjecture_gap),
                    t.flagged.to_string(),
                ]
            }),
        ),
    }
}
