use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use eccc::eccc::{theorem1_bounds, theorem2_bound};
use eccc::ensemble::EnsembleFile;
use eccc::qkd::ProtocolSpec;
use eccc::EcccError;

use crate::format::{csv_table, json, opt_sig12, sig12, Format};
use crate::{CliError, OutputArgs};

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Ensemble file (JSON)
    #[arg(long)]
    pub input: PathBuf,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub dim: usize,
    pub items: usize,
    pub pure: bool,
    pub mixture_purity: f64,
    pub bound_lower: f64,
    pub bound_attainable: Option<f64>,
    /// Sending bases when the file groups its states.
    pub bases: Option<usize>,
}

/// Parses and checks every invariant of an ensemble file; the error names
/// the first one that fails.
pub fn summarize(args: &ValidateArgs) -> Result<Summary, CliError> {
    let text = std::fs::read_to_string(&args.input)?;
    let file: EnsembleFile = serde_json::from_str(&text).map_err(EcccError::from)?;
    let e = file.to_ensemble()?;
    let bases = match &file.bases {
        Some(groups) => Some(ProtocolSpec::from_groups(&file.states()?, groups)?.bases.len()),
        None => None,
    };
    Ok(Summary {
        dim: e.dim(),
        items: e.len(),
        pure: e.is_pure(),
        mixture_purity: e.mixture().purity(),
        bound_lower: theorem1_bounds(&e).lower,
        bound_attainable: theorem2_bound(&e).ok(),
        bases,
    })
}

pub fn run(args: &ValidateArgs) -> Result<String, CliError> {
    let s = summarize(args).map_err(|e| CliError::Usage(format!("{}: {e}", args.input.display())))?;
    match args.out.format_or(Format::Json) {
        Format::Json => json(&s),
        Format::Csv => csv_table(
            &["dim", "items", "pure", "mixture_purity", "bound_lower", "bound_attainable", "bases"],
            [vec![
                s.dim.to_string(),
                s.items.to_string(),
                s.pure.to_string(),
                sig12(s.mixture_purity),
                sig12(s.bound_lower),
                opt_sig12(s.bound_attainable),
                s.bases.map(|b| b.to_string()).unwrap_or_default(),
            ]],
        ),
    }
}
