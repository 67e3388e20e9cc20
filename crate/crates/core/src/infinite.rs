//! Infinite ensembles: the double-circle closed forms, the sample-then-optimize
//! estimator of `J`, and the unitarily invariant moment integral.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::cloning::{dephase, ClonedOutput};
use crate::eccc::{eccc, EcccOptions, EcccResult};
use crate::ensemble::{make_double_circle, ParametricEnsemble};
use crate::error::{EcccError, Result};
use crate::quantum::random::derive_seed;
use crate::quantum::{fidelity, pure_fidelity};

pub const BATCHES: usize = 10;
pub const MIN_SAMPLES: usize = 100;

/// `J(θ)` of the double-circle ensemble:
/// `1 − ½sin²θ` while `sin θ ≤ √(2/3)`, else `½ + ¼sin²θ`.
pub fn j_double_circle_closed(theta: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(EcccError::OutOfRange { what: "theta", value: theta });
    }
    let s2 = theta.sin().powi(2);
    Ok(if s2 <= 2.0 / 3.0 { 1.0 - 0.5 * s2 } else { 0.5 + 0.25 * s2 })
}

/// Average cloning fidelity of the double-circle ensemble in the basis `(θ₁, φ₁)`.
/// Independent of `φ₁`.
pub fn f_ave_double_circle(theta: f64, theta1: f64, _phi1: f64) -> f64 {
    let s2 = theta.sin().powi(2);
    1.0 - 0.5 * s2 + theta1.sin().powi(2) * (3.0 * s2 - 2.0) / 4.0
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `∫|⟨φ|ψ⟩|^{2n} dΩ_φ = Γ(d)Γ(1+n)/(Γ(1)Γ(d+n))` as an exact fraction
/// `(numerator, denominator)`. The ratio equals `1 / C(d+n−1, n)`.
pub fn moment_integral_fraction(d: u64, n: u64) -> Result<(u128, u128)> {
    if d == 0 {
        return Err(EcccError::ZeroDimension);
    }
    Ok((1, binomial(d + n - 1, n)))
}

pub fn moment_integral(d: u64, n: u64) -> Result<f64> {
    let (num, den) = moment_integral_fraction(d, n)?;
    Ok(num as f64 / den as f64)
}

/// `d · ∫|⟨φ|ψ⟩|⁴ dΩ = 2/(d+1)`, the Haar-average cloning fidelity of pure states.
pub fn average_pure_bound(d: u64) -> Result<f64> {
    Ok(d as f64 * moment_integral(d, 2)?)
}

#[derive(Debug, Clone)]
pub struct InfiniteEstimate {
    pub result: EcccResult,
    pub samples: usize,
    /// Mean fidelity of each batch at the chosen basis.
    pub batch_means: Vec<f64>,
    /// Standard deviation of the batch means over `√batches`.
    pub stderr: f64,
}

/// Draws `n_states` states, optimizes the equiprobable empirical ensemble, and
/// reports batch-means error bars for the fidelity at the chosen basis.
pub fn estimate_j_infinite(
    pe: &ParametricEnsemble,
    n_states: usize,
    opts: &EcccOptions,
    seed: u64,
) -> Result<InfiniteEstimate> {
    if n_states < MIN_SAMPLES {
        return Err(EcccError::OutOfRange {
            what: "n_states",
            value: n_states as f64,
        });
    }
    let e = pe.sample_ensemble(n_states, seed)?;
    let result = eccc(&e, opts)?;
    let per_item: Vec<f64> = e
        .items()
        .par_iter()
        .map(|it| {
            let ClonedOutput { state, .. } = dephase(&it.state, &result.basis)?;
            match it.pure_state() {
                Some(psi) => Ok(pure_fidelity(psi, &state)),
                None => fidelity(&it.state, &state),
            }
        })
        .collect::<Result<_>>()?;
    let batch_means = batch_means(&per_item, BATCHES);
    let stderr = standard_error(&batch_means);
    Ok(InfiniteEstimate {
        result,
        samples: n_states,
        batch_means,
        stderr,
    })
}

/// Means of `batches` contiguous, nearly equal chunks.
pub fn batch_means(values: &[f64], batches: usize) -> Vec<f64> {
    let n = values.len();
    (0..batches)
        .map(|b| {
            let lo = b * n / batches;
            let hi = (b + 1) * n / batches;
            values[lo..hi].iter().sum::<f64>() / (hi - lo).max(1) as f64
        })
        .collect()
}

/// Sample standard deviation of `means` divided by `√len`.
pub fn standard_error(means: &[f64]) -> f64 {
    let k = means.len() as f64;
    if k < 2.0 {
        return f64::NAN;
    }
    let mean = means.iter().sum::<f64>() / k;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (var / k).sqrt()
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub theta: f64,
    pub j_closed: f64,
    pub j_monte_carlo: f64,
    pub samples: usize,
    pub stderr: f64,
}

impl SweepPoint {
    /// `|J_closed − J_mc| ≤ 4 (stderr + ε_opt)`.
    pub fn accepted(&self, epsilon_opt: f64) -> bool {
        (self.j_closed - self.j_monte_carlo).abs() <= 4.0 * (self.stderr + epsilon_opt)
    }
}

/// `0, π/180, …, π`: the 181-point θ grid.
pub fn fig1_thetas() -> Vec<f64> {
    (0..=180).map(|k| PI * k as f64 / 180.0).collect()
}

/// Monte Carlo `J` of the double-circle ensemble at each θ. Point `k` is seeded
/// from `(seed, k)`, so results do not depend on the thread count.
pub fn sweep_double_circle(thetas: &[f64], n_states: usize, opts: &EcccOptions, seed: u64) -> Result<Vec<SweepPoint>> {
    thetas
        .par_iter()
        .enumerate()
        .map(|(k, &theta)| {
            let pe = make_double_circle(theta)?;
            let est = estimate_j_infinite(&pe, n_states, opts, derive_seed(seed, k as u64))?;
            Ok(SweepPoint {
                theta,
                j_closed: j_double_circle_closed(theta)?,
                j_monte_carlo: est.result.j,
                samples: n_states,
                stderr: est.stderr,
            })
        })
        .collect()
}
