#![allow(dead_code)]

use eccc::ensemble::Ensemble;
use eccc::quantum::random::{random_density_matrix_with, random_pure_state_with, SimRng};
use rand::Rng;

/// Random ensemble with weights drawn from `[0.05, 1)` and normalized.
/// Mixed states get a random rank in `1..=dim`.
pub fn random_ensemble(rng: &mut SimRng, dim: usize, n: usize, pure: bool) -> Ensemble {
    let mut items = Vec::with_capacity(n);
    for _ in 0..n {
        let w: f64 = rng.random_range(0.05..1.0);
        let state = if pure {
            random_pure_state_with(dim, rng).density()
        } else {
            let rank = rng.random_range(1..=dim);
            random_density_matrix_with(dim, rank, rng)
        };
        items.push((w, state));
    }
    let total: f64 = items.iter().map(|(w, _)| w).sum();
    Ensemble::new(items.into_iter().map(|(w, s)| (w / total, s)).collect()).expect("valid ensemble")
}

/// `J` of the double-circle family: `1 − ½s²` while `s² ≤ 2/3`, else `½ + ¼s²`, `s = sin θ`.
pub fn double_circle_reference(theta: f64) -> f64 {
    let s2 = theta.sin().powi(2);
    (1.0 - 0.5 * s2).max(0.5 + 0.25 * s2)
}

/// `Γ(d)Γ(3)/Γ(d+2)` with the Gamma values as factorials.
pub fn fourth_moment_reference(d: u32) -> f64 {
    let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
    fact(d - 1) * fact(2) / fact(d + 1)
}
