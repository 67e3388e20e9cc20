//! Exhaustive qubit search over `(θ₁, φ₁)`, independent of the simplex path.

use std::f64::consts::PI;

use super::EcccResult;
use crate::cloning::average_cloning_fidelity;
use crate::ensemble::Ensemble;
use crate::error::{EcccError, Result};
use crate::quantum::OrthonormalBasis;

/// `J` of a qubit ensemble from a `resolution × resolution` grid over
/// `θ₁ ∈ [0, π]`, `φ₁ ∈ [0, 2π)` followed by parabolic refinement around the
/// best node. Every evaluation goes through [`average_cloning_fidelity`].
///
/// `gap` in the result holds the refinement gain over the best grid node,
/// the size of the `O(step²)` discretization error that was removed.
pub fn eccc_qubit_grid(e: &Ensemble, resolution: usize) -> Result<EcccResult> {
    if e.dim() != 2 {
        return Err(EcccError::NotQubit(e.dim()));
    }
    if resolution < 16 {
        return Err(EcccError::OutOfRange {
            what: "resolution",
            value: resolution as f64,
        });
    }
    let f = |theta: f64, phi: f64| average_cloning_fidelity(e, &OrthonormalBasis::qubit(theta, phi));
    let d_theta = PI / (resolution - 1) as f64;
    let d_phi = 2.0 * PI / resolution as f64;

    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    let mut evals = 0;
    for a in 0..resolution {
        let theta = a as f64 * d_theta;
        for b in 0..resolution {
            let phi = b as f64 * d_phi;
            let v = f(theta, phi)?;
            evals += 1;
            if v > best.2 {
                best = (theta, phi, v);
            }
        }
    }
    let grid_value = best.2;

    let (mut theta, mut phi, mut value) = best;
    let mut steps = [d_theta, d_phi];
    for _ in 0..40 {
        for axis in 0..2 {
            let h = steps[axis];
            let at = |t: f64| if axis == 0 { f(theta + t, phi) } else { f(theta, phi + t) };
            let lo = at(-h)?;
            let hi = at(h)?;
            evals += 2;
            let curvature = lo - 2.0 * value + hi;
            let mut offset = if curvature < 0.0 { 0.5 * h * (lo - hi) / curvature } else if hi > lo { h } else { -h };
            offset = offset.clamp(-h, h);
            let candidate = at(offset)?;
            evals += 1;
            if candidate > value {
                value = candidate;
                if axis == 0 {
                    theta += offset;
                } else {
                    phi += offset;
                }
            }
            steps[axis] = (h * 0.5).max(1e-9);
        }
    }

    let basis = OrthonormalBasis::qubit(theta, phi);
    Ok(EcccResult {
        j: value,
        q: 1.0 - value,
        basis,
        restarts_used: 1,
        gap: value - grid_value,
        converged: true,
        epsilon_opt: super::epsilon_opt(2),
        evaluations: evals,
        start_values: vec![value],
    })
}
