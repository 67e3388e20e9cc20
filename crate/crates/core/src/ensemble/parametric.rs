use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use super::families::latitude_state;
use super::Ensemble;
use crate::error::Result;
use crate::quantum::random::{random_pure_state_with, rng_for, SimRng};
use crate::quantum::DensityMatrix;

pub type StateSampler = Arc<dyn Fn(&mut SimRng) -> DensityMatrix + Send + Sync>;

#[derive(Clone)]
pub enum ParametricFamily {
    /// Haar-random pure qubit states.
    BlochUniform,
    /// Fair coin between polar angles `θ` and `π − θ`, azimuth uniform on `[0, 2π)`.
    DoubleCircle { theta: f64 },
    Custom { dim: usize, label: String, sampler: StateSampler },
}

impl fmt::Debug for ParametricFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BlochUniform => write!(f, "BlochUniform"),
            Self::DoubleCircle { theta } => write!(f, "DoubleCircle {{ theta: {theta} }}"),
            Self::Custom { dim, label, .. } => write!(f, "Custom {{ dim: {dim}, label: {label:?} }}"),
        }
    }
}

/// An infinite ensemble given by a seeded sampler.
///
/// Draw `i` under seed `s` depends only on `(s, i)`, so any partition of the
/// index range reproduces the same sample.
#[derive(Debug, Clone)]
pub struct ParametricEnsemble {
    pub family: ParametricFamily,
    /// Closed-form `J` when one is known.
    pub known_j: Option<f64>,
}

impl ParametricEnsemble {
    pub fn new(family: ParametricFamily) -> Self {
        let known_j = match &family {
            ParametricFamily::BlochUniform => Some(2.0 / 3.0),
            ParametricFamily::DoubleCircle { theta } => crate::infinite::j_double_circle_closed(*theta).ok(),
            ParametricFamily::Custom { .. } => None,
        };
        Self { family, known_j }
    }

    pub fn custom(dim: usize, label: impl Into<String>, sampler: StateSampler) -> Self {
        Self::new(ParametricFamily::Custom {
            dim,
            label: label.into(),
            sampler,
        })
    }

    pub fn dim(&self) -> usize {
        match &self.family {
            ParametricFamily::BlochUniform | ParametricFamily::DoubleCircle { .. } => 2,
            ParametricFamily::Custom { dim, .. } => *dim,
        }
    }

    pub fn label(&self) -> String {
        match &self.family {
            ParametricFamily::BlochUniform => "bloch-uniform".into(),
            ParametricFamily::DoubleCircle { theta } => format!("double-circle({theta})"),
            ParametricFamily::Custom { label, .. } => label.clone(),
        }
    }

    /// Draw number `index` under `seed`.
    pub fn sample(&self, seed: u64, index: u64) -> DensityMatrix {
        let mut rng = rng_for(seed, index);
        match &self.family {
            ParametricFamily::BlochUniform => random_pure_state_with(2, &mut rng).density(),
            ParametricFamily::DoubleCircle { theta } => {
                let polar = if rng.random::<bool>() { *theta } else { PI - theta };
                let phi = rng.random_range(0.0..2.0 * PI);
                latitude_state(polar, phi).density()
            }
            ParametricFamily::Custom { sampler, .. } => sampler(&mut rng),
        }
    }

    /// Draws `0..n` in index order.
    pub fn sample_states(&self, n: usize, seed: u64) -> Vec<DensityMatrix> {
        (0..n as u64).into_par_iter().map(|i| self.sample(seed, i)).collect()
    }

    /// Equiprobable finite ensemble over the first `n` draws.
    pub fn sample_ensemble(&self, n: usize, seed: u64) -> Result<Ensemble> {
        Ensemble::uniform(self.sample_states(n, seed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{make_bloch_uniform, make_double_circle};
    use crate::quantum::{max_abs_diff, BlochVector, PureState};

    #[test]
    fn double_circle_at_zero_is_ground_state() {
        let pe = make_double_circle(0.0).unwrap();
        let zero = PureState::basis(2, 0).unwrap().density();
        let one = PureState::basis(2, 1).unwrap().density();
        // polar angle π − 0 lands on |1⟩; both circles are poles
        for s in pe.sample_states(50, 3) {
            let to_zero = max_abs_diff(s.matrix(), zero.matrix());
            let to_one = max_abs_diff(s.matrix(), one.matrix());
            assert!(to_zero < 1e-14 || to_one < 1e-14);
        }
    }

    #[test]
    fn equator_samples() {
        let pe = make_double_circle(PI / 2.0).unwrap();
        for s in pe.sample_states(100, 1) {
            let r = BlochVector::from_density(&s).unwrap();
            assert!(r.0[2].abs() < 1e-12);
            assert!((r.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn z_component_is_plus_minus_cos_theta() {
        let theta = 1.1;
        let pe = make_double_circle(theta).unwrap();
        let mut seen = [false, false];
        for s in pe.sample_states(200, 8) {
            let z = BlochVector::from_density(&s).unwrap().0[2];
            let up = (z - theta.cos()).abs() < 1e-12;
            let down = (z + theta.cos()).abs() < 1e-12;
            assert!(up || down);
            seen[up as usize] = true;
        }
        assert!(seen[0] && seen[1]);
    }

    #[test]
    fn bloch_uniform_mean_vanishes() {
        let pe = make_bloch_uniform();
        let states = pe.sample_states(100_000, 21);
        let mut mean = [0.0; 3];
        for s in &states {
            let r = BlochVector::from_density(s).unwrap();
            for k in 0..3 {
                mean[k] += r.0[k] / states.len() as f64;
            }
        }
        for m in mean {
            assert!(m.abs() < 0.02, "mean component {m}");
        }
    }

    #[test]
    fn sampling_is_deterministic_and_partitionable() {
        let pe = make_bloch_uniform();
        let all = pe.sample_states(20, 5);
        assert_eq!(all, pe.sample_states(20, 5));
        assert_eq!(all[13], pe.sample(5, 13));
    }

    #[test]
    fn known_values() {
        assert_eq!(make_bloch_uniform().known_j, Some(2.0 / 3.0));
        let pe = make_double_circle(PI / 2.0).unwrap();
        assert!((pe.known_j.unwrap() - 0.75).abs() < 1e-15);
    }
}
