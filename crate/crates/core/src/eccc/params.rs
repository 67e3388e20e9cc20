//! Coordinates on the set of cloning bases.
//!
//! A basis is the column set of a unitary. Column phases and the global phase
//! do not change the dephasing map, so a basis needs only `d(d−1)` real
//! coordinates: one angle and one phase for each of the `d(d−1)/2` complex
//! Givens rotations. For qubits the same count gives the Bloch angles of the
//! first basis vector.

use crate::error::{EcccError, Result};
use crate::quantum::{CMatrix, OrthonormalBasis, C64};

#[derive(Debug, Clone, PartialEq)]
pub enum BasisParameters {
    /// `|e1⟩ = cos(θ/2)|0⟩ + sin(θ/2)e^{iφ}|1⟩`.
    Qubit { theta: f64, phi: f64 },
    /// Rotation angle and phase per pair `(k, l)`, `k < l`, in lexicographic order.
    Givens { dim: usize, coords: Vec<f64> },
}

impl BasisParameters {
    pub fn to_basis(&self) -> Result<OrthonormalBasis> {
        match self {
            Self::Qubit { theta, phi } => Ok(OrthonormalBasis::qubit(*theta, *phi)),
            Self::Givens { dim, coords } => {
                if *dim == 0 {
                    return Err(EcccError::ZeroDimension);
                }
                if coords.len() != coordinate_count(*dim) {
                    return Err(EcccError::DimensionMismatch {
                        expected: coordinate_count(*dim),
                        found: coords.len(),
                    });
                }
                Ok(OrthonormalBasis::from_trusted(givens_unitary(
                    &CMatrix::identity(*dim, *dim),
                    coords,
                )))
            }
        }
    }
}

pub fn coordinate_count(dim: usize) -> usize {
    dim * dim.saturating_sub(1)
}

pub(crate) fn givens_pairs(dim: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..dim).flat_map(move |k| (k + 1..dim).map(move |l| (k, l)))
}

/// `base · Π_{k<l} G_{kl}(θ, φ)` where `G` mixes columns `k` and `l`:
/// `c_k ← cos θ c_k + e^{iφ} sin θ c_l`, `c_l ← −e^{−iφ} sin θ c_k + cos θ c_l`.
pub fn givens_unitary(base: &CMatrix, coords: &[f64]) -> CMatrix {
    let mut u = base.clone();
    let d = u.ncols();
    for ((k, l), pair) in givens_pairs(d).zip(coords.chunks_exact(2)) {
        let (s, co) = pair[0].sin_cos();
        if s == 0.0 {
            continue;
        }
        let ph = C64::from_polar(1.0, pair[1]);
        for r in 0..u.nrows() {
            let a = u[(r, k)];
            let b = u[(r, l)];
            u[(r, k)] = a * co + ph * b * s;
            u[(r, l)] = -ph.conj() * a * s + b * co;
        }
    }
    u
}

/// Bloch angles `(θ, φ)` of a unit axis.
pub(crate) fn axis_to_angles(n: [f64; 3]) -> (f64, f64) {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if norm == 0.0 {
        return (0.0, 0.0);
    }
    ((n[2] / norm).clamp(-1.0, 1.0).acos(), n[1].atan2(n[0]))
}

pub(crate) fn angles_to_axis(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::random::rng_for;
    use crate::quantum::{unitarity_defect, BlochVector};
    use proptest::prelude::*;
    use rand::Rng;

    proptest! {
        #[test]
        fn givens_output_is_unitary(seed in 0u64..500, d in 1usize..7) {
            let mut rng = rng_for(seed, 0);
            let coords: Vec<f64> = (0..coordinate_count(d)).map(|_| rng.random_range(-4.0..4.0)).collect();
            let b = BasisParameters::Givens { dim: d, coords }.to_basis().unwrap();
            prop_assert!(unitarity_defect(b.matrix()) < 1e-12);
        }
    }

    #[test]
    fn zero_coordinates_give_identity() {
        let b = BasisParameters::Givens {
            dim: 4,
            coords: vec![0.0; 12],
        }
        .to_basis()
        .unwrap();
        assert_eq!(b.matrix(), &CMatrix::identity(4, 4));
    }

    #[test]
    fn wrong_coordinate_count() {
        assert!(BasisParameters::Givens { dim: 3, coords: vec![0.0; 5] }.to_basis().is_err());
    }

    #[test]
    fn qubit_angles_match_bloch_axis() {
        let (theta, phi) = (0.8, -2.1);
        let b = BasisParameters::Qubit { theta, phi }.to_basis().unwrap();
        let r = BlochVector::from_density(&b.vector(0).density()).unwrap();
        let n = angles_to_axis(theta, phi);
        for k in 0..3 {
            assert!((r.0[k] - n[k]).abs() < 1e-14);
        }
        let (t2, p2) = axis_to_angles(n);
        assert!((t2 - theta).abs() < 1e-12 && (p2 - phi).abs() < 1e-12);
    }

    #[test]
    fn qubit_givens_reaches_any_axis() {
        // one Givens rotation with angle θ/2 and phase φ maps |0⟩ to the axis (θ, φ)
        let b = BasisParameters::Givens {
            dim: 2,
            coords: vec![0.6, 1.3],
        }
        .to_basis()
        .unwrap();
        let r = BlochVector::from_density(&b.vector(0).density()).unwrap();
        let n = angles_to_axis(1.2, 1.3);
        for k in 0..3 {
            assert!((r.0[k] - n[k]).abs() < 1e-12);
        }
    }
}
