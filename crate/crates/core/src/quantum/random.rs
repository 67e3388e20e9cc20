//! Seeded sampling of Haar-random states, unitaries and mixed states.
//!
//! Every sampler takes either an explicit seed or a caller-owned RNG. Seeds map
//! to a ChaCha8 stream so that `(seed, stream)` pairs give independent,
//! reproducible sequences regardless of how work is split across threads.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{c, CMatrix, CVector, DensityMatrix, OrthonormalBasis, PureState, C64};
use crate::error::{EcccError, Result};

pub type SimRng = ChaCha8Rng;

/// RNG for the given seed and stream index.
pub fn rng_for(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Child seed for work item `index`, independent of scheduling.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    rng_for(seed, index).next_u64()
}

/// Standard complex Gaussian with `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_pure_state(dim: usize, seed: u64) -> Result<PureState> {
    if dim == 0 {
        return Err(EcccError::ZeroDimension);
    }
    Ok(random_pure_state_with(dim, &mut rng_for(seed, 0)))
}

/// Unitarily invariant pure state: a normalized complex Gaussian vector.
pub fn random_pure_state_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    loop {
        let v = CVector::from_fn(dim, |_, _| complex_gaussian(rng));
        if let Ok(p) = PureState::normalized(v) {
            return p;
        }
    }
}

pub fn random_basis(dim: usize, seed: u64) -> Result<OrthonormalBasis> {
    if dim == 0 {
        return Err(EcccError::ZeroDimension);
    }
    Ok(OrthonormalBasis::from_trusted(random_unitary_with(dim, &mut rng_for(seed, 0))))
}

pub fn random_basis_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> OrthonormalBasis {
    OrthonormalBasis::from_trusted(random_unitary_with(dim, rng))
}

/// Haar unitary from a complex Ginibre matrix orthonormalized column by column.
///
/// Gram-Schmidt leaves the implied `R` factor with a positive real diagonal,
/// which is the phase fix that makes the `Q` factor Haar distributed.
pub fn random_unitary_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    loop {
        let z = CMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng));
        if let Some(q) = gram_schmidt(z) {
            return q;
        }
    }
}

/// Orthonormalizes the columns of a square matrix, `None` if they are dependent.
pub(crate) fn gram_schmidt(mut m: CMatrix) -> Option<CMatrix> {
    let d = m.ncols();
    for k in 0..d {
        // two passes keep the result orthonormal to machine precision
        for _ in 0..2 {
            for j in 0..k {
                let proj = m.column(j).dotc(&m.column(k));
                let qj = m.column(j).into_owned();
                let mut col = m.column_mut(k);
                col -= qj * proj;
            }
        }
        let n = m.column(k).norm();
        if n < 1e-12 {
            return None;
        }
        let mut col = m.column_mut(k);
        col /= c(n, 0.0);
    }
    Some(m)
}

/// Random mixed state `G G† / tr(G G†)` with `G` a `dim × rank` Ginibre matrix.
pub fn random_density_matrix_with<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> DensityMatrix {
    let g = CMatrix::from_fn(dim, rank.max(1), |_, _| complex_gaussian(rng));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::from_trusted(m / c(tr, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(random_pure_state(3, 9).unwrap(), random_pure_state(3, 9).unwrap());
        assert_ne!(random_pure_state(3, 9).unwrap(), random_pure_state(3, 10).unwrap());
        assert_eq!(random_basis(4, 1).unwrap(), random_basis(4, 1).unwrap());
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(random_pure_state(0, 1).is_err());
        assert!(random_basis(0, 1).is_err());
    }

    #[test]
    fn one_dimensional_basis() {
        let b = random_basis(1, 4).unwrap();
        assert!((b.matrix()[(0, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bases_are_orthonormal() {
        for seed in 0..20 {
            assert!(random_basis(3, seed).unwrap().orthonormality_defect() < 1e-10);
            assert!(random_basis(7, seed).unwrap().orthonormality_defect() < 1e-10);
        }
    }

    #[test]
    fn random_mixed_state_is_valid() {
        let mut rng = rng_for(1, 2);
        for d in 1..=5 {
            for r in 1..=d {
                let rho = random_density_matrix_with(d, r, &mut rng);
                DensityMatrix::new(rho.matrix().clone()).unwrap();
            }
        }
    }
}
