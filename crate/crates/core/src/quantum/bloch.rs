use super::{c, CMatrix, DensityMatrix};
use crate::error::{EcccError, Result};
use crate::tolerance::TOL;

/// Real 3-vector `r` with `ρ = (I + r·σ)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub [f64; 3]);

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let r = Self([x, y, z]);
        let n = r.norm();
        if !n.is_finite() || n > 1.0 + TOL.bloch {
            return Err(EcccError::BlochOutOfRange(n));
        }
        Ok(r)
    }

    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(EcccError::NotQubit(rho.dim()));
        }
        let m = rho.matrix();
        let off = m[(0, 1)];
        Ok(Self([2.0 * off.re, -2.0 * off.im, m[(0, 0)].re - m[(1, 1)].re]))
    }

    pub fn to_density(&self) -> DensityMatrix {
        let [x, y, z] = self.0;
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.5 * (1.0 + z), 0.0), c(0.5 * x, -0.5 * y), c(0.5 * x, 0.5 * y), c(0.5 * (1.0 - z), 0.0)],
        );
        DensityMatrix::from_trusted(m)
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scaled(&self, s: f64) -> BlochVector {
        Self(self.0.map(|x| x * s))
    }
}

/// Qubit fidelity from Bloch vectors:
/// `½{1 + r·r′ + √((1 − |r|²)(1 − |r′|²))}`.
pub fn fidelity_qubit_bloch(r: &BlochVector, rp: &BlochVector) -> Result<f64> {
    for v in [r, rp] {
        let n = v.norm();
        if !n.is_finite() || n > 1.0 + TOL.bloch {
            return Err(EcccError::BlochOutOfRange(n));
        }
    }
    let mixed = ((1.0 - r.dot(r)) * (1.0 - rp.dot(rp))).max(0.0).sqrt();
    Ok((0.5 * (1.0 + r.dot(rp) + mixed)).clamp(0.0, 1.0))
}
