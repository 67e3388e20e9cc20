use nalgebra::SymmetricEigen;

use super::{max_abs_diff, CMatrix, DensityMatrix, OrthonormalBasis};
use crate::error::{EcccError, Result};
use crate::tolerance::TOL;

/// Eigenvalues in descending order with their eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: OrthonormalBasis,
}

impl SpectralDecomposition {
    /// `Σ λ_k |v_k⟩⟨v_k|`.
    pub fn reconstruct(&self) -> CMatrix {
        let v = self.eigenvectors.matrix();
        let d = v.nrows();
        let mut out = CMatrix::zeros(d, d);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let col = v.column(k);
            out += (col * col.adjoint()) * super::c(lam, 0.0);
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
/// Columns of the returned matrix are the matching eigenvectors.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(m.clone());
    let d = m.nrows();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let vals = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vecs = CMatrix::from_fn(d, d, |i, j| eig.eigenvectors[(i, order[j])]);
    (vals, vecs)
}

/// Spectral decomposition of a density matrix with eigenvalues clamped into `[0, 1]`.
pub fn spectral(rho: &DensityMatrix) -> Result<SpectralDecomposition> {
    let m = rho.matrix();
    let dev = max_abs_diff(m, &m.adjoint());
    if dev > TOL.hermitian {
        return Err(EcccError::NotHermitian(dev));
    }
    let (vals, vecs) = hermitian_eigen(m);
    if let Some(&min) = vals.last() {
        if min < -TOL.psd {
            return Err(EcccError::NotPositive(min));
        }
    }
    Ok(SpectralDecomposition {
        eigenvalues: vals.into_iter().map(|x| x.clamp(0.0, 1.0)).collect(),
        eigenvectors: OrthonormalBasis::from_trusted(vecs),
    })
}
