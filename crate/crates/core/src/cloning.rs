//! The classical cloning strategy `|j⟩|0⟩ → |j⟩|j⟩` seen through one output copy:
//! dephasing in the cloning basis, and the average fidelity it achieves on an ensemble.

use crate::ensemble::Ensemble;
use crate::error::{EcccError, Result};
use crate::quantum::{c, fidelity_with_dephased, spectral, CMatrix, DensityMatrix, OrthonormalBasis};

/// One output copy of the classical cloner.
#[derive(Debug, Clone)]
pub struct ClonedOutput {
    pub basis: OrthonormalBasis,
    /// Born probabilities `⟨j|ρ|j⟩`.
    pub weights: Vec<f64>,
    /// `Σ_j ⟨j|ρ|j⟩ |j⟩⟨j|` in the computational frame.
    pub state: DensityMatrix,
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(EcccError::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Born probabilities of `rho` in `basis`.
pub fn born_weights(rho: &DensityMatrix, basis: &OrthonormalBasis) -> Vec<f64> {
    let u = basis.matrix();
    let m = rho.matrix();
    (0..u.ncols())
        .map(|j| {
            let col = u.column(j);
            (col.adjoint() * m * col)[(0, 0)].re.max(0.0)
        })
        .collect()
}

pub fn dephase(rho: &DensityMatrix, basis: &OrthonormalBasis) -> Result<ClonedOutput> {
    check_dim(rho.dim(), basis.dim())?;
    let weights = born_weights(rho, basis);
    let u = basis.matrix();
    let d = u.nrows();
    let diag = CMatrix::from_fn(d, d, |i, j| if i == j { c(weights[i], 0.0) } else { c(0.0, 0.0) });
    let state = DensityMatrix::from_trusted(u * diag * u.adjoint());
    Ok(ClonedOutput {
        basis: basis.clone(),
        weights,
        state,
    })
}

/// `Σ_i q_i F(ρ_i, ρ_i′)` for the cloning basis `basis`.
pub fn average_cloning_fidelity(e: &Ensemble, basis: &OrthonormalBasis) -> Result<f64> {
    check_dim(e.dim(), basis.dim())?;
    let mut total = 0.0;
    for it in e.items() {
        let w = born_weights(&it.state, basis);
        let f = match it.sqrt() {
            Some(s) => fidelity_with_dephased(s, basis.matrix(), &w),
            // pure: ⟨ψ|ρ′|ψ⟩ = Σ_j |⟨j|ψ⟩|⁴
            None => w.iter().map(|x| x * x).sum::<f64>().min(1.0),
        };
        total += it.weight * f;
    }
    Ok(total)
}

/// Average cloning fidelity of the eigen-ensemble `{λ_k, |ψ_k⟩}` of a qubit state:
/// `Σ_{k,j} λ_k |⟨e_j|ψ_k⟩|⁴`.
pub fn eigen_ensemble_fidelity(rho: &DensityMatrix, basis: &OrthonormalBasis) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(EcccError::NotQubit(rho.dim()));
    }
    check_dim(2, basis.dim())?;
    let s = spectral(rho)?;
    let vecs = s.eigenvectors.matrix();
    let u = basis.matrix();
    let mut total = 0.0;
    for (k, &lam) in s.eigenvalues.iter().enumerate() {
        let psi = vecs.column(k);
        for j in 0..2 {
            total += lam * u.column(j).dotc(&psi).norm_sqr().powi(2);
        }
    }
    Ok(total)
}
