use super::{c, spectral::hermitian_eigen, CMatrix, DensityMatrix, PureState};
use crate::error::{EcccError, Result};

/// Squared Uhlmann fidelity `(tr √(√ρ σ √ρ))²`.
///
/// When either argument is pure the overlap `⟨ψ|σ|ψ⟩` is returned directly.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(EcccError::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    if let Some(psi) = rho.as_pure() {
        return Ok(pure_fidelity(&psi, sigma));
    }
    if let Some(psi) = sigma.as_pure() {
        return Ok(pure_fidelity(&psi, rho));
    }
    // tr √(√ρ σ √ρ) is the trace norm of √ρ √σ; singular values stay accurate
    // near zero where eigenvalues of the product do not
    let prod = psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix());
    let nuclear: f64 = prod.singular_values().iter().sum();
    Ok((nuclear * nuclear).clamp(0.0, 1.0))
}

/// `⟨ψ|σ|ψ⟩`.
pub fn pure_fidelity(psi: &PureState, sigma: &DensityMatrix) -> f64 {
    let v = psi.amplitudes();
    (v.adjoint() * sigma.matrix() * v)[(0, 0)].re.clamp(0.0, 1.0)
}

/// `F(ρ, Σ_j w_j |u_j⟩⟨u_j|)` from `√ρ`, the basis matrix `u` and the weights `w`.
pub(crate) fn fidelity_with_dephased(sqrt_rho: &CMatrix, u: &CMatrix, weights: &[f64]) -> f64 {
    let mut m = sqrt_rho * u;
    for (j, w) in weights.iter().enumerate() {
        m.column_mut(j).scale_mut(w.max(0.0).sqrt());
    }
    let nuclear: f64 = m.singular_values().iter().sum();
    (nuclear * nuclear).clamp(0.0, 1.0)
}

/// Eigenvalues this small are rounding noise of an exact zero.
const NOISE_FLOOR: f64 = 1e-15;

/// Square root of a PSD matrix through its eigendecomposition. Negative
/// rounding noise in the spectrum is treated as zero.
pub(crate) fn psd_sqrt(m: &CMatrix) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(m);
    let d = m.nrows();
    let mut out = CMatrix::zeros(d, d);
    for (k, &lam) in vals.iter().enumerate() {
        if lam <= NOISE_FLOOR {
            continue;
        }
        let col = vecs.column(k);
        out += (col * col.adjoint()) * c(lam.sqrt(), 0.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::random::{random_density_matrix_with, random_unitary_with, rng_for};

    #[test]
    fn textbook_values() {
        let zero = PureState::basis(2, 0).unwrap().density();
        let one = PureState::basis(2, 1).unwrap().density();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!((fidelity(&zero, &zero).unwrap() - 1.0).abs() < 1e-14);
        assert!(fidelity(&zero, &one).unwrap().abs() < 1e-14);
        assert!((fidelity(&zero, &mixed).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn mixed_self_fidelity_is_one() {
        let mut rng = rng_for(3, 0);
        for d in 2..=5 {
            let rho = random_density_matrix_with(d, d, &mut rng);
            assert!((fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn commuting_states_reduce_to_classical_fidelity() {
        let a = DensityMatrix::diagonal(&[0.2, 0.3, 0.5]).unwrap();
        let b = DensityMatrix::diagonal(&[0.6, 0.1, 0.3]).unwrap();
        let classical: f64 = [0.2f64 * 0.6, 0.3 * 0.1, 0.5 * 0.3].iter().map(|x| x.sqrt()).sum();
        assert!((fidelity(&a, &b).unwrap() - classical * classical).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let a = DensityMatrix::maximally_mixed(2).unwrap();
        let b = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(matches!(fidelity(&a, &b), Err(EcccError::DimensionMismatch { .. })));
    }

    #[test]
    fn unitary_covariance() {
        let mut rng = rng_for(5, 0);
        for d in 2..=4 {
            let a = random_density_matrix_with(d, d, &mut rng);
            let b = random_density_matrix_with(d, 2, &mut rng);
            let u = random_unitary_with(d, &mut rng);
            let f0 = fidelity(&a, &b).unwrap();
            let f1 = fidelity(&a.conjugated(&u), &b.conjugated(&u)).unwrap();
            assert!((f0 - f1).abs() < 1e-9);
        }
    }
}
