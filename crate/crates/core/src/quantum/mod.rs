//! Complex-matrix state types, fidelity, spectral decomposition and Haar sampling.

mod bloch;
mod fidelity;
pub mod random;
mod spectral;
mod state;

pub use bloch::{fidelity_qubit_bloch, BlochVector};
pub use fidelity::{fidelity, pure_fidelity};
pub(crate) use fidelity::{fidelity_with_dephased, psd_sqrt};
pub use spectral::{hermitian_eigen, spectral, SpectralDecomposition};
pub use state::{DensityMatrix, OrthonormalBasis, PureState};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Kronecker product of two square matrices.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Max entrywise deviation of `u† u` from the identity.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let g = u.adjoint() * u;
    max_abs_diff(&g, &CMatrix::identity(u.nrows(), u.ncols()))
}
