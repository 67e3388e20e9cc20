use super::{c, max_abs_diff, spectral::hermitian_eigen, unitarity_defect, CMatrix, CVector, C64};
use crate::error::{EcccError, Result};
use crate::tolerance::TOL;

/// A d×d Hermitian, positive-semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    /// Validates and wraps `m`. The stored matrix is the Hermitian part of `m`.
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(EcccError::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(EcccError::ZeroDimension);
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(EcccError::InvalidEnsemble("non-finite matrix entry".into()));
        }
        let herm_dev = max_abs_diff(&m, &m.adjoint());
        if herm_dev > TOL.hermitian {
            return Err(EcccError::NotHermitian(herm_dev));
        }
        let m = hermitize(&m);
        let tr = m.trace().re;
        if (tr - 1.0).abs() > TOL.trace {
            return Err(EcccError::BadTrace(tr));
        }
        let (vals, _) = hermitian_eigen(&m);
        let min = vals.last().copied().unwrap_or(0.0);
        if min < -TOL.psd {
            return Err(EcccError::NotPositive(min));
        }
        Ok(Self { m })
    }

    /// Wraps a matrix already known to be a valid state (up to rounding).
    pub(crate) fn from_trusted(m: CMatrix) -> Self {
        Self { m: hermitize(&m) }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let v = psi.amplitudes();
        Self { m: v * v.adjoint() }
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(EcccError::ZeroDimension);
        }
        Ok(Self {
            m: CMatrix::identity(dim, dim) * c(1.0 / dim as f64, 0.0),
        })
    }

    /// Diagonal state in the computational basis.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let d = probs.len();
        let m = CMatrix::from_fn(d, d, |i, j| if i == j { c(probs[i], 0.0) } else { C64::default() });
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        Self::from_trusted(self.m.kronecker(&other.m))
    }

    /// `u ρ u†`. `u` must have matching dimension; unitarity is the caller's concern.
    pub fn conjugated(&self, u: &CMatrix) -> DensityMatrix {
        Self::from_trusted(u * &self.m * u.adjoint())
    }

    /// The state vector when the largest eigenvalue is within `TOL.rank` of one.
    pub fn as_pure(&self) -> Option<PureState> {
        let (vals, vecs) = hermitian_eigen(&self.m);
        if vals[0] >= 1.0 - TOL.rank {
            Some(PureState::from_normalized(vecs.column(0).into_owned()))
        } else {
            None
        }
    }

    pub fn is_pure(&self) -> bool {
        self.as_pure().is_some()
    }

    /// `tr(ρ σ)` for equal dimensions.
    pub fn overlap(&self, other: &DensityMatrix) -> f64 {
        self.m
            .iter()
            .zip(other.m.transpose().iter())
            .map(|(a, b)| (a * b).re)
            .sum()
    }

    pub fn purity(&self) -> f64 {
        self.overlap(self)
    }

    /// Do `self` and `other` commute within `tol` (entrywise)?
    pub fn commutes_with(&self, other: &DensityMatrix, tol: f64) -> bool {
        let ab = &self.m * &other.m;
        let ba = &other.m * &self.m;
        max_abs_diff(&ab, &ba) <= tol
    }
}

fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * c(0.5, 0.0)
}

/// A unit-norm state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    v: CVector,
}

impl PureState {
    pub fn new(v: CVector) -> Result<Self> {
        if v.is_empty() {
            return Err(EcccError::ZeroDimension);
        }
        let n = v.norm();
        if (n - 1.0).abs() > TOL.norm {
            return Err(EcccError::NotNormalized(n));
        }
        Ok(Self { v })
    }

    /// Normalizes `v`; fails only for the zero vector.
    pub fn normalized(v: CVector) -> Result<Self> {
        let n = v.norm();
        if v.is_empty() {
            return Err(EcccError::ZeroDimension);
        }
        if !(n > 0.0) || !n.is_finite() {
            return Err(EcccError::NotNormalized(n));
        }
        Ok(Self { v: v / c(n, 0.0) })
    }

    pub(crate) fn from_normalized(v: CVector) -> Self {
        Self { v }
    }

    /// Computational basis vector `|k⟩`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if dim == 0 {
            return Err(EcccError::ZeroDimension);
        }
        if k >= dim {
            return Err(EcccError::OutOfRange {
                what: "basis index",
                value: k as f64,
            });
        }
        let mut v = CVector::zeros(dim);
        v[k] = c(1.0, 0.0);
        Ok(Self { v })
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.v
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> C64 {
        self.v.dotc(&other.v)
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        Self {
            v: self.v.kronecker(&other.v),
        }
    }
}

/// An ordered orthonormal basis stored as the columns of a unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    u: CMatrix,
}

impl OrthonormalBasis {
    /// Columns of `u` become the basis vectors.
    pub fn from_unitary(u: CMatrix) -> Result<Self> {
        if u.nrows() == 0 {
            return Err(EcccError::ZeroDimension);
        }
        if !u.is_square() {
            return Err(EcccError::DimensionMismatch {
                expected: u.nrows(),
                found: u.ncols(),
            });
        }
        let dev = unitarity_defect(&u);
        if dev > TOL.orthonormal {
            return Err(EcccError::NotOrthonormal(dev));
        }
        Ok(Self { u })
    }

    pub(crate) fn from_trusted(u: CMatrix) -> Self {
        Self { u }
    }

    pub fn from_vectors(vectors: &[PureState]) -> Result<Self> {
        let d = vectors.first().map(PureState::dim).ok_or(EcccError::ZeroDimension)?;
        if vectors.len() != d {
            return Err(EcccError::DimensionMismatch {
                expected: d,
                found: vectors.len(),
            });
        }
        for v in vectors {
            if v.dim() != d {
                return Err(EcccError::DimensionMismatch {
                    expected: d,
                    found: v.dim(),
                });
            }
        }
        let cols: Vec<CVector> = vectors.iter().map(|v| v.v.clone()).collect();
        Self::from_unitary(CMatrix::from_columns(&cols))
    }

    pub fn computational(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(EcccError::ZeroDimension);
        }
        Ok(Self {
            u: CMatrix::identity(dim, dim),
        })
    }

    /// The qubit basis `|e1⟩ = cos(θ/2)|0⟩ + sin(θ/2)e^{iφ}|1⟩`,
    /// `|e2⟩ = sin(θ/2)|0⟩ − cos(θ/2)e^{iφ}|1⟩`.
    pub fn qubit(theta: f64, phi: f64) -> Self {
        let (s, co) = (0.5 * theta).sin_cos();
        let ph = C64::from_polar(1.0, phi);
        let u = CMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(s, 0.0), ph * s, -ph * co]);
        Self { u }
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.u
    }

    pub fn vector(&self, j: usize) -> PureState {
        PureState::from_normalized(self.u.column(j).into_owned())
    }

    pub fn vectors(&self) -> Vec<PureState> {
        (0..self.dim()).map(|j| self.vector(j)).collect()
    }

    /// `{u|j⟩}`.
    pub fn transformed(&self, u: &CMatrix) -> OrthonormalBasis {
        Self { u: u * &self.u }
    }

    pub fn tensor(&self, other: &OrthonormalBasis) -> OrthonormalBasis {
        Self {
            u: self.u.kronecker(&other.u),
        }
    }

    /// Max Gram-matrix deviation from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        unitarity_defect(&self.u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.1, 0.0), c(0.0, 0.0), c(0.5, 0.0)]);
        assert!(matches!(DensityMatrix::new(m), Err(EcccError::NotHermitian(_))));
    }

    #[test]
    fn rejects_bad_trace_and_negative() {
        assert!(matches!(DensityMatrix::diagonal(&[0.5, 0.4]), Err(EcccError::BadTrace(_))));
        assert!(matches!(
            DensityMatrix::diagonal(&[1.2, -0.2]),
            Err(EcccError::NotPositive(_))
        ));
    }

    #[test]
    fn small_negative_eigenvalue_is_tolerated() {
        assert!(DensityMatrix::diagonal(&[1.0 + 5e-11, -5e-11]).is_ok());
    }

    #[test]
    fn pure_detection() {
        let plus = PureState::normalized(CVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)])).unwrap();
        let rho = plus.density();
        let back = rho.as_pure().unwrap();
        assert!((back.inner(&plus).norm() - 1.0).abs() < 1e-12);
        assert!(!DensityMatrix::maximally_mixed(2).unwrap().is_pure());
    }

    #[test]
    fn qubit_basis_is_orthonormal() {
        let b = OrthonormalBasis::qubit(1.1, 2.3);
        assert!(b.orthonormality_defect() < 1e-14);
    }

    #[test]
    fn from_vectors_rejects_non_orthogonal() {
        let a = PureState::basis(2, 0).unwrap();
        assert!(OrthonormalBasis::from_vectors(&[a.clone(), a]).is_err());
    }
}
