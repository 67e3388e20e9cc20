//! Numerical tolerances shared by validation, optimization and the property suites.

/// Every threshold used to accept or reject numerical objects lives here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max entrywise deviation from Hermiticity.
    pub hermitian: f64,
    /// Max deviation of the trace from one.
    pub trace: f64,
    /// Eigenvalues down to `-psd` are clamped to zero; below that is an error.
    pub psd: f64,
    /// Unit-norm slack for pure states.
    pub norm: f64,
    /// Gram-matrix slack for orthonormal bases.
    pub orthonormal: f64,
    /// Unitarity slack for conjugating matrices.
    pub unitary: f64,
    /// Weight normalization slack for ensembles.
    pub weight_sum: f64,
    /// Slack on Bloch vector length.
    pub bloch: f64,
    /// A state is pure when its largest eigenvalue is within this of one.
    pub rank: f64,
    /// Eigenvalues of the ensemble mixture above this span the support.
    pub support: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-10,
            trace: 1e-10,
            psd: 1e-10,
            norm: 1e-10,
            orthonormal: 1e-10,
            unitary: 1e-10,
            weight_sum: 1e-10,
            bloch: 1e-10,
            rank: 1e-9,
            support: 1e-9,
        }
    }
}

pub const TOL: Tolerances = Tolerances {
    hermitian: 1e-10,
    trace: 1e-10,
    psd: 1e-10,
    norm: 1e-10,
    orthonormal: 1e-10,
    unitary: 1e-10,
    weight_sum: 1e-10,
    bloch: 1e-10,
    rank: 1e-9,
    support: 1e-9,
};
