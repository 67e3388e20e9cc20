use thiserror::Error;

#[derive(Debug, Error)]
pub enum EcccError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("operation requires a qubit (dimension 2), got dimension {0}")]
    NotQubit(usize),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("trace is {0} instead of 1")]
    BadTrace(f64),

    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("vectors are not orthonormal (max Gram deviation {0:.3e})")]
    NotOrthonormal(f64),

    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("Bloch vector has length {0} > 1")]
    BlochOutOfRange(f64),

    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("item {index}: {source}")]
    InvalidItem {
        index: usize,
        #[source]
        source: Box<EcccError>,
    },

    #[error("weights sum to {sum} (deficit {deficit:+.3e})")]
    WeightSum { sum: f64, deficit: f64 },

    #[error("product ensemble would have {0} items, above the cap")]
    TooLarge(usize),

    #[error("item {0} is not a pure state")]
    MixedState(usize),

    #[error("no bound applies: ensemble is neither pure nor a qubit ensemble")]
    NoApplicableBound,

    #[error("optimizer failed: {0}")]
    Optimizer(String),

    #[error("no sifted rounds")]
    NoSiftedRounds,

    #[error("invalid protocol: {0}")]
    InvalidProtocol(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed ensemble file: {0}")]
    Parse(#[from] serde_json::Error),
}

impl EcccError {
    pub(crate) fn at_item(self, index: usize) -> Self {
        EcccError::InvalidItem {
            index,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, EcccError>;
