//! Finite weighted ensembles, the named ensemble families, and file I/O.

mod families;
mod io;
mod parametric;

pub use families::{
    double_circle_discretized, make_bb84_weighted, make_bloch_uniform, make_double_circle, make_six_state,
};
pub use io::{load_ensemble, parse_ensemble, save_ensemble, EnsembleFile, FileItem};
pub use parametric::{ParametricEnsemble, ParametricFamily, StateSampler};

use crate::error::{EcccError, Result};
use crate::quantum::{c, psd_sqrt, CMatrix, DensityMatrix, PureState};
use crate::tolerance::TOL;

/// Default cap on the item count of a product ensemble.
pub const DEFAULT_PRODUCT_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleItem {
    pub weight: f64,
    pub state: DensityMatrix,
    pure: Option<PureState>,
    /// `√ρ` of a mixed state.
    sqrt: Option<CMatrix>,
}

impl EnsembleItem {
    pub fn new(weight: f64, state: DensityMatrix) -> Self {
        let pure = state.as_pure();
        let sqrt = match pure {
            Some(_) => None,
            None => Some(psd_sqrt(state.matrix())),
        };
        Self {
            weight,
            state,
            pure,
            sqrt,
        }
    }

    pub(crate) fn sqrt(&self) -> Option<&CMatrix> {
        self.sqrt.as_ref()
    }

    /// State vector when the state is rank one.
    pub fn pure_state(&self) -> Option<&PureState> {
        self.pure.as_ref()
    }
}

/// A weighted list of states sharing one dimension. Weights are positive and sum to one.
///
/// Duplicate states are kept as separate items.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    dim: usize,
    items: Vec<EnsembleItem>,
}

impl Ensemble {
    /// Validates weights and dimensions. Zero-weight items are dropped.
    pub fn new(items: Vec<(f64, DensityMatrix)>) -> Result<Self> {
        let dim = items
            .first()
            .map(|(_, s)| s.dim())
            .ok_or_else(|| EcccError::InvalidEnsemble("no items".into()))?;
        let mut kept = Vec::with_capacity(items.len());
        let mut sum = 0.0;
        for (index, (weight, state)) in items.into_iter().enumerate() {
            if state.dim() != dim {
                return Err(EcccError::DimensionMismatch {
                    expected: dim,
                    found: state.dim(),
                }
                .at_item(index));
            }
            if !weight.is_finite() || weight < 0.0 {
                return Err(EcccError::OutOfRange { what: "weight", value: weight }.at_item(index));
            }
            sum += weight;
            if weight == 0.0 {
                log::info!("dropping zero-weight item {index}");
                continue;
            }
            kept.push(EnsembleItem::new(weight, state));
        }
        if (sum - 1.0).abs() > TOL.weight_sum {
            return Err(EcccError::WeightSum {
                sum,
                deficit: 1.0 - sum,
            });
        }
        if kept.is_empty() {
            return Err(EcccError::InvalidEnsemble("all weights are zero".into()));
        }
        Ok(Self { dim, items: kept })
    }

    pub fn from_pure(items: Vec<(f64, PureState)>) -> Result<Self> {
        Self::new(items.into_iter().map(|(w, s)| (w, s.density())).collect())
    }

    /// Equal weights over `states`.
    pub fn uniform(states: Vec<DensityMatrix>) -> Result<Self> {
        let w = 1.0 / states.len().max(1) as f64;
        Self::new(states.into_iter().map(|s| (w, s)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[EnsembleItem] {
        &self.items
    }

    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.items.iter().map(|it| it.weight)
    }

    /// Largest weight, `q_m`.
    pub fn max_weight(&self) -> f64 {
        self.weights().fold(0.0, f64::max)
    }

    /// Index of the first item carrying the largest weight.
    pub fn argmax_weight(&self) -> usize {
        let qm = self.max_weight();
        self.items.iter().position(|it| it.weight == qm).unwrap_or(0)
    }

    /// `Σ q_i ρ_i`.
    pub fn mixture(&self) -> DensityMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for it in &self.items {
            m += it.state.matrix() * c(it.weight, 0.0);
        }
        DensityMatrix::from_trusted(m)
    }

    /// State vectors when every item is pure.
    pub fn pure_states(&self) -> Option<Vec<PureState>> {
        self.items.iter().map(|it| it.pure.clone()).collect()
    }

    pub fn is_pure(&self) -> bool {
        self.items.iter().all(|it| it.pure.is_some())
    }

    /// Every state equal to the first within `tol` entrywise.
    pub fn all_states_equal(&self, tol: f64) -> bool {
        let first = self.items[0].state.matrix();
        self.items
            .iter()
            .all(|it| crate::quantum::max_abs_diff(it.state.matrix(), first) <= tol)
    }

    /// Applies `f` to every state, keeping the weights. `f` must return valid
    /// states of one common dimension.
    pub(crate) fn map_states(&self, f: impl Fn(&DensityMatrix) -> DensityMatrix) -> Ensemble {
        let items: Vec<EnsembleItem> = self
            .items
            .iter()
            .map(|it| EnsembleItem::new(it.weight, f(&it.state)))
            .collect();
        Ensemble {
            dim: items[0].state.dim(),
            items,
        }
    }
}

/// `{q_i q_j, ρ_i ⊗ σ_j}` with the default item cap.
pub fn product_ensemble(ea: &Ensemble, eb: &Ensemble) -> Result<Ensemble> {
    product_ensemble_capped(ea, eb, DEFAULT_PRODUCT_CAP)
}

pub fn product_ensemble_capped(ea: &Ensemble, eb: &Ensemble, cap: usize) -> Result<Ensemble> {
    let n = ea.len().checked_mul(eb.len()).ok_or(EcccError::TooLarge(usize::MAX))?;
    if n > cap {
        return Err(EcccError::TooLarge(n));
    }
    let mut items = Vec::with_capacity(n);
    for a in ea.items() {
        for b in eb.items() {
            items.push(EnsembleItem::new(a.weight * b.weight, a.state.tensor(&b.state)));
        }
    }
    Ok(Ensemble {
        dim: ea.dim * eb.dim,
        items,
    })
}
