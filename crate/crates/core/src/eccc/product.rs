use serde::Serialize;

use super::{eccc, eccc_with_starts, epsilon_opt, EcccOptions};
use crate::ensemble::{product_ensemble, Ensemble};
use crate::error::Result;

#[derive(Debug, Clone, Serialize)]
pub struct ProductReport {
    pub j_a: f64,
    pub j_b: f64,
    pub j_ab: f64,
    /// `J(E_AB) − J(E_A) J(E_B)`; the inequality says this is non-negative.
    pub gap: f64,
    pub epsilon_opt: f64,
    pub holds: bool,
}

/// Computes `J(E_A)`, `J(E_B)`, `J(E_A ⊗ E_B)` and checks
/// `J(E_AB) ≥ J(E_A) J(E_B) − ε_opt`.
///
/// The tensor product of the two optimal bases seeds the joint search.
pub fn check_product_inequality(ea: &Ensemble, eb: &Ensemble, opts: &EcccOptions) -> Result<ProductReport> {
    let ra = eccc(ea, opts)?;
    let rb = eccc(eb, opts)?;
    let eab = product_ensemble(ea, eb)?;
    let rab = eccc_with_starts(&eab, opts, &[ra.basis.tensor(&rb.basis)])?;
    let eps = epsilon_opt(eab.dim());
    let gap = rab.j - ra.j * rb.j;
    Ok(ProductReport {
        j_a: ra.j,
        j_b: rb.j,
        j_ab: rab.j,
        gap,
        epsilon_opt: eps,
        holds: gap >= -eps,
    })
}
