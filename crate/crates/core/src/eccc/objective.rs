//! Fast evaluators of `F_ave` used inside the optimizer.

use crate::ensemble::Ensemble;
use crate::quantum::{BlochVector, CMatrix, CVector};

enum Kernel {
    Pure { weight: f64, psi: CVector },
    Mixed { weight: f64, sqrt_rho: CMatrix },
}

/// `F_ave` for a basis given as the columns of a unitary, any dimension.
pub(crate) struct MatrixObjective {
    kernels: Vec<Kernel>,
}

impl MatrixObjective {
    pub fn new(e: &Ensemble) -> Self {
        let kernels = e
            .items()
            .iter()
            .map(|it| match it.pure_state() {
                Some(psi) => Kernel::Pure {
                    weight: it.weight,
                    psi: psi.amplitudes().clone(),
                },
                None => Kernel::Mixed {
                    weight: it.weight,
                    sqrt_rho: it.sqrt().expect("mixed items carry their square root").clone(),
                },
            })
            .collect();
        Self { kernels }
    }

    pub fn eval(&self, u: &CMatrix) -> f64 {
        let d = u.ncols();
        let mut total = 0.0;
        for k in &self.kernels {
            match k {
                Kernel::Pure { weight, psi } => {
                    let f: f64 = (0..d).map(|j| u.column(j).dotc(psi).norm_sqr().powi(2)).sum();
                    total += weight * f;
                }
                Kernel::Mixed { weight, sqrt_rho } => {
                    // √F(ρ, ρ′) is the trace norm of √ρ U √p, with p_j = ‖(√ρ U)_j‖²
                    let mut m = sqrt_rho * u;
                    for j in 0..d {
                        let mut col = m.column_mut(j);
                        let norm = col.norm();
                        col.scale_mut(norm);
                    }
                    let tr: f64 = m.singular_values().iter().sum();
                    total += weight * tr * tr;
                }
            }
        }
        total
    }
}

/// Qubit `F_ave` as a function of the Bloch axis `n` of the cloning basis.
///
/// Pure items contribute `½(1 + (r·n)²)`, which sums to `½(w + nᵀAn)` with
/// `A = Σ q r rᵀ`; mixed items use the Bloch fidelity formula with
/// `r′ = (r·n) n`.
pub(crate) struct QubitObjective {
    pure_weight: f64,
    moment: [[f64; 3]; 3],
    mixed: Vec<(f64, [f64; 3], f64)>,
}

impl QubitObjective {
    pub fn new(e: &Ensemble) -> Self {
        let mut pure_weight = 0.0;
        let mut moment = [[0.0; 3]; 3];
        let mut mixed = Vec::new();
        for it in e.items() {
            let r = BlochVector::from_density(&it.state).expect("qubit ensemble").0;
            if it.pure_state().is_some() {
                pure_weight += it.weight;
                for a in 0..3 {
                    for b in 0..3 {
                        moment[a][b] += it.weight * r[a] * r[b];
                    }
                }
            } else {
                let len2 = r.iter().map(|x| x * x).sum::<f64>();
                mixed.push((it.weight, r, (1.0 - len2).max(0.0)));
            }
        }
        Self {
            pure_weight,
            moment,
            mixed,
        }
    }

    pub fn eval_axis(&self, n: [f64; 3]) -> f64 {
        let mut quad = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                quad += n[a] * self.moment[a][b] * n[b];
            }
        }
        let mut total = 0.5 * (self.pure_weight + quad);
        for (w, r, deficit) in &self.mixed {
            let proj = r[0] * n[0] + r[1] * n[1] + r[2] * n[2];
            let p2 = proj * proj;
            total += w * 0.5 * (1.0 + p2 + (deficit * (1.0 - p2).max(0.0)).sqrt());
        }
        total
    }

    /// `Σ q r rᵀ` over all items, mixed included.
    pub fn second_moment(e: &Ensemble) -> [[f64; 3]; 3] {
        let mut m = [[0.0; 3]; 3];
        for it in e.items() {
            let r = BlochVector::from_density(&it.state).expect("qubit ensemble").0;
            for a in 0..3 {
                for b in 0..3 {
                    m[a][b] += it.weight * r[a] * r[b];
                }
            }
        }
        m
    }
}
