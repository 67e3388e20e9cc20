//! `J`, the largest average classical-cloning fidelity over orthonormal bases,
//! and `Q = 1 − J`.
//!
//! The search runs Nelder-Mead from many starting bases and keeps the best.
//! Starting bases are the eigenbases suggested by the ensemble itself (the
//! mixture, a random linear combination of the states, and the individual
//! states) followed by Haar-random bases. Qubit ensembles use the Bloch-axis
//! form of the objective; higher dimensions use Givens coordinates around
//! each starting unitary.

mod bounds;
mod grid;
pub mod nelder_mead;
mod objective;
pub mod params;
mod product;

pub use bounds::{theorem1_bounds, theorem2_bound, LowerBounds};
pub use grid::eccc_qubit_grid;
pub use params::BasisParameters;
pub use product::{check_product_inequality, ProductReport};

use rand::Rng;
use rayon::prelude::*;

use crate::cloning::average_cloning_fidelity;
use crate::ensemble::Ensemble;
use crate::error::{EcccError, Result};
use crate::quantum::random::{gram_schmidt, random_pure_state_with, random_unitary_with, rng_for};
use crate::quantum::{c, hermitian_eigen, spectral, unitarity_defect, BlochVector, CMatrix, OrthonormalBasis};
use crate::tolerance::TOL;

use nelder_mead::NelderMead;
use objective::{MatrixObjective, QubitObjective};
use params::{angles_to_axis, axis_to_angles, coordinate_count, givens_unitary};

/// Accuracy the acceptance checks grant the optimizer in dimension `dim`.
pub fn epsilon_opt(dim: usize) -> f64 {
    if dim <= 2 {
        1e-4
    } else {
        1e-3
    }
}

#[derive(Debug, Clone)]
pub struct EcccOptions {
    /// Haar-random starts on top of the warm starts. At least one.
    pub restarts: usize,
    /// Simplex value-spread tolerance.
    pub tolerance: f64,
    /// Objective evaluations per start; `0` picks a dimension-dependent budget.
    pub max_evals: usize,
    pub seed: u64,
    /// Search the whole space instead of the support of the mixture.
    pub full_space: bool,
    /// Cap on the per-state eigenbasis warm starts.
    pub max_state_warm_starts: usize,
}

pub const DEFAULT_SEED: u64 = 0xECCC;

impl Default for EcccOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            tolerance: 1e-14,
            max_evals: 0,
            seed: DEFAULT_SEED,
            full_space: false,
            max_state_warm_starts: 8,
        }
    }
}

impl EcccOptions {
    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_full_space(mut self, full_space: bool) -> Self {
        self.full_space = full_space;
        self
    }
}

#[derive(Debug, Clone)]
pub struct EcccResult {
    pub j: f64,
    /// Stored as `1 − j`.
    pub q: f64,
    pub basis: OrthonormalBasis,
    /// Starting points tried (warm and random).
    pub restarts_used: usize,
    /// Best start value minus the runner-up.
    pub gap: f64,
    /// At least two starts agree with the best value to `1e-6`.
    pub converged: bool,
    pub epsilon_opt: f64,
    pub evaluations: usize,
    /// Final objective value of every start, in start order.
    pub start_values: Vec<f64>,
}

impl EcccResult {
    fn new(e: &Ensemble, basis: OrthonormalBasis, j: f64, start_values: Vec<f64>, evaluations: usize) -> Self {
        let mut sorted = start_values.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let gap = if sorted.len() >= 2 { sorted[0] - sorted[1] } else { 0.0 };
        Self {
            j,
            q: 1.0 - j,
            basis,
            restarts_used: start_values.len(),
            gap,
            converged: sorted.len() >= 2 && gap <= 1e-6,
            epsilon_opt: epsilon_opt(e.dim()),
            evaluations,
            start_values,
        }
    }

    fn exact_one(e: &Ensemble, basis: OrthonormalBasis) -> Self {
        Self {
            j: 1.0,
            q: 0.0,
            basis,
            restarts_used: 0,
            gap: 0.0,
            converged: true,
            epsilon_opt: epsilon_opt(e.dim()),
            evaluations: 0,
            start_values: vec![1.0],
        }
    }
}

pub fn eccc(e: &Ensemble, opts: &EcccOptions) -> Result<EcccResult> {
    eccc_with_starts(e, opts, &[])
}

/// `eccc` with caller-supplied starting bases tried after the built-in warm starts.
pub fn eccc_with_starts(e: &Ensemble, opts: &EcccOptions, extra: &[OrthonormalBasis]) -> Result<EcccResult> {
    if opts.restarts == 0 {
        return Err(EcccError::OutOfRange {
            what: "restarts",
            value: 0.0,
        });
    }
    for b in extra {
        if b.dim() != e.dim() {
            return Err(EcccError::DimensionMismatch {
                expected: e.dim(),
                found: b.dim(),
            });
        }
    }
    if e.dim() == 1 || e.len() == 1 || e.all_states_equal(1e-12) {
        let basis = spectral(&e.items()[0].state)?.eigenvectors;
        return Ok(EcccResult::exact_one(e, basis));
    }
    if let Some(basis) = common_eigenbasis(e, opts.seed) {
        return Ok(EcccResult::exact_one(e, basis));
    }

    let support = if opts.full_space { None } else { Support::of(e) };
    let (work, starts) = match &support {
        Some(s) => (s.reduce(e), extra.iter().filter_map(|b| s.restrict(b)).collect()),
        None => (e.clone(), extra.to_vec()),
    };

    let (basis, values, evals) = match work.dim() {
        1 => (OrthonormalBasis::computational(1)?, vec![1.0], 0),
        2 => solve_qubit(&work, opts, &starts),
        _ => solve_general(&work, opts, &starts),
    };
    let basis = match &support {
        Some(s) => s.embed(&basis),
        None => basis,
    };
    if !values.iter().any(|v| v.is_finite()) {
        return Err(EcccError::Optimizer("objective was not finite at any start".into()));
    }
    let j = average_cloning_fidelity(e, &basis)?;
    if !j.is_finite() {
        return Err(EcccError::Optimizer("non-finite fidelity at the best basis".into()));
    }
    Ok(EcccResult::new(e, basis, j, values, evals))
}

/// Eigenbasis of a random positive combination of the states, returned when it
/// diagonalizes every state (the ensemble commutes).
fn common_eigenbasis(e: &Ensemble, seed: u64) -> Option<OrthonormalBasis> {
    let combo = random_combination(e, seed);
    let (_, v) = hermitian_eigen(&combo);
    let d = e.dim();
    let diagonal = e.items().iter().all(|it| {
        let m = v.adjoint() * it.state.matrix() * &v;
        (0..d).all(|i| (0..d).all(|j| i == j || m[(i, j)].norm() <= 1e-10))
    });
    diagonal.then(|| OrthonormalBasis::from_trusted(v))
}

fn random_combination(e: &Ensemble, seed: u64) -> CMatrix {
    let d = e.dim();
    let mut rng = rng_for(seed, u64::MAX);
    let mut combo = CMatrix::zeros(d, d);
    for it in e.items() {
        combo += it.state.matrix() * c(rng.random_range(0.5..1.5), 0.0);
    }
    combo
}

/// Support of the ensemble mixture when it is a proper subspace.
struct Support {
    inside: CMatrix,
    outside: CMatrix,
}

impl Support {
    fn of(e: &Ensemble) -> Option<Self> {
        let (vals, vecs) = hermitian_eigen(e.mixture().matrix());
        let rank = vals.iter().filter(|&&v| v > TOL.support).count().max(1);
        let d = e.dim();
        if rank == d {
            return None;
        }
        Some(Self {
            inside: vecs.columns(0, rank).into_owned(),
            outside: vecs.columns(rank, d - rank).into_owned(),
        })
    }

    fn reduce(&self, e: &Ensemble) -> Ensemble {
        let v = &self.inside;
        e.map_states(|rho| {
            let m = v.adjoint() * rho.matrix() * v;
            let tr = m.trace().re;
            crate::quantum::DensityMatrix::from_trusted(m / c(tr, 0.0))
        })
    }

    fn embed(&self, b: &OrthonormalBasis) -> OrthonormalBasis {
        let inner = &self.inside * b.matrix();
        let d = self.inside.nrows();
        let r = inner.ncols();
        let mut u = CMatrix::zeros(d, d);
        u.columns_mut(0, r).copy_from(&inner);
        u.columns_mut(r, d - r).copy_from(&self.outside);
        OrthonormalBasis::from_trusted(u)
    }

    /// Support coordinates of the `r` basis vectors lying closest to the support.
    fn restrict(&self, b: &OrthonormalBasis) -> Option<OrthonormalBasis> {
        let proj = self.inside.adjoint() * b.matrix();
        let r = proj.nrows();
        let mut order: Vec<usize> = (0..proj.ncols()).collect();
        order.sort_by(|&x, &y| proj.column(y).norm().total_cmp(&proj.column(x).norm()));
        let picked = CMatrix::from_fn(r, r, |i, j| proj[(i, order[j])]);
        gram_schmidt(picked).map(OrthonormalBasis::from_trusted)
    }
}

fn solve_qubit(e: &Ensemble, opts: &EcccOptions, extra: &[OrthonormalBasis]) -> (OrthonormalBasis, Vec<f64>, usize) {
    let obj = QubitObjective::new(e);
    let mut seeds: Vec<[f64; 3]> = Vec::new();

    // principal axes of Σ q r rᵀ; exact maximizers for pure ensembles
    let moment = QubitObjective::second_moment(e);
    let m = nalgebra::Matrix3::from_fn(|a, b| moment[a][b]);
    let eig = nalgebra::SymmetricEigen::new(m);
    for k in 0..3 {
        let v = eig.eigenvectors.column(k);
        seeds.push([v[0], v[1], v[2]]);
    }
    let mix = BlochVector::from_density(&e.mixture()).expect("qubit").0;
    if mix.iter().map(|x| x * x).sum::<f64>() > 1e-18 {
        seeds.push(mix);
    }
    let heaviest = e.argmax_weight();
    let items = e.items();
    let others = (0..items.len()).filter(|&i| i != heaviest);
    for i in std::iter::once(heaviest).chain(others).take(opts.max_state_warm_starts.max(1)) {
        let r = BlochVector::from_density(&items[i].state).expect("qubit").0;
        if r.iter().map(|x| x * x).sum::<f64>() > 1e-18 {
            seeds.push(r);
        }
    }
    for b in extra {
        seeds.push(BlochVector::from_density(&b.vector(0).density()).expect("qubit").0);
    }
    // coarse grid seed
    let (mut grid_best, mut grid_val) = ([0.0, 0.0, 1.0], f64::NEG_INFINITY);
    for a in 0..=12 {
        for b in 0..24 {
            let n = angles_to_axis(std::f64::consts::PI * a as f64 / 12.0, std::f64::consts::PI * b as f64 / 12.0);
            let v = obj.eval_axis(n);
            if v > grid_val {
                grid_val = v;
                grid_best = n;
            }
        }
    }
    seeds.push(grid_best);
    for k in 0..opts.restarts {
        let mut rng = rng_for(opts.seed, k as u64);
        let psi = random_pure_state_with(2, &mut rng);
        seeds.push(BlochVector::from_density(&psi.density()).expect("qubit").0);
    }

    let nm = NelderMead {
        initial_step: 0.2,
        ftol: opts.tolerance,
        xtol: 1e-9,
        max_evals: if opts.max_evals == 0 { 4000 } else { opts.max_evals },
        max_rebuilds: 4,
    };
    let runs: Vec<_> = seeds
        .par_iter()
        .map(|&n| {
            let (t, p) = axis_to_angles(n);
            nm.minimize(|x| -obj.eval_axis(angles_to_axis(x[0], x[1])), &[t, p])
        })
        .collect();
    let best = pick_best(runs.iter().map(|m| -m.f));
    let (theta, phi) = (runs[best].x[0], runs[best].x[1]);
    let values = runs.iter().map(|m| -m.f).collect();
    let evals = runs.iter().map(|m| m.evals).sum();
    (OrthonormalBasis::qubit(theta, phi), values, evals)
}

fn solve_general(e: &Ensemble, opts: &EcccOptions, extra: &[OrthonormalBasis]) -> (OrthonormalBasis, Vec<f64>, usize) {
    let d = e.dim();
    let obj = MatrixObjective::new(e);
    let mut bases: Vec<CMatrix> = Vec::new();

    bases.push(hermitian_eigen(e.mixture().matrix()).1);
    bases.push(hermitian_eigen(&random_combination(e, opts.seed)).1);
    let heaviest = e.argmax_weight();
    bases.push(hermitian_eigen(e.items()[heaviest].state.matrix()).1);
    for (i, it) in e.items().iter().enumerate().take(opts.max_state_warm_starts) {
        if i != heaviest {
            bases.push(hermitian_eigen(it.state.matrix()).1);
        }
    }
    bases.extend(extra.iter().map(|b| b.matrix().clone()));
    for k in 0..opts.restarts {
        bases.push(random_unitary_with(d, &mut rng_for(opts.seed, k as u64)));
    }

    let n = coordinate_count(d);
    let budget = if opts.max_evals == 0 { 200 * (n + 1) } else { opts.max_evals };
    let screen = NelderMead {
        initial_step: 0.4,
        ftol: opts.tolerance.max(1e-10),
        xtol: 1e-6,
        max_evals: (SCREEN_EVALS_PER_COORD * (n + 1)).min(budget),
        max_rebuilds: 0,
    };
    let polish = NelderMead {
        initial_step: 0.05,
        ftol: opts.tolerance,
        xtol: 1e-8,
        max_evals: budget,
        max_rebuilds: 4,
    };
    let objective = |u0: &CMatrix, x: &[f64]| -obj.eval(&givens_unitary(u0, x));
    let screened: Vec<_> = bases
        .par_iter()
        .map(|u0| {
            let m = screen.minimize(|x| objective(u0, x), &vec![0.0; n]);
            (givens_unitary(u0, &m.x), m)
        })
        .collect();

    // Polish, in start order, every start that screens close to the best final
    // value so far. Adding starts never changes the decisions for earlier ones,
    // so more restarts cannot lower the result.
    let mut values = Vec::with_capacity(screened.len());
    let mut best: Option<(CMatrix, f64)> = None;
    let mut evals = 0;
    for (u, m) in screened {
        evals += m.evals;
        let mut value = -m.f;
        let mut u = u;
        if best.as_ref().is_none_or(|(_, b)| value >= b - POLISH_WINDOW) {
            let p = polish.minimize(|x| objective(&u, x), &vec![0.0; n]);
            evals += p.evals;
            if -p.f > value {
                u = givens_unitary(&u, &p.x);
                value = -p.f;
            }
        }
        if best.as_ref().is_none_or(|(_, b)| value > *b) {
            best = Some((u, value));
        }
        values.push(value);
    }
    let (u, _) = best.expect("at least one start");
    debug_assert!(unitarity_defect(&u) < 1e-9);
    (OrthonormalBasis::from_trusted(u), values, evals)
}

/// Screening budget of each start, per coordinate.
const SCREEN_EVALS_PER_COORD: usize = 60;
/// Screened starts this far below the incumbent are not polished.
const POLISH_WINDOW: f64 = 1e-3;

/// First index holding the maximum; NaN never wins.
fn pick_best(values: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, v) in values.enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    best.0
}

/// `{q_i, u ρ_i u†}` for a unitary `u`.
pub fn unitary_conjugate(e: &Ensemble, u: &CMatrix) -> Result<Ensemble> {
    if u.nrows() != e.dim() || u.ncols() != e.dim() {
        return Err(EcccError::DimensionMismatch {
            expected: e.dim(),
            found: u.nrows(),
        });
    }
    let dev = unitarity_defect(u);
    if dev > TOL.unitary {
        return Err(EcccError::NotUnitary(dev));
    }
    Ok(e.map_states(|rho| rho.conjugated(u)))
}

#[cfg(test)]
mod tests;
