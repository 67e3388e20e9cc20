//! Intercept-resend eavesdropping on prepare-and-measure QKD.
//!
//! Alice picks a sending basis and a symbol, Eve measures every transmitted
//! state in her own basis and resends the outcome, Bob measures in a basis of
//! his choosing, and rounds where Bob's basis differs from Alice's are sifted
//! away. The error rate of the sifted key is `1 − F_ave` of the sent ensemble
//! at Eve's basis, so its floor over Eve's choices is the quantumness `Q`.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cloning::average_cloning_fidelity;
use crate::eccc::{eccc, EcccOptions};
use crate::ensemble::Ensemble;
use crate::error::{EcccError, Result};
use crate::quantum::random::rng_for;
use crate::quantum::{DensityMatrix, OrthonormalBasis, PureState};

/// Sending bases and how often each is chosen; symbol `k` of basis `b` is `bases[b].vector(k)`.
#[derive(Debug, Clone)]
pub struct ProtocolSpec {
    pub bases: Vec<OrthonormalBasis>,
    pub basis_probs: Vec<f64>,
}

impl ProtocolSpec {
    pub fn new(bases: Vec<OrthonormalBasis>, basis_probs: Vec<f64>) -> Result<Self> {
        if bases.is_empty() || bases.len() != basis_probs.len() {
            return Err(EcccError::InvalidProtocol("one probability per basis required".into()));
        }
        let d = bases[0].dim();
        if bases.iter().any(|b| b.dim() != d) {
            return Err(EcccError::InvalidProtocol("bases differ in dimension".into()));
        }
        if basis_probs.iter().any(|p| !(*p > 0.0)) {
            return Err(EcccError::InvalidProtocol("basis probabilities must be positive".into()));
        }
        let total: f64 = basis_probs.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(EcccError::WeightSum {
                sum: total,
                deficit: 1.0 - total,
            });
        }
        Ok(Self { bases, basis_probs })
    }

    /// Z and X bases, equiprobable.
    pub fn bb84() -> Self {
        let z = OrthonormalBasis::computational(2).expect("qubit");
        let x = OrthonormalBasis::qubit(std::f64::consts::FRAC_PI_2, 0.0);
        Self::new(vec![z, x], vec![0.5, 0.5]).expect("valid")
    }

    /// Z, X and Y bases, equiprobable.
    pub fn six_state() -> Self {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let z = OrthonormalBasis::computational(2).expect("qubit");
        let x = OrthonormalBasis::qubit(half_pi, 0.0);
        let y = OrthonormalBasis::qubit(half_pi, half_pi);
        let third = 1.0 / 3.0;
        Self::new(vec![z, x, y], vec![third, third, third]).expect("valid")
    }

    /// Builds a protocol from ensemble items grouped into complete bases.
    /// Items in a group must be pure, orthonormal, and equally weighted.
    pub fn from_groups(items: &[(f64, DensityMatrix)], groups: &[Vec<usize>]) -> Result<Self> {
        let d = items
            .first()
            .map(|(_, s)| s.dim())
            .ok_or_else(|| EcccError::InvalidProtocol("no items".into()))?;
        let mut seen = vec![false; items.len()];
        let mut bases = Vec::new();
        let mut probs = Vec::new();
        for group in groups {
            if group.len() != d {
                return Err(EcccError::InvalidProtocol(format!(
                    "basis group {group:?} has {} states, dimension is {d}",
                    group.len()
                )));
            }
            let mut vecs = Vec::with_capacity(d);
            for &i in group {
                let (_, state) = items
                    .get(i)
                    .ok_or_else(|| EcccError::InvalidProtocol(format!("item index {i} out of range")))?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(EcccError::InvalidProtocol(format!("item {i} is in two groups")));
                }
                vecs.push(state.as_pure().ok_or(EcccError::MixedState(i))?);
            }
            let w0 = items[group[0]].0;
            if group.iter().any(|&i| (items[i].0 - w0).abs() > 1e-9) {
                return Err(EcccError::InvalidProtocol(format!("unequal weights in group {group:?}")));
            }
            bases.push(OrthonormalBasis::from_vectors(&vecs).map_err(|e| {
                EcccError::InvalidProtocol(format!("group {group:?} is not an orthonormal basis: {e}"))
            })?);
            probs.push(w0 * d as f64);
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(EcccError::InvalidProtocol(format!("item {i} belongs to no basis group")));
        }
        Self::new(bases, probs)
    }

    /// Greedy grouping of mutually orthogonal states into bases.
    pub fn infer(e: &Ensemble) -> Result<Self> {
        let states = e.pure_states().ok_or_else(|| {
            let i = e.items().iter().position(|it| it.pure_state().is_none()).unwrap_or(0);
            EcccError::MixedState(i)
        })?;
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, psi) in states.iter().enumerate() {
            let home = groups
                .iter_mut()
                .find(|g| g.len() < e.dim() && g.iter().all(|&k| states[k].inner(psi).norm() < 1e-9));
            match home {
                Some(g) => g.push(i),
                None => groups.push(vec![i]),
            }
        }
        let items: Vec<(f64, DensityMatrix)> = e.items().iter().map(|it| (it.weight, it.state.clone())).collect();
        Self::from_groups(&items, &groups)
    }

    pub fn dim(&self) -> usize {
        self.bases[0].dim()
    }

    fn symbol(&self, basis: usize, k: usize) -> PureState {
        self.bases[basis].vector(k)
    }

    /// `{p_b / d, |b, k⟩}`: what Alice transmits.
    pub fn sent_ensemble(&self) -> Ensemble {
        self.ensemble_with(|p| p)
    }

    /// Sent states weighted as they appear in the sifted key, `∝ p_b²`.
    pub fn sifted_ensemble(&self) -> Ensemble {
        let norm: f64 = self.basis_probs.iter().map(|p| p * p).sum();
        self.ensemble_with(|p| p * p / norm)
    }

    fn ensemble_with(&self, weight: impl Fn(f64) -> f64) -> Ensemble {
        let d = self.dim();
        let mut items = Vec::new();
        for (b, &p) in self.basis_probs.iter().enumerate() {
            for k in 0..d {
                items.push((weight(p) / d as f64, self.symbol(b, k)));
            }
        }
        Ensemble::from_pure(items).expect("normalized by construction")
    }
}

/// `Σ q_i (1 − Σ_j |⟨j|ψ_i⟩|⁴)` for a pure-state ensemble and Eve's basis.
pub fn error_rate_exact(e: &Ensemble, eve_basis: &OrthonormalBasis) -> Result<f64> {
    if e.dim() != eve_basis.dim() {
        return Err(EcccError::DimensionMismatch {
            expected: e.dim(),
            found: eve_basis.dim(),
        });
    }
    let u = eve_basis.matrix();
    let mut r = 0.0;
    for (i, it) in e.items().iter().enumerate() {
        let psi = it.pure_state().ok_or(EcccError::MixedState(i))?.amplitudes();
        let keep: f64 = (0..u.ncols()).map(|j| u.column(j).dotc(psi).norm_sqr().powi(2)).sum();
        r += it.weight * (1.0 - keep);
    }
    Ok(r)
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorRateReport {
    pub exact_r: f64,
    pub empirical_r: Option<f64>,
    pub rounds: u64,
    pub sifted: u64,
    pub q_reference: f64,
    #[serde(serialize_with = "serialize_basis")]
    pub eve_basis: Option<OrthonormalBasis>,
}

impl ErrorRateReport {
    /// Binomial standard error of the empirical rate around the exact one.
    pub fn binomial_stderr(&self) -> f64 {
        let r = self.exact_r;
        (r * (1.0 - r) / self.sifted.max(1) as f64).sqrt()
    }
}

/// Basis vectors as lists of `[re, im]` pairs.
fn serialize_basis<S: serde::Serializer>(b: &Option<OrthonormalBasis>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Option<Vec<Vec<[f64; 2]>>> = b.as_ref().map(|b| {
        b.vectors()
            .iter()
            .map(|v| v.amplitudes().iter().map(|z| [z.re, z.im]).collect())
            .collect()
    });
    serde::Serialize::serialize(&rows, s)
}

/// Minimizes the intercept-resend error rate over Eve's basis: `min R = 1 − J = Q`.
pub fn min_error_rate(e: &Ensemble, opts: &EcccOptions) -> Result<ErrorRateReport> {
    if let Some(i) = e.items().iter().position(|it| it.pure_state().is_none()) {
        return Err(EcccError::MixedState(i));
    }
    let res = eccc(e, opts)?;
    Ok(ErrorRateReport {
        exact_r: error_rate_exact(e, &res.basis)?,
        empirical_r: None,
        rounds: 0,
        sifted: 0,
        q_reference: res.q,
        eve_basis: Some(res.basis),
    })
}

#[derive(Debug, Clone)]
pub struct SimulationOptions {
    pub rounds: u64,
    pub seed: u64,
    /// Probability that Eve intercepts a round.
    pub intercept_fraction: f64,
    /// Optimizer settings for the `Q` reference.
    pub eccc: EcccOptions,
}

impl Default for SimulationOptions {
    fn default() -> Self {
        Self {
            rounds: 1_000_000,
            seed: crate::eccc::DEFAULT_SEED,
            intercept_fraction: 1.0,
            eccc: EcccOptions::default(),
        }
    }
}

const CHUNK: u64 = 1 << 16;

fn draw(rng: &mut impl Rng, probs: &[f64]) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probs.len() - 1
}

/// Round-by-round simulation. `eve_basis = None` lets every state through untouched.
///
/// Each round draws, in order: Alice's basis, Alice's symbol, Eve's outcome,
/// Bob's basis, and Bob's outcome when the bases match. Rounds are split into
/// fixed chunks with their own RNG stream, so the tally does not depend on the
/// number of worker threads.
pub fn simulate_protocol(
    spec: &ProtocolSpec,
    eve_basis: Option<&OrthonormalBasis>,
    opts: &SimulationOptions,
) -> Result<ErrorRateReport> {
    if opts.rounds == 0 {
        return Err(EcccError::OutOfRange { what: "rounds", value: 0.0 });
    }
    if !(0.0..=1.0).contains(&opts.intercept_fraction) {
        return Err(EcccError::OutOfRange {
            what: "intercept_fraction",
            value: opts.intercept_fraction,
        });
    }
    let d = spec.dim();
    if let Some(b) = eve_basis {
        if b.dim() != d {
            return Err(EcccError::DimensionMismatch { expected: d, found: b.dim() });
        }
    }
    let nb = spec.bases.len();
    // eve_probs[b][k][j] = |⟨e_j|b,k⟩|², bob_probs[b][j][m] = |⟨b,m|e_j⟩|²
    let (eve_probs, bob_probs): (Vec<Vec<Vec<f64>>>, Vec<Vec<Vec<f64>>>) = match eve_basis {
        Some(eb) => {
            let ev = eb.vectors();
            let eve = (0..nb)
                .map(|b| (0..d).map(|k| ev.iter().map(|e| e.inner(&spec.symbol(b, k)).norm_sqr()).collect()).collect())
                .collect();
            let bob = (0..nb)
                .map(|b| (0..d).map(|j| (0..d).map(|m| spec.symbol(b, m).inner(&ev[j]).norm_sqr()).collect()).collect())
                .collect();
            (eve, bob)
        }
        None => (Vec::new(), Vec::new()),
    };
    let partial = opts.intercept_fraction < 1.0;

    let chunks = opts.rounds.div_ceil(CHUNK);
    let (sifted, errors) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = rng_for(opts.seed, c);
            let n = CHUNK.min(opts.rounds - c * CHUNK);
            let (mut sifted, mut errors) = (0u64, 0u64);
            for _ in 0..n {
                let a_basis = draw(&mut rng, &spec.basis_probs);
                let bit = rng.random_range(0..d);
                let intercepted = eve_basis.is_some() && (!partial || rng.random::<f64>() < opts.intercept_fraction);
                let eve_out = intercepted.then(|| draw(&mut rng, &eve_probs[a_basis][bit]));
                let b_basis = draw(&mut rng, &spec.basis_probs);
                if b_basis != a_basis {
                    continue;
                }
                sifted += 1;
                if let Some(j) = eve_out {
                    if draw(&mut rng, &bob_probs[a_basis][j]) != bit {
                        errors += 1;
                    }
                }
            }
            (sifted, errors)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    if sifted == 0 {
        return Err(EcccError::NoSiftedRounds);
    }

    let sifted_ensemble = spec.sifted_ensemble();
    let exact_r = match eve_basis {
        Some(b) => opts.intercept_fraction * (1.0 - average_cloning_fidelity(&sifted_ensemble, b)?),
        None => 0.0,
    };
    let q_reference = eccc(&sifted_ensemble, &opts.eccc)?.q;
    Ok(ErrorRateReport {
        exact_r,
        empirical_r: Some(errors as f64 / sifted as f64),
        rounds: opts.rounds,
        sifted,
        q_reference,
        eve_basis: eve_basis.cloned(),
    })
}
