use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::{Ensemble, ParametricEnsemble, ParametricFamily};
use crate::error::{EcccError, Result};
use crate::quantum::{c, CVector, PureState};

fn ket(a: (f64, f64), b: (f64, f64)) -> PureState {
    PureState::normalized(CVector::from_vec(vec![c(a.0, a.1), c(b.0, b.1)])).expect("nonzero ket")
}

/// `{|0⟩, |1⟩, |+⟩, |−⟩}` with weights `{p/2, p/2, (1−p)/2, (1−p)/2}`.
///
/// `p = 0.5` is the BB84 ensemble; at `p ∈ {0, 1}` the zero-weight pair is dropped.
pub fn make_bb84_weighted(p: f64) -> Result<Ensemble> {
    if !(0.0..=1.0).contains(&p) {
        return Err(EcccError::OutOfRange { what: "p", value: p });
    }
    let s = FRAC_1_SQRT_2;
    Ensemble::from_pure(vec![
        (p / 2.0, ket((1.0, 0.0), (0.0, 0.0))),
        (p / 2.0, ket((0.0, 0.0), (1.0, 0.0))),
        ((1.0 - p) / 2.0, ket((s, 0.0), (s, 0.0))),
        ((1.0 - p) / 2.0, ket((s, 0.0), (-s, 0.0))),
    ])
}

/// The six `±x, ±y, ±z` eigenstates, equiprobable.
pub fn make_six_state() -> Ensemble {
    let s = FRAC_1_SQRT_2;
    let w = 1.0 / 6.0;
    Ensemble::from_pure(vec![
        (w, ket((1.0, 0.0), (0.0, 0.0))),
        (w, ket((0.0, 0.0), (1.0, 0.0))),
        (w, ket((s, 0.0), (s, 0.0))),
        (w, ket((s, 0.0), (-s, 0.0))),
        (w, ket((s, 0.0), (0.0, s))),
        (w, ket((s, 0.0), (0.0, -s))),
    ])
    .expect("six-state weights sum to one")
}

/// Pure states on the two latitude circles with Bloch `z = ±cos θ`.
pub fn make_double_circle(theta: f64) -> Result<ParametricEnsemble> {
    if !(0.0..=PI).contains(&theta) {
        return Err(EcccError::OutOfRange { what: "theta", value: theta });
    }
    Ok(ParametricEnsemble::new(ParametricFamily::DoubleCircle { theta }))
}

/// Pure qubit states uniform on the Bloch sphere.
pub fn make_bloch_uniform() -> ParametricEnsemble {
    ParametricEnsemble::new(ParametricFamily::BlochUniform)
}

/// Double-circle ensemble on `points` equally spaced azimuths per circle.
pub fn double_circle_discretized(theta: f64, points: usize) -> Result<Ensemble> {
    if !(0.0..=PI).contains(&theta) {
        return Err(EcccError::OutOfRange { what: "theta", value: theta });
    }
    if points == 0 {
        return Err(EcccError::OutOfRange { what: "points", value: 0.0 });
    }
    let w = 1.0 / (2 * points) as f64;
    let mut items = Vec::with_capacity(2 * points);
    for polar in [theta, PI - theta] {
        for k in 0..points {
            let phi = 2.0 * PI * k as f64 / points as f64;
            items.push((w, latitude_state(polar, phi)));
        }
    }
    Ensemble::from_pure(items)
}

/// `cos(θ/2)|0⟩ + sin(θ/2)e^{iφ}|1⟩`.
pub(crate) fn latitude_state(polar: f64, phi: f64) -> PureState {
    let (s, co) = (0.5 * polar).sin_cos();
    let ph = crate::quantum::C64::from_polar(s, phi);
    PureState::normalized(CVector::from_vec(vec![c(co, 0.0), ph])).expect("unit ket")
}
