use super::*;
use crate::ensemble::{double_circle_discretized, make_bb84_weighted, make_six_state};
use crate::infinite::j_double_circle_closed;
use crate::quantum::random::{random_density_matrix_with, random_pure_state_with, random_unitary_with};
use crate::quantum::{DensityMatrix, PureState};

fn random_ensemble(dim: usize, n: usize, pure: bool, seed: u64) -> Ensemble {
    let mut rng = rng_for(seed, 0);
    let items = (0..n)
        .map(|_| {
            let w: f64 = rng.random_range(0.05..1.0);
            let s = if pure {
                random_pure_state_with(dim, &mut rng).density()
            } else {
                random_density_matrix_with(dim, rng.random_range(1..=dim), &mut rng)
            };
            (w, s)
        })
        .collect::<Vec<_>>();
    let total: f64 = items.iter().map(|(w, _)| w).sum();
    Ensemble::new(items.into_iter().map(|(w, s)| (w / total, s)).collect()).unwrap()
}

#[test]
fn commuting_ensemble_is_exactly_classical() {
    let e = Ensemble::new(vec![
        (0.3, DensityMatrix::diagonal(&[0.2, 0.5, 0.3]).unwrap()),
        (0.7, DensityMatrix::diagonal(&[1.0, 0.0, 0.0]).unwrap()),
    ])
    .unwrap();
    let r = eccc(&e, &EcccOptions::default()).unwrap();
    assert_eq!(r.j, 1.0);
    assert_eq!(r.q, 0.0);
}

#[test]
fn single_state_is_one() {
    let mut rng = rng_for(1, 0);
    let e = Ensemble::new(vec![(1.0, random_density_matrix_with(3, 2, &mut rng))]).unwrap();
    assert_eq!(eccc(&e, &EcccOptions::default()).unwrap().j, 1.0);
}

#[test]
fn bb84_values() {
    for (p, j) in [(0.5, 0.75), (0.9, 0.95), (0.2, 0.9), (1.0, 1.0)] {
        let r = eccc(&make_bb84_weighted(p).unwrap(), &EcccOptions::default()).unwrap();
        assert!((r.j - j).abs() < 1e-9, "p={p}: {}", r.j);
    }
}

#[test]
fn six_state_is_two_thirds() {
    let r = eccc(&make_six_state(), &EcccOptions::default()).unwrap();
    assert!((r.j - 2.0 / 3.0).abs() < 1e-9, "{}", r.j);
    assert!((r.q - 1.0 / 3.0).abs() < 1e-9);
}

#[test]
fn double_circle_matches_closed_form() {
    for theta in [0.3, 0.7, 0.95, 1.2, 1.5] {
        let e = double_circle_discretized(theta, 360).unwrap();
        let r = eccc(&e, &EcccOptions::default()).unwrap();
        let closed = j_double_circle_closed(theta).unwrap();
        assert!((r.j - closed).abs() < 1e-4, "theta={theta}: {} vs {closed}", r.j);
    }
}

#[test]
fn qubit_agrees_with_grid() {
    for seed in 0..8 {
        let e = random_ensemble(2, 4, seed % 2 == 0, seed);
        let a = eccc(&e, &EcccOptions::default()).unwrap();
        let b = eccc_qubit_grid(&e, 96).unwrap();
        assert!(a.j >= b.j - 1e-7, "seed {seed}: {} < {}", a.j, b.j);
        assert!((a.j - b.j).abs() < 1e-4, "seed {seed}");
    }
}

#[test]
fn reported_j_matches_reported_basis() {
    let e = random_ensemble(3, 5, false, 11);
    let r = eccc(&e, &EcccOptions::default()).unwrap();
    let f = average_cloning_fidelity(&e, &r.basis).unwrap();
    assert!((r.j - f).abs() < 1e-12);
    assert!(r.basis.orthonormality_defect() < 1e-10);
}

#[test]
fn within_bounds() {
    for seed in 0..6 {
        let d = 2 + (seed as usize % 3);
        let e = random_ensemble(d, 3 + seed as usize % 3, seed % 2 == 1, 100 + seed);
        let r = eccc(&e, &EcccOptions::default()).unwrap();
        let b = theorem1_bounds(&e);
        let eps = epsilon_opt(d);
        assert!(r.j > b.strict_floor && r.j <= 1.0 + 1e-12);
        assert!(r.j >= b.lower - eps && b.lower >= b.weak_lower - 1e-15);
        assert!(r.j >= theorem2_bound(&e).unwrap_or(0.0) - eps);
    }
}

#[test]
fn more_restarts_never_worse() {
    let e = random_ensemble(4, 6, true, 21);
    let few = eccc(&e, &EcccOptions::default().with_restarts(1)).unwrap();
    let many = eccc(&e, &EcccOptions::default().with_restarts(16)).unwrap();
    assert!(many.j >= few.j - 1e-12);
    assert!(many.restarts_used > few.restarts_used);
}

#[test]
fn deterministic_per_seed() {
    let e = random_ensemble(3, 4, true, 5);
    let opts = EcccOptions::default().with_restarts(4).with_seed(9);
    let a = eccc(&e, &opts).unwrap();
    let b = eccc(&e, &opts).unwrap();
    assert_eq!(a.j.to_bits(), b.j.to_bits());
}

#[test]
fn unitary_invariance_and_basis_transport() {
    let e = random_ensemble(3, 4, false, 33);
    let mut rng = rng_for(34, 0);
    let u = random_unitary_with(3, &mut rng);
    let eu = unitary_conjugate(&e, &u).unwrap();
    let r = eccc(&e, &EcccOptions::default()).unwrap();
    let moved = average_cloning_fidelity(&eu, &r.basis.transformed(&u)).unwrap();
    assert!((moved - r.j).abs() < 1e-12);
    let ru = eccc(&eu, &EcccOptions::default()).unwrap();
    assert!((ru.j - r.j).abs() <= 2.0 * epsilon_opt(3));
}

#[test]
fn unitary_conjugate_checks() {
    let e = make_six_state();
    let same = unitary_conjugate(&e, &CMatrix::identity(2, 2)).unwrap();
    for (a, b) in e.items().iter().zip(same.items()) {
        assert!(crate::quantum::max_abs_diff(a.state.matrix(), b.state.matrix()) < 1e-15);
    }
    let not_unitary = CMatrix::identity(2, 2) * c(2.0, 0.0);
    assert!(matches!(unitary_conjugate(&e, &not_unitary), Err(EcccError::NotUnitary(_))));
    assert!(unitary_conjugate(&e, &CMatrix::identity(3, 3)).is_err());
}

#[test]
fn rank_deficient_support_and_full_space_agree() {
    // two pure states in a 2-dim subspace of C^4
    let a = PureState::basis(4, 0).unwrap();
    let v = CVector4::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0), c(0.0, 0.0)]);
    let b = PureState::new(v).unwrap();
    let e = Ensemble::from_pure(vec![(0.5, a), (0.5, b)]).unwrap();
    let reduced = eccc(&e, &EcccOptions::default()).unwrap();
    let full = eccc(&e, &EcccOptions::default().with_full_space(true)).unwrap();
    assert!((reduced.j - full.j).abs() <= epsilon_opt(4), "{} vs {}", reduced.j, full.j);
    assert_eq!(reduced.basis.dim(), 4);
    let f = average_cloning_fidelity(&e, &reduced.basis).unwrap();
    assert!((f - reduced.j).abs() < 1e-12);
}

type CVector4 = crate::quantum::CVector;

#[test]
fn product_inequality_on_bb84_pairs() {
    let ea = make_bb84_weighted(0.5).unwrap();
    let eb = make_bb84_weighted(0.8).unwrap();
    let rep = check_product_inequality(&ea, &eb, &EcccOptions::default().with_restarts(8)).unwrap();
    assert!(rep.holds, "{rep:?}");
    assert!((rep.j_a * rep.j_b - 0.75 * 0.9).abs() < 1e-8);
}

#[test]
fn zero_restarts_rejected() {
    assert!(eccc(&make_six_state(), &EcccOptions::default().with_restarts(0)).is_err());
}

#[test]
fn extra_start_dimension_checked() {
    let e = make_six_state();
    let b = OrthonormalBasis::computational(3).unwrap();
    assert!(matches!(
        eccc_with_starts(&e, &EcccOptions::default(), &[b]),
        Err(EcccError::DimensionMismatch { .. })
    ));
}
