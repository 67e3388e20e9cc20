mod common;

use eccc::cloning::average_cloning_fidelity;
use eccc::eccc::{eccc, epsilon_opt, theorem1_bounds, theorem2_bound, unitary_conjugate, EcccOptions};
use eccc::quantum::random::{random_basis_with, random_unitary_with, rng_for};
use eccc::quantum::{fidelity, unitarity_defect, BlochVector};
use proptest::prelude::*;

fn bloch() -> impl Strategy<Value = BlochVector> {
    (0.0..=1.0f64, 0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(|(r, t, p)| {
        BlochVector::new(r * t.sin() * p.cos(), r * t.sin() * p.sin(), r * t.cos()).unwrap()
    })
}

fn quick() -> EcccOptions {
    EcccOptions::default().with_restarts(6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fidelity_in_unit_interval(a in bloch(), b in bloch()) {
        let f = fidelity(&a.to_density(), &b.to_density()).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
    }

    #[test]
    fn fidelity_unitarily_invariant(seed in any::<u64>(), d in 2usize..5) {
        let mut rng = rng_for(seed, 0);
        let e = common::random_ensemble(&mut rng, d, 2, false);
        let u = random_unitary_with(d, &mut rng);
        prop_assert!(unitarity_defect(&u) < 1e-12);
        let (a, b) = (&e.items()[0].state, &e.items()[1].state);
        let f = fidelity(a, b).unwrap();
        let g = fidelity(&a.conjugated(&u), &b.conjugated(&u)).unwrap();
        prop_assert!((f - g).abs() < 1e-9);
    }

    #[test]
    fn any_basis_sits_below_j_and_above_floor(seed in any::<u64>(), d in 2usize..4, n in 1usize..5, pure in any::<bool>()) {
        let mut rng = rng_for(seed, 0);
        let e = common::random_ensemble(&mut rng, d, n, pure);
        let r = eccc(&e, &quick().with_seed(seed)).unwrap();
        let b = theorem1_bounds(&e);
        let eps = epsilon_opt(d);
        prop_assert!(r.j <= 1.0 + 1e-12);
        prop_assert!(r.j >= b.lower - eps);
        if let Ok(t2) = theorem2_bound(&e) {
            prop_assert!(r.j >= t2 - eps);
        }
        let probe = random_basis_with(d, &mut rng);
        let f = average_cloning_fidelity(&e, &probe).unwrap();
        prop_assert!(f <= r.j + eps);
        prop_assert!((r.q - (1.0 - r.j)).abs() < 1e-15);
    }

    #[test]
    fn j_unitarily_invariant(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = rng_for(seed, 0);
        let e = common::random_ensemble(&mut rng, 2, n, false);
        let u = random_unitary_with(2, &mut rng);
        let moved = unitary_conjugate(&e, &u).unwrap();
        let a = eccc(&e, &quick()).unwrap().j;
        let b = eccc(&moved, &quick()).unwrap().j;
        prop_assert!((a - b).abs() < epsilon_opt(2), "{} vs {}", a, b);
    }

    #[test]
    fn double_circle_closed_form_in_range(theta in 0.0..=std::f64::consts::PI) {
        let j = eccc::infinite::j_double_circle_closed(theta).unwrap();
        prop_assert!((j - common::double_circle_reference(theta)).abs() < 1e-12);
        prop_assert!((2.0 / 3.0 - 1e-12..=1.0).contains(&j));
    }
}
