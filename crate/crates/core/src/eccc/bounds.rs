use crate::ensemble::Ensemble;
use crate::error::{EcccError, Result};

/// Lower bounds on `J` for a finite ensemble; the upper bound is always one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBounds {
    /// `1/d + q_m (d−1)/d`.
    pub lower: f64,
    /// `(N + d − 1)/(N d)`, implied by `q_m ≥ 1/N`.
    pub weak_lower: f64,
    /// `1/d`, never attained.
    pub strict_floor: f64,
    pub upper: f64,
}

pub fn theorem1_bounds(e: &Ensemble) -> LowerBounds {
    let d = e.dim() as f64;
    let n = e.len() as f64;
    LowerBounds {
        lower: 1.0 / d + e.max_weight() * (d - 1.0) / d,
        weak_lower: (n + d - 1.0) / (n * d),
        strict_floor: 1.0 / d,
        upper: 1.0,
    }
}

/// `2/(d+1)` for pure-state ensembles, `2/3` for qubit ensembles; the larger
/// when both apply.
pub fn theorem2_bound(e: &Ensemble) -> Result<f64> {
    let d = e.dim();
    let pure = e.is_pure().then(|| 2.0 / (d as f64 + 1.0));
    let qubit = (d == 2).then_some(2.0 / 3.0);
    match (pure, qubit) {
        (Some(a), Some(b)) => Ok(a.max(b)),
        (Some(a), None) | (None, Some(a)) => Ok(a),
        (None, None) => Err(EcccError::NoApplicableBound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::make_bb84_weighted;
    use crate::quantum::random::{random_density_matrix_with, random_pure_state_with, rng_for};
    use crate::quantum::DensityMatrix;

    #[test]
    fn single_state_bound_is_one() {
        let e = Ensemble::new(vec![(1.0, DensityMatrix::maximally_mixed(3).unwrap())]).unwrap();
        assert!((theorem1_bounds(&e).lower - 1.0).abs() < 1e-15);
        assert!((theorem1_bounds(&e).weak_lower - 1.0).abs() < 1e-15);
    }

    #[test]
    fn equiprobable_qubit_four_states() {
        let b = theorem1_bounds(&make_bb84_weighted(0.5).unwrap());
        assert!((b.weak_lower - 5.0 / 8.0).abs() < 1e-15);
        assert!((b.lower - 5.0 / 8.0).abs() < 1e-15);
        assert!(b.lower >= b.weak_lower);
    }

    #[test]
    fn theorem2_cases() {
        let mut rng = rng_for(2, 0);
        let pure_qubit = make_bb84_weighted(0.5).unwrap();
        assert!((theorem2_bound(&pure_qubit).unwrap() - 2.0 / 3.0).abs() < 1e-15);

        let pure3 = Ensemble::from_pure(vec![
            (0.5, random_pure_state_with(3, &mut rng)),
            (0.5, random_pure_state_with(3, &mut rng)),
        ])
        .unwrap();
        assert!((theorem2_bound(&pure3).unwrap() - 0.5).abs() < 1e-15);

        let mixed_qubit = Ensemble::new(vec![
            (0.5, random_density_matrix_with(2, 2, &mut rng)),
            (0.5, random_density_matrix_with(2, 2, &mut rng)),
        ])
        .unwrap();
        assert!((theorem2_bound(&mixed_qubit).unwrap() - 2.0 / 3.0).abs() < 1e-15);

        let mixed3 = Ensemble::new(vec![(1.0, random_density_matrix_with(3, 3, &mut rng))]).unwrap();
        assert!(matches!(theorem2_bound(&mixed3), Err(EcccError::NoApplicableBound)));
    }
}
