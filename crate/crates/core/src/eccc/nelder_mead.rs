//! Nelder-Mead simplex minimizer with dimension-adaptive coefficients.

#[derive(Debug, Clone)]
pub struct NelderMead {
    /// Edge length of the initial simplex.
    pub initial_step: f64,
    /// Stop when the spread of simplex values falls below this.
    pub ftol: f64,
    /// ...and the simplex diameter falls below this.
    pub xtol: f64,
    pub max_evals: usize,
    /// Fresh simplices built around the incumbent after convergence.
    pub max_rebuilds: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            initial_step: 0.3,
            ftol: 1e-14,
            xtol: 1e-9,
            max_evals: 20_000,
            max_rebuilds: 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub evals: usize,
    pub converged: bool,
}

fn finite_or_inf(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

impl NelderMead {
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, x0: &[f64]) -> Minimum {
        let mut evals = 0;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            finite_or_inf(f(x))
        };
        let mut best_x = x0.to_vec();
        let mut best_f = eval(&best_x, &mut evals);
        if x0.is_empty() {
            return Minimum {
                x: best_x,
                f: best_f,
                evals,
                converged: true,
            };
        }
        let mut converged = false;
        let mut step = self.initial_step;
        for _ in 0..=self.max_rebuilds {
            let (x, fx, ok) = self.run(&mut eval, &best_x, best_f, step, &mut evals);
            let improvement = best_f - fx;
            if fx <= best_f {
                best_x = x;
                best_f = fx;
            }
            converged = ok;
            if !ok || evals >= self.max_evals || improvement <= self.ftol.max(1e-15) {
                break;
            }
            step = (step * 0.5).max(1e-3);
        }
        Minimum {
            x: best_x,
            f: best_f,
            evals,
            converged,
        }
    }

    fn run<E: FnMut(&[f64], &mut usize) -> f64>(
        &self,
        eval: &mut E,
        x0: &[f64],
        f0: f64,
        step: f64,
        evals: &mut usize,
    ) -> (Vec<f64>, f64, bool) {
        let n = x0.len();
        let nf = n as f64;
        // Gao & Han coefficients keep the simplex healthy in higher dimensions.
        let alpha = 1.0;
        let gamma = 1.0 + 2.0 / nf;
        let rho = 0.75 - 1.0 / (2.0 * nf);
        let sigma = 1.0 - 1.0 / nf;

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((x0.to_vec(), f0));
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += step;
            let fx = eval(&x, evals);
            simplex.push((x, fx));
        }

        let mut centroid = vec![0.0; n];
        let mut trial = vec![0.0; n];
        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let spread = simplex[n].1 - simplex[0].1;
            let diameter = simplex[1..]
                .iter()
                .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
                .fold(0.0, f64::max);
            if spread.is_finite() && spread <= self.ftol && diameter <= self.xtol {
                return (simplex[0].0.clone(), simplex[0].1, true);
            }
            if diameter <= 1e-14 {
                return (simplex[0].0.clone(), simplex[0].1, true);
            }
            if *evals >= self.max_evals {
                return (simplex[0].0.clone(), simplex[0].1, false);
            }

            centroid.iter_mut().for_each(|c| *c = 0.0);
            for (x, _) in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / nf;
                }
            }
            let worst = simplex[n].0.clone();
            let f_worst = simplex[n].1;
            let f_best = simplex[0].1;
            let f_second = simplex[n - 1].1;

            let point = |coef: f64, out: &mut Vec<f64>| {
                for ((o, c), w) in out.iter_mut().zip(&centroid).zip(&worst) {
                    *o = c + coef * (c - w);
                }
            };

            point(alpha, &mut trial);
            let f_r = eval(&trial, evals);
            if f_r < f_best {
                let reflected = trial.clone();
                point(alpha * gamma, &mut trial);
                let f_e = eval(&trial, evals);
                simplex[n] = if f_e < f_r { (trial.clone(), f_e) } else { (reflected, f_r) };
                continue;
            }
            if f_r < f_second {
                simplex[n] = (trial.clone(), f_r);
                continue;
            }
            let (coef, threshold) = if f_r < f_worst { (alpha * rho, f_r) } else { (-rho, f_worst) };
            point(coef, &mut trial);
            let f_c = eval(&trial, evals);
            if f_c < threshold {
                simplex[n] = (trial.clone(), f_c);
                continue;
            }
            let best = simplex[0].0.clone();
            for (x, fx) in simplex.iter_mut().skip(1) {
                for (xi, bi) in x.iter_mut().zip(&best) {
                    *xi = bi + sigma * (*xi - bi);
                }
                *fx = eval(x, evals);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let nm = NelderMead::default();
        let m = nm.minimize(|x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2) + 4.0, &[0.0, 0.0]);
        assert!((m.x[0] - 1.0).abs() < 1e-6);
        assert!((m.x[1] + 2.0).abs() < 1e-6);
        assert!((m.f - 4.0).abs() < 1e-12);
        assert!(m.converged);
    }

    #[test]
    fn rosenbrock() {
        let nm = NelderMead {
            initial_step: 0.5,
            ..Default::default()
        };
        let m = nm.minimize(|x| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2), &[-1.2, 1.0]);
        assert!(m.f < 1e-10, "{m:?}");
    }

    #[test]
    fn higher_dimension() {
        let nm = NelderMead::default();
        let target: Vec<f64> = (0..12).map(|i| (i as f64 * 0.37).sin()).collect();
        let m = nm.minimize(
            |x| x.iter().zip(&target).enumerate().map(|(i, (a, b))| (1.0 + i as f64 * 0.1) * (a - b).powi(2)).sum(),
            &vec![0.0; 12],
        );
        assert!(m.f < 1e-10, "{}", m.f);
    }

    #[test]
    fn non_finite_values_are_avoided() {
        let nm = NelderMead::default();
        let m = nm.minimize(|x| if x[0] < 0.0 { f64::NAN } else { (x[0] - 0.5).powi(2) }, &[1.0]);
        assert!((m.x[0] - 0.5).abs() < 1e-6);
    }
}
