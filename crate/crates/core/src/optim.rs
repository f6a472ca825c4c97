//! Derivative-free Nelder-Mead simplex minimization.

/// Simplex coefficients and stopping rules.
#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    pub reflect: f64,
    pub expand: f64,
    pub contract: f64,
    pub shrink: f64,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
    pub max_iters: usize,
    /// Stop once `f_worst - f_best` falls below this.
    pub f_tol: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            reflect: 1.0,
            expand: 2.0,
            contract: 0.5,
            shrink: 0.5,
            initial_step: 0.25,
            max_iters: 5_000,
            f_tol: 1e-15,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

impl NelderMead {
    pub fn minimize<F>(&self, mut f: F, x0: &[f64]) -> Minimum
    where
        F: FnMut(&[f64]) -> f64,
    {
        let n = x0.len();
        let mut evals = 0usize;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        let v0 = eval(x0, &mut evals);
        simplex.push((x0.to_vec(), v0));
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += self.initial_step;
            let v = eval(&x, &mut evals);
            simplex.push((x, v));
        }
        if n == 0 || self.max_iters == 0 {
            return Minimum {
                x: x0.to_vec(),
                value: v0,
                iterations: 0,
                evaluations: evals,
            };
        }

        let mut iterations = 0;
        while iterations < self.max_iters {
            // stable sort keeps ties in insertion order, so runs are reproducible
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].1;
            let worst = simplex[n].1;
            if (worst - best).abs() <= self.f_tol {
                break;
            }
            iterations += 1;

            let mut centroid = vec![0.0; n];
            for (x, _) in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi;
                }
            }
            for c in centroid.iter_mut() {
                *c /= n as f64;
            }
            let toward = |coef: f64, from: &[f64]| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(from)
                    .map(|(c, w)| c + coef * (c - w))
                    .collect()
            };

            let worst_x = simplex[n].0.clone();
            let xr = toward(self.reflect, &worst_x);
            let fr = eval(&xr, &mut evals);
            let second_worst = simplex[n - 1].1;

            if fr < best {
                let xe = toward(self.reflect * self.expand, &worst_x);
                let fe = eval(&xe, &mut evals);
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else if fr < second_worst {
                simplex[n] = (xr, fr);
            } else {
                let (xc, fc) = if fr < worst {
                    let xc = toward(self.reflect * self.contract, &worst_x);
                    let fc = eval(&xc, &mut evals);
                    (xc, fc)
                } else {
                    let xc = toward(-self.contract, &worst_x);
                    let fc = eval(&xc, &mut evals);
                    (xc, fc)
                };
                if fc < worst.min(fr) {
                    simplex[n] = (xc, fc);
                } else {
                    let x_best = simplex[0].0.clone();
                    for (x, v) in simplex.iter_mut().skip(1) {
                        for (xi, bi) in x.iter_mut().zip(&x_best) {
                            *xi = bi + self.shrink * (*xi - bi);
                        }
                        *v = eval(x, &mut evals);
                    }
                }
            }
        }

        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, value) = simplex.swap_remove(0);
        Minimum {
            x,
            value,
            iterations,
            evaluations: evals,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let nm = NelderMead {
            max_iters: 20_000,
            f_tol: 1e-20,
            ..NelderMead::default()
        };
        let m = nm.minimize(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            &[-1.2, 1.0],
        );
        assert!((m.x[0] - 1.0).abs() < 1e-5, "{:?}", m);
        assert!((m.x[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn zero_iterations_returns_start() {
        let nm = NelderMead {
            max_iters: 0,
            ..NelderMead::default()
        };
        let m = nm.minimize(|x| x[0] * x[0] + 1.0, &[3.0]);
        assert_eq!(m.x, vec![3.0]);
        assert_eq!(m.value, 10.0);
    }

    #[test]
    fn deterministic() {
        let nm = NelderMead::default();
        let f = |x: &[f64]| x.iter().map(|v| (v - 0.3).powi(2)).sum::<f64>() + x[0].sin();
        let a = nm.minimize(f, &[1.0, 2.0, 3.0]);
        let b = nm.minimize(f, &[1.0, 2.0, 3.0]);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.x, b.x);
    }
}
