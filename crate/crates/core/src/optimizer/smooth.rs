use std::collections::VecDeque;

use super::space::CycleSpace;

/// Soft-max minus soft-min of `log |y_e|` at sharpness `beta`.
/// Returns `+inf` when some edge value vanishes.
pub struct Smoothed<'a> {
    space: &'a CycleSpace,
    beta: f64,
    values: Vec<f64>,
    logs: Vec<f64>,
    edge_grad: Vec<f64>,
}

impl<'a> Smoothed<'a> {
    pub fn new(space: &'a CycleSpace, beta: f64) -> Self {
        let m = space.edge_count();
        Self {
            space,
            beta,
            values: vec![0.0; m * space.d()],
            logs: vec![0.0; m],
            edge_grad: vec![0.0; m * space.d()],
        }
    }

    pub fn eval(&mut self, x: &[f64], grad: &mut [f64]) -> f64 {
        let d = self.space.d();
        self.space.edge_values_into(x, &mut self.values);
        for (u, y) in self.logs.iter_mut().zip(self.values.chunks_exact(d)) {
            let sq: f64 = y.iter().map(|v| v * v).sum();
            if sq == 0.0 {
                return f64::INFINITY;
            }
            *u = 0.5 * sq.ln();
        }
        let beta = self.beta;
        let hi = self.logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = self.logs.iter().copied().fold(f64::INFINITY, f64::min);
        let (mut zp, mut zm) = (0.0, 0.0);
        for &u in &self.logs {
            zp += (beta * (u - hi)).exp();
            zm += (-beta * (u - lo)).exp();
        }
        let smax = hi + zp.ln() / beta;
        let smin = lo - zm.ln() / beta;
        for (e, y) in self.values.chunks_exact(d).enumerate() {
            let u = self.logs[e];
            let w = (beta * (u - hi)).exp() / zp - (-beta * (u - lo)).exp() / zm;
            let sq: f64 = y.iter().map(|v| v * v).sum();
            for (g, v) in self.edge_grad[e * d..(e + 1) * d].iter_mut().zip(y) {
                *g = w * v / sq;
            }
        }
        self.space.pull_back_into(&self.edge_grad, grad);
        smax - smin
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub struct Outcome {
    pub iterations: usize,
    pub converged: bool,
}

/// Limited-memory BFGS with Armijo backtracking. Stops when a step shorter
/// than `tolerance * max(1, |x|)` is taken or no descent step is found.
pub fn lbfgs(
    mut f: impl FnMut(&[f64], &mut [f64]) -> f64,
    x: &mut [f64],
    max_iterations: usize,
    tolerance: f64,
) -> Outcome {
    const MEMORY: usize = 8;
    let n = x.len();
    let mut g = vec![0.0; n];
    let mut fx = f(x, &mut g);
    if !fx.is_finite() {
        return Outcome {
            iterations: 0,
            converged: false,
        };
    }
    let mut history: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
    let mut trial = vec![0.0; n];
    let mut g_trial = vec![0.0; n];
    let mut alpha = [0.0; MEMORY];
    for it in 0..max_iterations {
        let mut dir: Vec<f64> = g.iter().map(|v| -v).collect();
        for (i, (s, y, rho)) in history.iter().enumerate().rev() {
            alpha[i] = rho * dot(s, &dir);
            for (d, yk) in dir.iter_mut().zip(y) {
                *d -= alpha[i] * yk;
            }
        }
        if let Some((s, y, _)) = history.back() {
            let gamma = dot(s, y) / dot(y, y);
            dir.iter_mut().for_each(|d| *d *= gamma);
        }
        for (i, (s, y, rho)) in history.iter().enumerate() {
            let b = rho * dot(y, &dir);
            for (d, sk) in dir.iter_mut().zip(s) {
                *d += (alpha[i] - b) * sk;
            }
        }
        let mut slope = dot(&g, &dir);
        if slope >= 0.0 || !slope.is_finite() {
            history.clear();
            dir = g.iter().map(|v| -v).collect();
            slope = -dot(&g, &g);
        }
        if slope == 0.0 {
            return Outcome {
                iterations: it,
                converged: true,
            };
        }
        let xnorm = dot(x, x).sqrt().max(1.0);
        let dnorm = dot(&dir, &dir).sqrt();
        let mut t = if history.is_empty() {
            (0.1 * xnorm / dnorm).min(1.0)
        } else {
            1.0
        };
        let mut accepted = None;
        for _ in 0..60 {
            for ((tr, xi), di) in trial.iter_mut().zip(x.iter()).zip(&dir) {
                *tr = xi + t * di;
            }
            let ft = f(&trial, &mut g_trial);
            if ft.is_finite() && ft <= fx + 1e-4 * t * slope {
                accepted = Some(ft);
                break;
            }
            t *= 0.5;
        }
        let Some(ft) = accepted else {
            return Outcome {
                iterations: it,
                converged: true,
            };
        };
        let s: Vec<f64> = trial.iter().zip(x.iter()).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_trial.iter().zip(&g).map(|(a, b)| a - b).collect();
        x.copy_from_slice(&trial);
        g.copy_from_slice(&g_trial);
        fx = ft;
        let sy = dot(&s, &y);
        let step = dot(&s, &s).sqrt();
        if sy > 1e-12 * step * dot(&y, &y).sqrt() {
            if history.len() == MEMORY {
                history.pop_front();
            }
            history.push_back((s, y, 1.0 / sy));
        }
        if step <= tolerance * xnorm {
            return Outcome {
                iterations: it + 1,
                converged: true,
            };
        }
    }
    Outcome {
        iterations: max_iterations,
        converged: false,
    }
}
