use super::space::CycleSpace;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `log |y_e|` for every edge; `None` if some value vanishes.
pub fn log_norms(space: &CycleSpace, x: &[f64]) -> Option<Vec<f64>> {
    let d = space.d();
    let y = space.edge_values(x);
    y.chunks_exact(d)
        .map(|v| {
            let sq = dot(v, v);
            (sq > 0.0).then(|| 0.5 * sq.ln())
        })
        .collect()
}

/// `log(max |y_e| / min |y_e|)`, `+inf` on a vanishing value.
pub fn log_ratio(space: &CycleSpace, x: &[f64]) -> f64 {
    match log_norms(space, x) {
        None => f64::INFINITY,
        Some(u) => spread(&u),
    }
}

fn spread(u: &[f64]) -> f64 {
    let hi = u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = u.iter().copied().fold(f64::INFINITY, f64::min);
    hi - lo
}

/// Rescales `x` so the smallest edge value has unit norm.
pub fn rescale(space: &CycleSpace, x: &mut [f64]) {
    if let Some(u) = log_norms(space, x) {
        let lo = u.iter().copied().fold(f64::INFINITY, f64::min);
        let k = (-lo).exp();
        x.iter_mut().for_each(|v| *v *= k);
    }
}

/// Point of least norm in the convex hull of `points` (Wolfe's algorithm).
pub fn min_norm_point(points: &[Vec<f64>]) -> Vec<f64> {
    const TINY: f64 = 1e-14;
    let first = (0..points.len())
        .min_by(|&a, &b| dot(&points[a], &points[a]).total_cmp(&dot(&points[b], &points[b])))
        .expect("at least one point");
    let scale = points.iter().map(|p| dot(p, p)).fold(0.0, f64::max);
    let mut set = vec![first];
    let mut lambda = vec![1.0];
    let mut x = points[first].clone();
    for _ in 0..10 * points.len() + 10 {
        let (j, xj) = (0..points.len())
            .map(|j| (j, dot(&x, &points[j])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        if dot(&x, &x) - xj <= 1e-12 * scale || set.contains(&j) {
            break;
        }
        set.push(j);
        lambda.push(0.0);
        let mut minor = 0;
        loop {
            minor += 1;
            let Some(alpha) = affine_minimizer(points, &set) else {
                set.pop();
                lambda.pop();
                return combine(points, &set, &lambda);
            };
            if alpha.iter().all(|&a| a > TINY) || minor > set.len() + 2 {
                lambda = alpha;
                break;
            }
            let theta = lambda
                .iter()
                .zip(&alpha)
                .filter(|(_, &a)| a <= TINY)
                .map(|(&l, &a)| l / (l - a))
                .fold(1.0, f64::min);
            for (l, a) in lambda.iter_mut().zip(&alpha) {
                *l = theta * a + (1.0 - theta) * *l;
            }
            let mut i = 0;
            while i < set.len() {
                if lambda[i] <= TINY && set.len() > 1 {
                    set.remove(i);
                    lambda.remove(i);
                } else {
                    i += 1;
                }
            }
        }
        let total: f64 = lambda.iter().sum();
        lambda.iter_mut().for_each(|l| *l /= total);
        x = combine(points, &set, &lambda);
    }
    x
}

fn combine(points: &[Vec<f64>], set: &[usize], lambda: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; points[set[0]].len()];
    for (&i, &l) in set.iter().zip(lambda) {
        for (xk, pk) in x.iter_mut().zip(&points[i]) {
            *xk += l * pk;
        }
    }
    x
}

/// Weights of the least-norm point of the affine hull of `points[set]`.
fn affine_minimizer(points: &[Vec<f64>], set: &[usize]) -> Option<Vec<f64>> {
    let k = set.len();
    let n = k + 1;
    let mut a = vec![0.0; n * (n + 1)];
    for i in 0..k {
        for j in 0..k {
            a[i * (n + 1) + j] = dot(&points[set[i]], &points[set[j]]);
        }
        a[i * (n + 1) + k] = 1.0;
        a[k * (n + 1) + i] = 1.0;
    }
    a[k * (n + 1) + n] = 1.0;
    let solution = solve(&mut a, n)?;
    Some(solution[..k].to_vec())
}

/// Gaussian elimination with partial pivoting on an `n x (n + 1)` augmented matrix.
fn solve(a: &mut [f64], n: usize) -> Option<Vec<f64>> {
    let w = n + 1;
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for col in 0..n {
        let pivot =
            (col..n).max_by(|&r, &s| a[r * w + col].abs().total_cmp(&a[s * w + col].abs()))?;
        if a[pivot * w + col].abs() <= 1e-13 * scale {
            return None;
        }
        if pivot != col {
            for k in 0..w {
                a.swap(pivot * w + k, col * w + k);
            }
        }
        for r in 0..n {
            if r != col {
                let factor = a[r * w + col] / a[col * w + col];
                if factor != 0.0 {
                    for k in col..w {
                        a[r * w + k] -= factor * a[col * w + k];
                    }
                }
            }
        }
    }
    Some((0..n).map(|r| a[r * w + n] / a[r * w + r]).collect())
}

pub struct PolishOutcome {
    pub iterations: usize,
    pub converged: bool,
}

/// Non-smooth descent on the exact log-ratio. Every accepted step strictly
/// lowers it; `trace` receives the value after each accepted step.
///
/// Stage one moves along the negated least-norm element of the
/// epsilon-subdifferential, built from the gradients of all near-maximal
/// and near-minimal edges, shrinking epsilon when no progress is made.
/// Stage two is a coordinate pattern search.
pub fn polish(
    space: &CycleSpace,
    x: &mut [f64],
    max_iterations: usize,
    tolerance: f64,
    mut trace: impl FnMut(f64),
) -> PolishOutcome {
    rescale(space, x);
    let mut current = log_ratio(space, x);
    if !current.is_finite() {
        return PolishOutcome {
            iterations: 0,
            converged: false,
        };
    }
    let n = x.len();
    let d = space.d();
    let mut iterations = 0;
    let mut eps = 1e-2;
    let mut step = 1.0f64;
    let mut trial = vec![0.0; n];
    let mut value_grad = vec![0.0; d];
    let mut grads: Vec<Vec<f64>> = Vec::new();
    while iterations < max_iterations && eps >= 1e-11 {
        iterations += 1;
        let u = log_norms(space, x).expect("finite ratio");
        let y = space.edge_values(x);
        let hi = u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = u.iter().copied().fold(f64::INFINITY, f64::min);
        grads.clear();
        grads.resize(u.len(), Vec::new());
        let mut gradient = |e: usize, grads: &mut Vec<Vec<f64>>| {
            if grads[e].is_empty() {
                let v = &y[e * d..(e + 1) * d];
                let sq = dot(v, v);
                for (g, vk) in value_grad.iter_mut().zip(v) {
                    *g = vk / sq;
                }
                let mut out = vec![0.0; n];
                space.edge_gradient(e, &value_grad, &mut out);
                grads[e] = out;
            }
        };
        let top: Vec<usize> = (0..u.len()).filter(|&e| u[e] >= hi - eps).collect();
        let bottom: Vec<usize> = (0..u.len()).filter(|&e| u[e] <= lo + eps).collect();
        for &e in top.iter().chain(&bottom) {
            gradient(e, &mut grads);
        }
        let mut points = Vec::with_capacity(top.len() * bottom.len());
        for &e in &top {
            for &f in &bottom {
                points.push(grads[e].iter().zip(&grads[f]).map(|(a, b)| a - b).collect());
            }
        }
        let g = min_norm_point(&points);
        let gnorm2 = dot(&g, &g);
        if gnorm2 <= 1e-20 {
            eps *= 0.1;
            continue;
        }
        let mut t = (2.0 * step).min(1.0 / gnorm2.sqrt());
        let mut moved = false;
        while t * gnorm2.sqrt() > 1e-13 {
            for ((tr, xi), gi) in trial.iter_mut().zip(x.iter()).zip(&g) {
                *tr = xi - t * gi;
            }
            let value = log_ratio(space, &trial);
            if value < current - 1e-4 * t * gnorm2 {
                x.copy_from_slice(&trial);
                current = value;
                trace(current);
                step = t;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved {
            eps *= 0.1;
        }
        if iterations % 50 == 0 {
            rescale(space, x);
        }
    }

    // Pattern search on single coordinates.
    rescale(space, x);
    let mut h = 1e-3;
    while h > tolerance * 1e-3 && iterations < 2 * max_iterations {
        iterations += 1;
        let mut improved = false;
        for i in 0..n {
            for sign in [1.0, -1.0] {
                trial.copy_from_slice(x);
                trial[i] += sign * h;
                let value = log_ratio(space, &trial);
                if value < current {
                    x.copy_from_slice(&trial);
                    current = value;
                    trace(current);
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    PolishOutcome {
        iterations,
        converged: eps < 1e-11 || h <= tolerance * 1e-3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_norm_point_of_segment() {
        let p = min_norm_point(&[vec![1.0, 1.0], vec![1.0, -1.0]]);
        assert!((p[0] - 1.0).abs() < 1e-12 && p[1].abs() < 1e-12);
        let q = min_norm_point(&[vec![2.0, 0.0], vec![-1.0, 1.0], vec![-1.0, -1.0]]);
        assert!(q.iter().all(|v| v.abs() < 1e-12));
        let r = min_norm_point(&[vec![3.0, 4.0]]);
        assert_eq!(r, vec![3.0, 4.0]);
    }
}
