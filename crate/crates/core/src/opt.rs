//! A compact L-BFGS ascent routine used by the multistart maximizers.
//!
//! Works on plain `f64` slices; the objective returns the value together
//! with its gradient. Line search is backtracking Armijo on the ascent
//! direction. Objectives may return `f64::NEG_INFINITY` off their domain
//! (e.g. at coincident points); the line search treats that as a rejected
//! step.

/// Result of one local ascent.
#[derive(Debug, Clone)]
pub struct AscentResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub grad_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Maximize `f` from `x0` with limited-memory BFGS (history 8).
///
/// Stops when the gradient sup-norm drops below `gtol` or the value stops
/// improving by more than `ftol` in relative terms.
pub fn lbfgs_maximize<F>(f: F, x0: &[f64], max_iters: usize, gtol: f64, ftol: f64) -> AscentResult
where
    F: Fn(&[f64]) -> (f64, Vec<f64>),
{
    const HISTORY: usize = 8;
    let n = x0.len();
    let mut x = x0.to_vec();
    let (mut value, mut grad) = f(&x);
    let mut s_hist: Vec<Vec<f64>> = Vec::new();
    let mut y_hist: Vec<Vec<f64>> = Vec::new();
    let mut rho_hist: Vec<f64> = Vec::new();
    let mut converged = false;
    let mut iterations = 0;

    if !value.is_finite() {
        return AscentResult {
            x,
            value,
            grad_norm: f64::INFINITY,
            iterations,
            converged,
        };
    }

    for iter in 0..max_iters {
        iterations = iter + 1;
        let gnorm = grad.iter().fold(0.0_f64, |m, g| m.max(g.abs()));
        if gnorm < gtol {
            converged = true;
            break;
        }

        // Two-loop recursion on the ascent direction (H ≈ inverse Hessian of
        // the negated objective, applied to +grad).
        let mut q = grad.clone();
        let mut alphas = vec![0.0; s_hist.len()];
        for i in (0..s_hist.len()).rev() {
            let alpha = rho_hist[i] * dot(&s_hist[i], &q);
            alphas[i] = alpha;
            axpy(&mut q, -alpha, &y_hist[i]);
        }
        let gamma = if let (Some(s), Some(y)) = (s_hist.last(), y_hist.last()) {
            let sy = dot(s, y);
            let yy = dot(y, y);
            if yy > 0.0 && sy > 0.0 {
                sy / yy
            } else {
                1.0
            }
        } else {
            1.0
        };
        for qi in &mut q {
            *qi *= gamma;
        }
        for i in 0..s_hist.len() {
            let beta = rho_hist[i] * dot(&y_hist[i], &q);
            axpy(&mut q, alphas[i] - beta, &s_hist[i]);
        }
        let dir = q;

        // Ascent direction check; fall back to the raw gradient.
        let slope = dot(&dir, &grad);
        let (dir, slope) = if slope > 0.0 {
            (dir, slope)
        } else {
            let slope = dot(&grad, &grad);
            (grad.clone(), slope)
        };

        // Backtracking Armijo.
        let mut step = 1.0;
        let mut accepted = false;
        let mut x_new = x.clone();
        let mut value_new = value;
        let mut grad_new = grad.clone();
        for _ in 0..60 {
            for i in 0..n {
                x_new[i] = x[i] + step * dir[i];
            }
            let (v, g) = f(&x_new);
            if v.is_finite() && v >= value + 1e-4 * step * slope {
                value_new = v;
                grad_new = g;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            converged = true;
            break;
        }

        let s: Vec<f64> = x_new.iter().zip(x.iter()).map(|(a, b)| a - b).collect();
        // y is the gradient difference of the *descent* problem on -f.
        let y: Vec<f64> = grad
            .iter()
            .zip(grad_new.iter())
            .map(|(a, b)| a - b)
            .collect();
        let sy = dot(&s, &y);
        if sy > 1e-16 {
            s_hist.push(s);
            y_hist.push(y);
            rho_hist.push(1.0 / sy);
            if s_hist.len() > HISTORY {
                s_hist.remove(0);
                y_hist.remove(0);
                rho_hist.remove(0);
            }
        }

        let rel_impr = (value_new - value) / (1.0 + value.abs());
        x = x_new;
        grad = grad_new;
        value = value_new;
        if rel_impr.abs() < ftol {
            converged = true;
            break;
        }
    }

    let grad_norm = grad.iter().fold(0.0_f64, |m, g| m.max(g.abs()));
    AscentResult {
        x,
        value,
        grad_norm,
        iterations,
        converged,
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

fn axpy(target: &mut [f64], alpha: f64, v: &[f64]) {
    for (t, x) in target.iter_mut().zip(v.iter()) {
        *t += alpha * x;
    }
}
