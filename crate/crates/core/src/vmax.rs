//! Maximization of |V_n| under the L1-radius constraint, and of |Det| on
//! the unit sphere of A.
//!
//! V_n(z₀,…,z_{n−1}) = ∏_{j<k} (z_k − z_j) is the Vandermonde product; the
//! problem is to maximize its modulus subject to Σ_j |z_j| = 1. The regular
//! (n−1)-gon of radius 1/(n−1) together with the origin attains
//! λ_n = (n−1)^{−(n−1)²/2}, which is the maximum for n = 2, 3, 4 and a
//! strict underestimate for n = 7.
//!
//! The search runs multistart quasi-Newton ascent on the unconstrained
//! parametrization z_j = (s_j²/Σ_k s_k²) e^{iθ_j}, which keeps Σ r_j = 1
//! identically, stays smooth when a radius crosses zero, and gauge-fixes
//! θ₀ = 0. One restart is always the known candidate configuration; the
//! rest alternate between perturbations of it (scale 0.3) and fully random
//! starts, each drawing from its own (seed, restart-index) stream so
//! results are independent of scheduling.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::critpoint::{criticality_residual, CriticalityReport, ZERO_RADIUS_THRESHOLD};
use crate::hyperdet::det_a;
use crate::opt::lbfgs_maximize;
use crate::qstate::{square_map, AVector};

#[derive(Debug, Error)]
pub enum VmaxError {
    #[error("need at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },
    #[error("restart count must be at least 1")]
    NoRestarts,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
}

/// An n-point configuration for the Vandermonde problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VnConfig {
    pub points: Vec<[f64; 2]>,
}

impl VnConfig {
    pub fn from_complex(points: &[Complex64]) -> Self {
        VnConfig {
            points: points.iter().map(|c| [c.re, c.im]).collect(),
        }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.points
            .iter()
            .map(|p| Complex64::new(p[0], p[1]))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// |Σ|z_j| − 1|, the violation of the L1 constraint.
    pub fn constraint_residual(&self) -> f64 {
        let s: f64 = self.to_complex().iter().map(|z| z.norm()).sum();
        (s - 1.0).abs()
    }
}

/// Multistart report. `best_value` is |V_n| at `best_config`, which is
/// canonicalized (global phase and point order fixed).
#[derive(Debug, Clone, Serialize)]
pub struct OptimizerReport {
    pub n: usize,
    pub best_value: f64,
    pub lambda_n: f64,
    pub ratio: f64,
    pub best_config: VnConfig,
    pub criticality_residual: f64,
    pub restarts: usize,
    pub converged_restarts: usize,
    pub seed: u64,
}

/// V_n(z₀,…,z_{n−1}) = ∏_{0≤j<k≤n−1} (z_k − z_j).
pub fn vandermonde_n(points: &[Complex64]) -> Result<Complex64, VmaxError> {
    if points.len() < 2 {
        return Err(VmaxError::TooFewPoints {
            min: 2,
            got: points.len(),
        });
    }
    let mut p = Complex64::new(1.0, 0.0);
    for j in 0..points.len() {
        for k in (j + 1)..points.len() {
            p *= points[k] - points[j];
        }
    }
    Ok(p)
}

/// λ_n = (n−1)^{−(n−1)²/2}, computed in the log domain.
pub fn lambda_n(n: usize) -> Result<f64, VmaxError> {
    if n < 2 {
        return Err(VmaxError::TooFewPoints { min: 2, got: n });
    }
    let m = (n - 1) as f64;
    Ok((-m * m / 2.0 * m.ln()).exp())
}

/// The regular (n−1)-gon of radius 1/(n−1) plus the origin:
/// z_j = e^{2πij/(n−1)}/(n−1) for j < n−1 and z_{n−1} = 0.
pub fn candidate_config(n: usize) -> Result<VnConfig, VmaxError> {
    if n < 3 {
        return Err(VmaxError::TooFewPoints { min: 3, got: n });
    }
    Ok(VnConfig::from_complex(&candidate_points(n)))
}

fn candidate_points(n: usize) -> Vec<Complex64> {
    let mut pts = Vec::with_capacity(n);
    if n == 2 {
        // Degenerate 1-gon: a single unit point plus the origin.
        pts.push(Complex64::new(1.0, 0.0));
        pts.push(Complex64::new(0.0, 0.0));
        return pts;
    }
    let m = (n - 1) as f64;
    for j in 0..(n - 1) {
        pts.push(Complex64::from_polar(
            1.0 / m,
            2.0 * std::f64::consts::PI * j as f64 / m,
        ));
    }
    pts.push(Complex64::new(0.0, 0.0));
    pts
}

/// Canonical representative of the gauge orbit of a configuration: a global
/// phase makes one largest-modulus point real positive, points are then
/// sorted by radius descending (angle in [0,2π) ascending within equal
/// radii, so the anchor leads with θ₀ = 0), and among the possible anchors
/// the lexicographically smallest point sequence is kept. |V_n| is
/// preserved.
pub fn canonicalize(config: &VnConfig) -> VnConfig {
    let pts = config.to_complex();
    if pts.is_empty() {
        return config.clone();
    }
    let rmax = pts.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if rmax == 0.0 {
        return config.clone();
    }
    let anchors: Vec<usize> = (0..pts.len())
        .filter(|&j| pts[j].norm() >= rmax - 1e-12 * (1.0 + rmax))
        .collect();
    let mut best: Option<(Vec<(i64, i64)>, Vec<Complex64>)> = None;
    for &a in &anchors {
        let phase = Complex64::from_polar(1.0, -pts[a].arg());
        let mut rotated: Vec<Complex64> = pts.iter().map(|z| z * phase).collect();
        rotated[a] = Complex64::new(pts[a].norm(), 0.0);
        let mut keyed: Vec<((i64, i64), Complex64)> =
            rotated.into_iter().map(|z| (sort_key(z), z)).collect();
        // Radius descending, then angle ascending.
        keyed.sort_by(|x, y| y.0 .0.cmp(&x.0 .0).then(x.0 .1.cmp(&y.0 .1)));
        let keys: Vec<(i64, i64)> = keyed.iter().map(|k| k.0).collect();
        let seq: Vec<Complex64> = keyed.into_iter().map(|k| k.1).collect();
        let better = match &best {
            None => true,
            Some((bk, _)) => keys < *bk,
        };
        if better {
            best = Some((keys, seq));
        }
    }
    VnConfig::from_complex(&best.expect("nonempty").1)
}

/// Quantized (radius, angle-in-[0,2π)) ordering key; the quantization only
/// affects tie resolution among gauge copies.
fn sort_key(z: Complex64) -> (i64, i64) {
    let r = z.norm();
    let mut th = z.arg();
    if th < 0.0 {
        th += 2.0 * std::f64::consts::PI;
    }
    if r < 1e-15 {
        th = 0.0;
    }
    ((r * 1e10).round() as i64, (th * 1e10).round() as i64)
}

/// First-order residual of the generalized w-equations at a configuration of
/// Δ: over points with r_j above threshold, max of |Im w_j| and the pairwise
/// gaps |w_j − w_k| where w_j = e^{iθ_j} Σ_{k≠j} 1/(z_j − z_k).
pub fn vn_criticality_residual(points: &[Complex64]) -> f64 {
    let n = points.len();
    let live: Vec<usize> = (0..n)
        .filter(|&j| points[j].norm() > ZERO_RADIUS_THRESHOLD)
        .collect();
    if live.len() + 1 < n {
        return f64::INFINITY;
    }
    let mut w = Vec::with_capacity(live.len());
    for &j in &live {
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..n {
            if k != j {
                let d = points[j] - points[k];
                if d.norm() == 0.0 {
                    return f64::INFINITY;
                }
                s += 1.0 / d;
            }
        }
        w.push(Complex64::from_polar(1.0, points[j].arg()) * s);
    }
    let mut res = w.iter().map(|wj| wj.im.abs()).fold(0.0_f64, f64::max);
    for a in 0..w.len() {
        for b in (a + 1)..w.len() {
            res = res.max((w[a] - w[b]).norm());
        }
    }
    res
}

// Parameter layout: [s_0..s_{n-1}, θ_1..θ_{n-1}] with θ₀ = 0.
fn params_to_points(x: &[f64], n: usize) -> Vec<Complex64> {
    let s = &x[..n];
    let total: f64 = s.iter().map(|v| v * v).sum();
    let mut pts = Vec::with_capacity(n);
    for j in 0..n {
        let r = s[j] * s[j] / total;
        let th = if j == 0 { 0.0 } else { x[n + j - 1] };
        pts.push(Complex64::from_polar(r, th));
    }
    pts
}

fn points_to_params(points: &[Complex64]) -> Vec<f64> {
    let n = points.len();
    let phase = points[0].arg();
    let mut x = vec![0.0; 2 * n - 1];
    for j in 0..n {
        x[j] = points[j].norm().sqrt();
        if j > 0 {
            x[n + j - 1] = points[j].arg() - phase;
        }
    }
    x
}

fn log_vn_and_grad(x: &[f64], n: usize) -> (f64, Vec<f64>) {
    let s = &x[..n];
    let total: f64 = s.iter().map(|v| v * v).sum();
    if total == 0.0 {
        return (f64::NEG_INFINITY, vec![0.0; x.len()]);
    }
    let pts = params_to_points(x, n);
    let mut value = 0.0;
    for j in 0..n {
        for k in (j + 1)..n {
            let d = (pts[k] - pts[j]).norm();
            if d == 0.0 {
                return (f64::NEG_INFINITY, vec![0.0; x.len()]);
            }
            value += d.ln();
        }
    }
    // w_j = e^{iθ_j} Σ 1/(z_j − z_k); dF/dr_j = Re w_j, dF/dθ_j = −r_j Im w_j.
    let mut dfdr = vec![0.0; n];
    let mut dfdth = vec![0.0; n];
    let mut r_dot = 0.0;
    for j in 0..n {
        let mut g = Complex64::new(0.0, 0.0);
        for k in 0..n {
            if k != j {
                g += 1.0 / (pts[j] - pts[k]);
            }
        }
        let w = Complex64::from_polar(1.0, pts[j].arg()) * g;
        dfdr[j] = w.re;
        dfdth[j] = -pts[j].norm() * w.im;
        r_dot += pts[j].norm() * w.re;
    }
    let mut grad = vec![0.0; x.len()];
    for j in 0..n {
        grad[j] = (2.0 * s[j] / total) * (dfdr[j] - r_dot);
        if j > 0 {
            grad[n + j - 1] = dfdth[j];
        }
    }
    (value, grad)
}

fn restart_start(n: usize, seed: u64, index: u64) -> Vec<f64> {
    let base = points_to_params(&candidate_points(n));
    if index == 0 {
        return base;
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(index);
    if index % 2 == 1 {
        // Perturbation of the candidate, scale 0.3.
        base.iter()
            .map(|v| v + 0.3 * rng.sample::<f64, _>(StandardNormal))
            .collect()
    } else {
        // Fully random start.
        let mut x = vec![0.0; 2 * n - 1];
        for xi in x.iter_mut().take(n) {
            *xi = rng.sample::<f64, _>(StandardNormal);
        }
        for xi in x.iter_mut().skip(n) {
            *xi = (rng.random::<f64>() * 2.0 - 1.0) * std::f64::consts::PI;
        }
        x
    }
}

/// Snap radii below threshold to exact zeros and renormalize onto Δ.
fn snap_zeros(points: &mut [Complex64]) {
    for p in points.iter_mut() {
        if p.norm() < ZERO_RADIUS_THRESHOLD {
            *p = Complex64::new(0.0, 0.0);
        }
    }
    let total: f64 = points.iter().map(|p| p.norm()).sum();
    if total > 0.0 {
        for p in points.iter_mut() {
            *p /= total;
        }
    }
}

/// Multistart maximization of |V_n| on Δ.
pub fn maximize_vn(
    n: usize,
    restarts: usize,
    seed: u64,
    tol: f64,
) -> Result<OptimizerReport, VmaxError> {
    if n < 2 {
        return Err(VmaxError::TooFewPoints { min: 2, got: n });
    }
    if restarts == 0 {
        return Err(VmaxError::NoRestarts);
    }
    if tol <= 0.0 {
        return Err(VmaxError::BadTolerance(tol));
    }

    let results: Vec<(f64, VnConfig, bool)> = (0..restarts as u64)
        .into_par_iter()
        .map(|index| {
            let x0 = restart_start(n, seed, index);
            let out = lbfgs_maximize(|x| log_vn_and_grad(x, n), &x0, 800, tol, 0.0);
            let mut pts = params_to_points(&out.x, n);
            snap_zeros(&mut pts);
            let value = vandermonde_n(&pts).map(|v| v.norm()).unwrap_or(0.0);
            (
                value,
                canonicalize(&VnConfig::from_complex(&pts)),
                out.converged,
            )
        })
        .collect();

    let converged_restarts = results.iter().filter(|r| r.2).count();
    let mut best = &results[0];
    for r in &results[1..] {
        let better = r.0 > best.0 || (r.0 == best.0 && config_keys(&r.1) < config_keys(&best.1));
        if better {
            best = r;
        }
    }

    let lambda = lambda_n(n)?;
    let pts = best.1.to_complex();
    Ok(OptimizerReport {
        n,
        best_value: best.0,
        lambda_n: lambda,
        ratio: best.0 / lambda,
        best_config: best.1.clone(),
        criticality_residual: vn_criticality_residual(&pts),
        restarts,
        converged_restarts,
        seed,
    })
}

fn config_keys(c: &VnConfig) -> Vec<(i64, i64)> {
    c.to_complex().into_iter().map(sort_key).collect()
}

/// Re-evaluate |V_n| at a configuration in 256-bit fixed-point arithmetic,
/// treating the f64 coordinates as exact. Certifies optimizer values against
/// cancellation in the floating-point product.
pub fn certify_value_hp(points: &[Complex64]) -> f64 {
    use crate::casework::bigfloat::{Hp, HpComplex};
    let hp: Vec<HpComplex> = points
        .iter()
        .map(|z| HpComplex::new(Hp::from_f64(z.re), Hp::from_f64(z.im)))
        .collect();
    let mut prod = HpComplex::new(Hp::from_i64(1), Hp::from_i64(0));
    for j in 0..hp.len() {
        for k in (j + 1)..hp.len() {
            prod = prod.mul(&hp[k].sub(&hp[j]));
        }
    }
    prod.norm_sqr().to_f64().max(0.0).sqrt()
}

/// Report of the |Det| maximization on the unit sphere of A.
#[derive(Debug, Clone, Serialize)]
pub struct DetMaxReport {
    pub best_abs_det: f64,
    /// Best unit-norm coordinate vector found (not canonicalized).
    pub best_config: [[f64; 2]; 4],
    /// Certificate for the squared configuration on Δ.
    pub criticality: CriticalityReport,
    pub restarts: usize,
    pub converged_restarts: usize,
    pub seed: u64,
}

impl DetMaxReport {
    pub fn best_avector(&self) -> AVector {
        AVector {
            z: [
                Complex64::new(self.best_config[0][0], self.best_config[0][1]),
                Complex64::new(self.best_config[1][0], self.best_config[1][1]),
                Complex64::new(self.best_config[2][0], self.best_config[2][1]),
                Complex64::new(self.best_config[3][0], self.best_config[3][1]),
            ],
        }
    }
}

fn log_det_a_and_grad(x: &[f64]) -> (f64, Vec<f64>) {
    let z = [
        Complex64::new(x[0], x[4]),
        Complex64::new(x[1], x[5]),
        Complex64::new(x[2], x[6]),
        Complex64::new(x[3], x[7]),
    ];
    let norm_sq: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return (f64::NEG_INFINITY, vec![0.0; 8]);
    }
    let sq: Vec<Complex64> = z.iter().map(|c| c * c).collect();
    let mut value = -12.0 * norm_sq.ln(); // −24 log‖z‖
    for j in 0..4 {
        for k in (j + 1)..4 {
            let d = (sq[j] - sq[k]).norm();
            if d == 0.0 {
                return (f64::NEG_INFINITY, vec![0.0; 8]);
            }
            value += 2.0 * d.ln();
        }
    }
    // d/dz_j log Det = 4 z_j Σ_{k≠j} 1/(z_j² − z_k²).
    let mut grad = vec![0.0; 8];
    for j in 0..4 {
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..4 {
            if k != j {
                s += 1.0 / (sq[j] - sq[k]);
            }
        }
        let d = 4.0 * z[j] * s;
        grad[j] = d.re - 24.0 * x[j] / norm_sq;
        grad[j + 4] = -d.im - 24.0 * x[j + 4] / norm_sq;
    }
    (value, grad)
}

/// Multistart maximization of |Det| over unit-norm points of A.
pub fn maximize_det_a(restarts: usize, seed: u64, tol: f64) -> Result<DetMaxReport, VmaxError> {
    if restarts == 0 {
        return Err(VmaxError::NoRestarts);
    }
    if tol <= 0.0 {
        return Err(VmaxError::BadTolerance(tol));
    }
    let results: Vec<(f64, AVector, bool)> = (0..restarts as u64)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(index);
            let x0: Vec<f64> = (0..8)
                .map(|_| rng.sample::<f64, _>(StandardNormal))
                .collect();
            let out = lbfgs_maximize(log_det_a_and_grad, &x0, 800, tol, 0.0);
            let mut z = AVector {
                z: [
                    Complex64::new(out.x[0], out.x[4]),
                    Complex64::new(out.x[1], out.x[5]),
                    Complex64::new(out.x[2], out.x[6]),
                    Complex64::new(out.x[3], out.x[7]),
                ],
            };
            let norm = z.norm();
            if norm > 0.0 {
                z = z.scale(Complex64::new(1.0 / norm, 0.0));
            }
            (det_a(&z).norm(), z, out.converged)
        })
        .collect();

    let converged_restarts = results.iter().filter(|r| r.2).count();
    let mut best = &results[0];
    for r in &results[1..] {
        if r.0 > best.0 {
            best = r;
        }
    }
    let z = best.1;
    Ok(DetMaxReport {
        best_abs_det: best.0,
        best_config: [
            [z.z[0].re, z.z[0].im],
            [z.z[1].re, z.z[1].im],
            [z.z[2].re, z.z[2].im],
            [z.z[3].re, z.z[3].im],
        ],
        criticality: criticality_residual(&square_map(&z)),
        restarts,
        converged_restarts,
        seed,
    })
}
