//! First-order criticality machinery for |f|² on the constraint set Δ.
//!
//! Here f(z) = ∏_{j<k} (z_j − z_k) is the basic antisymmetric product on four
//! complex variables z_j = r_j e^{iθ_j}, and Δ is the set Σ r_j = 1. At a
//! critical point of |f|² on Δ the logarithmic derivatives
//!
//!   w_j = e^{iθ_j} Σ_{k≠j} 1/(z_j − z_k)
//!
//! satisfy (1/f)∂f/∂r_j = w_j and (1/f)∂f/∂θ_j = i r_j w_j, and first-order
//! optimality forces w₀ = w₁ = w₂ = w₃ ∈ ℝ. When exactly one coordinate
//! vanishes, say r₃ = 0, then w₃ is undefined and the closing identity
//! Σ_{j≤2} (w_j − 1/r_j) e^{−iθ_j} = 0 takes over. This module computes the
//! w-quantities and packages the residuals of those conditions into a
//! certificate usable on optimizer output.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::qstate::AVector;

/// Radii below this threshold are treated as structural zeros when
/// classifying critical points.
pub const ZERO_RADIUS_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CritError {
    #[error("coordinates {0} and {1} coincide; w is undefined off the distinct-coordinate set")]
    CoincidentCoordinates(usize, usize),
    #[error("vanishing denominator in the closed-form w expressions (term {0})")]
    VanishingDenominator(usize),
    #[error("radius r[{0}] = {1} is not positive")]
    NonPositiveRadius(usize, f64),
}

/// The w-quantities of a coordinate vector; `None` where r_j = 0 leaves w_j
/// undefined.
#[derive(Debug, Clone, Copy)]
pub struct WVector {
    pub w: [Option<Complex64>; 4],
}

impl WVector {
    pub fn defined_mask(&self) -> [bool; 4] {
        [
            self.w[0].is_some(),
            self.w[1].is_some(),
            self.w[2].is_some(),
            self.w[3].is_some(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// All radii positive.
    Interior,
    /// Exactly one radius vanishes (the only boundary case compatible with
    /// f ≠ 0).
    OneZero,
    /// Two or more vanishing radii, coincident coordinates, or off the
    /// constraint set: no certificate applies.
    Invalid,
}

/// Residuals of the first-order conditions at a point of Δ.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CriticalityReport {
    pub classification: Classification,
    /// max_j |Im w_j| over defined indices.
    pub max_imag: f64,
    /// max_{j,k} |w_j − w_k| over defined indices.
    pub max_pairwise_gap: f64,
    /// |Σ_j e^{iθ_j}| (interior case; 0 when not applicable).
    pub phase_sum_residual: f64,
    /// |Σ (w_j − 1/r_j) e^{−iθ_j}| over nonzero indices (one-zero case;
    /// 0 when not applicable).
    pub boundary_residual: f64,
}

/// f(z) = ∏_{0≤j<k≤3} (z_j − z_k).
pub fn vandermonde_f(z: &AVector) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    for j in 0..4 {
        for k in (j + 1)..4 {
            p *= z.z[j] - z.z[k];
        }
    }
    p
}

/// w_j = e^{iθ_j} Σ_{k≠j} 1/(z_j − z_k) at every index with r_j > 0.
///
/// Requires pairwise-distinct coordinates.
pub fn w_vector(z: &AVector) -> Result<WVector, CritError> {
    for j in 0..4 {
        for k in (j + 1)..4 {
            if z.z[j] == z.z[k] {
                return Err(CritError::CoincidentCoordinates(j, k));
            }
        }
    }
    let polar = z.polar();
    let mut w = [None; 4];
    for j in 0..4 {
        if polar.r[j] == 0.0 {
            continue;
        }
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..4 {
            if k != j {
                s += 1.0 / (z.z[j] - z.z[k]);
            }
        }
        w[j] = Some(Complex64::from_polar(1.0, polar.theta[j]) * s);
    }
    Ok(WVector { w })
}

/// The closed forms of (w₀,…,w₃) on the phase profile
/// θ = (θ, π−θ, π+θ, −θ), written with u = e^{2iθ}:
///
///   w₀ = 1/(r₀+r₂) + 1/(r₀+r₁u⁻¹) + 1/(r₀−r₃u⁻¹)
///   w₁ = 1/(r₁+r₃) + 1/(r₁+r₀u)   + 1/(r₁−r₂u)
///   w₂ = 1/(r₀+r₂) + 1/(r₂−r₁u⁻¹) + 1/(r₂+r₃u⁻¹)
///   w₃ = 1/(r₁+r₃) + 1/(r₃−r₀u)   + 1/(r₃+r₂u)
pub fn w_theta_form(r: [f64; 4], theta: f64) -> Result<[Complex64; 4], CritError> {
    for (j, &rj) in r.iter().enumerate() {
        if rj <= 0.0 {
            return Err(CritError::NonPositiveRadius(j, rj));
        }
    }
    let u = Complex64::from_polar(1.0, 2.0 * theta);
    let ui = u.conj(); // |u| = 1
    let [r0, r1, r2, r3] = r;
    let denoms = [
        Complex64::new(r0 + r2, 0.0),
        r0 + r1 * ui,
        r0 - r3 * ui,
        Complex64::new(r1 + r3, 0.0),
        r1 + r0 * u,
        r1 - r2 * u,
        r2 - r1 * ui,
        r2 + r3 * ui,
        r3 - r0 * u,
        r3 + r2 * u,
    ];
    for (i, d) in denoms.iter().enumerate() {
        if d.norm() < 1e-300 {
            return Err(CritError::VanishingDenominator(i));
        }
    }
    let w0 = 1.0 / denoms[0] + 1.0 / denoms[1] + 1.0 / denoms[2];
    let w1 = 1.0 / denoms[3] + 1.0 / denoms[4] + 1.0 / denoms[5];
    let w2 = 1.0 / denoms[0] + 1.0 / denoms[6] + 1.0 / denoms[7];
    let w3 = 1.0 / denoms[3] + 1.0 / denoms[8] + 1.0 / denoms[9];
    Ok([w0, w1, w2, w3])
}

/// Builds the coordinate vector with radii `r` on the phase profile
/// (θ, π−θ, π+θ, −θ).
pub fn angles_profile(r: [f64; 4], theta: f64) -> AVector {
    use std::f64::consts::PI;
    let thetas = [theta, PI - theta, PI + theta, -theta];
    let mut z = [Complex64::new(0.0, 0.0); 4];
    for j in 0..4 {
        z[j] = Complex64::from_polar(r[j], thetas[j]);
    }
    AVector { z }
}

/// |e^{iθ₀} + e^{iθ₁} + e^{iθ₂} + e^{iθ₃}|.
pub fn phase_sum_residual(theta: [f64; 4]) -> f64 {
    theta
        .iter()
        .map(|&t| Complex64::from_polar(1.0, t))
        .sum::<Complex64>()
        .norm()
}

/// First-order certificate for a point of Δ (callers must supply Σ r_j = 1
/// to 10⁻⁹; anything else classifies as invalid).
pub fn criticality_residual(z: &AVector) -> CriticalityReport {
    let polar = z.polar();
    let sum_r: f64 = polar.r.iter().sum();
    let zeros: Vec<usize> = (0..4)
        .filter(|&j| polar.r[j] < ZERO_RADIUS_THRESHOLD)
        .collect();
    let invalid = CriticalityReport {
        classification: Classification::Invalid,
        max_imag: f64::INFINITY,
        max_pairwise_gap: f64::INFINITY,
        phase_sum_residual: 0.0,
        boundary_residual: 0.0,
    };
    if (sum_r - 1.0).abs() > 1e-9 || zeros.len() >= 2 {
        return invalid;
    }
    let w = match w_vector(z) {
        Ok(w) => w,
        Err(_) => return invalid,
    };

    let defined: Vec<(usize, Complex64)> = (0..4)
        .filter(|j| !zeros.contains(j))
        .filter_map(|j| w.w[j].map(|wj| (j, wj)))
        .collect();
    let max_imag = defined
        .iter()
        .map(|(_, wj)| wj.im.abs())
        .fold(0.0, f64::max);
    let mut max_gap = 0.0_f64;
    for a in 0..defined.len() {
        for b in (a + 1)..defined.len() {
            max_gap = max_gap.max((defined[a].1 - defined[b].1).norm());
        }
    }

    if zeros.is_empty() {
        CriticalityReport {
            classification: Classification::Interior,
            max_imag,
            max_pairwise_gap: max_gap,
            phase_sum_residual: phase_sum_residual(polar.theta),
            boundary_residual: 0.0,
        }
    } else {
        // One structural zero: the closing identity over the other three.
        let mut s = Complex64::new(0.0, 0.0);
        for &(j, wj) in &defined {
            let phase = Complex64::from_polar(1.0, -polar.theta[j]);
            s += (wj - Complex64::new(1.0 / polar.r[j], 0.0)) * phase;
        }
        CriticalityReport {
            classification: Classification::OneZero,
            max_imag,
            max_pairwise_gap: max_gap,
            phase_sum_residual: 0.0,
            boundary_residual: s.norm(),
        }
    }
}

/// The value-maximizing configuration on Δ with the zero at `zero_index`:
/// three points on the circle of radius 1/3 at mutual angle 2π/3, rotated by
/// `phase`, winding by `orientation` = ±1.
pub fn triangle_config(zero_index: usize, phase: f64, orientation: i8) -> AVector {
    let mut z = [Complex64::new(0.0, 0.0); 4];
    let mut m = 0;
    for (j, zj) in z.iter_mut().enumerate() {
        if j == zero_index {
            continue;
        }
        let angle = phase + f64::from(orientation) * 2.0 * std::f64::consts::PI * m as f64 / 3.0;
        *zj = Complex64::from_polar(1.0 / 3.0, angle);
        m += 1;
    }
    AVector { z }
}
