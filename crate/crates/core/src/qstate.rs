//! Four-qubit states, the subspace A, and the named maximizer states.
//!
//! A four-qubit pure state is a vector of 16 complex amplitudes indexed by
//! bit quadruples (b₁,b₂,b₃,b₄), stored row-major: index = 8b₁+4b₂+2b₃+b₄.
//! The subspace A is spanned by the four orthonormal vectors
//!
//!   u₀ = ½(|0000⟩+|0011⟩+|1100⟩+|1111⟩)
//!   u₁ = ½(|0000⟩−|0011⟩−|1100⟩+|1111⟩)
//!   u₂ = ½(|0101⟩+|0110⟩+|1001⟩+|1010⟩)
//!   u₃ = ½(|0101⟩−|0110⟩−|1001⟩+|1010⟩)
//!
//! and a point of A is written z = Σ_j z_j u_j with coordinates z ∈ ℂ⁴.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("basis index {0} out of range (expected 0..=3)")]
    IndexOutOfRange(usize),
    #[error("expected {expected} amplitude pairs, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("non-finite amplitude at index {0}")]
    NonFinite(usize),
    #[error("state file has neither an \"amplitudes\" nor a \"z\" field")]
    UnknownFormat,
}

/// A four-qubit state: 16 complex amplitudes in fixed bit order.
#[derive(Debug, Clone, PartialEq)]
pub struct QuartState {
    pub amp: [Complex64; 16],
}

/// Coordinates (z₀,z₁,z₂,z₃) of a point of A in the u-basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AVector {
    pub z: [Complex64; 4],
}

/// Polar form of an [`AVector`]: z_j = r_j e^{iθ_j} with r_j ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarA {
    pub r: [f64; 4],
    pub theta: [f64; 4],
}

impl QuartState {
    pub fn zero() -> Self {
        QuartState {
            amp: [Complex64::new(0.0, 0.0); 16],
        }
    }

    /// Computational basis vector e_b for b in 0..16.
    pub fn basis_e(b: usize) -> Self {
        let mut s = Self::zero();
        s.amp[b] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn norm(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.amp
            .iter()
            .all(|a| a.re.is_finite() && a.im.is_finite())
    }

    /// Whether the caller may treat this state as normalized: |‖ψ‖ − 1| < 10⁻¹².
    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() < 1e-12
    }

    /// ⟨self, other⟩ with the convention conjugate-linear in the first slot.
    pub fn inner(&self, other: &QuartState) -> Complex64 {
        self.amp
            .iter()
            .zip(other.amp.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for a in &mut out.amp {
            *a *= c;
        }
        out
    }

    pub fn add(&self, other: &QuartState) -> Self {
        let mut out = self.clone();
        for (a, b) in out.amp.iter_mut().zip(other.amp.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &QuartState) -> Self {
        let mut out = self.clone();
        for (a, b) in out.amp.iter_mut().zip(other.amp.iter()) {
            *a -= b;
        }
        out
    }

    pub fn normalized(&self) -> Self {
        self.scale(Complex64::new(1.0 / self.norm(), 0.0))
    }
}

impl AVector {
    pub fn new(z0: Complex64, z1: Complex64, z2: Complex64, z3: Complex64) -> Self {
        AVector {
            z: [z0, z1, z2, z3],
        }
    }

    pub fn from_reals(r: [f64; 4]) -> Self {
        AVector {
            z: [
                Complex64::new(r[0], 0.0),
                Complex64::new(r[1], 0.0),
                Complex64::new(r[2], 0.0),
                Complex64::new(r[3], 0.0),
            ],
        }
    }

    pub fn norm(&self) -> f64 {
        self.z.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn polar(&self) -> PolarA {
        let mut r = [0.0; 4];
        let mut theta = [0.0; 4];
        for j in 0..4 {
            r[j] = self.z[j].norm();
            theta[j] = self.z[j].arg();
        }
        PolarA { r, theta }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = *self;
        for a in &mut out.z {
            *a *= c;
        }
        out
    }

    /// Sum of the coordinate moduli, the L1 radius Σ r_j.
    pub fn radius_l1(&self) -> f64 {
        self.z.iter().map(|a| a.norm()).sum()
    }
}

impl PolarA {
    pub fn to_avector(&self) -> AVector {
        let mut z = [Complex64::new(0.0, 0.0); 4];
        for j in 0..4 {
            z[j] = Complex64::from_polar(self.r[j], self.theta[j]);
        }
        AVector { z }
    }
}

/// The basis vector u_j of the subspace A.
pub fn basis_u(j: usize) -> Result<QuartState, StateError> {
    // Supports and signs transcribed from the displayed basis; half = 1/2.
    const H: f64 = 0.5;
    let table: [[(usize, f64); 4]; 4] = [
        [(0b0000, H), (0b0011, H), (0b1100, H), (0b1111, H)],
        [(0b0000, H), (0b0011, -H), (0b1100, -H), (0b1111, H)],
        [(0b0101, H), (0b0110, H), (0b1001, H), (0b1010, H)],
        [(0b0101, H), (0b0110, -H), (0b1001, -H), (0b1010, H)],
    ];
    let row = table.get(j).ok_or(StateError::IndexOutOfRange(j))?;
    let mut s = QuartState::zero();
    for &(idx, c) in row {
        s.amp[idx] = Complex64::new(c, 0.0);
    }
    Ok(s)
}

/// Embed u-basis coordinates into the 16-amplitude representation: Σ_j z_j u_j.
pub fn embed_a(z: &AVector) -> QuartState {
    let mut s = QuartState::zero();
    for j in 0..4 {
        let u = basis_u(j).expect("index in range");
        for (a, b) in s.amp.iter_mut().zip(u.amp.iter()) {
            *a += z.z[j] * b;
        }
    }
    s
}

/// Orthogonal projection onto A. Returns the coordinates z_j = ⟨u_j, ψ⟩ and
/// the residual ‖ψ − Σ z_j u_j‖.
pub fn project_a(psi: &QuartState) -> (AVector, f64) {
    let mut z = [Complex64::new(0.0, 0.0); 4];
    for (j, zj) in z.iter_mut().enumerate() {
        *zj = basis_u(j).expect("index in range").inner(psi);
    }
    let av = AVector { z };
    let residual = psi.sub(&embed_a(&av)).norm();
    (av, residual)
}

/// The maximally entangled state L = (1/√3)(u₀ + ω u₁ + ω* u₂), ω = e^{iπ/3},
/// as u-basis coordinates.
pub fn state_l() -> AVector {
    let omega = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
    let s = 1.0 / 3.0_f64.sqrt();
    AVector::new(
        Complex64::new(s, 0.0),
        omega * s,
        omega.conj() * s,
        Complex64::new(0.0, 0.0),
    )
}

/// The companion state L' obtained by replacing ω with ω² in [`state_l`].
pub fn state_lprime() -> AVector {
    let omega2 = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let s = 1.0 / 3.0_f64.sqrt();
    AVector::new(
        Complex64::new(s, 0.0),
        omega2 * s,
        omega2.conj() * s,
        Complex64::new(0.0, 0.0),
    )
}

/// The coordinate squaring map Q: (z₀,…,z₃) → (z₀²,…,z₃²).
pub fn square_map(z: &AVector) -> AVector {
    AVector {
        z: [
            z.z[0] * z.z[0],
            z.z[1] * z.z[1],
            z.z[2] * z.z[2],
            z.z[3] * z.z[3],
        ],
    }
}

// ---------------------------------------------------------------------------
// JSON file formats.
//
// QuartState: {"amplitudes": [[re,im] × 16]}
// AVector:    {"z": [[re,im] × 4]}

#[derive(Serialize, Deserialize)]
struct StateFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z: Option<Vec<[f64; 2]>>,
}

/// Either form a state file may carry.
pub enum LoadedState {
    Full(QuartState),
    Coords(AVector),
}

impl LoadedState {
    /// The 16-amplitude representation, embedding coordinates when needed.
    pub fn to_state(&self) -> QuartState {
        match self {
            LoadedState::Full(s) => s.clone(),
            LoadedState::Coords(z) => embed_a(z),
        }
    }
}

fn pairs_to_complex(pairs: &[[f64; 2]], expected: usize) -> Result<Vec<Complex64>, StateError> {
    if pairs.len() != expected {
        return Err(StateError::BadLength {
            expected,
            found: pairs.len(),
        });
    }
    let v: Vec<Complex64> = pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect();
    for (i, c) in v.iter().enumerate() {
        if !c.re.is_finite() || !c.im.is_finite() {
            return Err(StateError::NonFinite(i));
        }
    }
    Ok(v)
}

/// Parse a state file in either the 16-amplitude or the u-coordinate form.
pub fn parse_state_json(json: &str) -> Result<LoadedState, Box<dyn std::error::Error>> {
    let file: StateFile = serde_json::from_str(json)?;
    if let Some(pairs) = &file.amplitudes {
        let v = pairs_to_complex(pairs, 16)?;
        let mut amp = [Complex64::new(0.0, 0.0); 16];
        amp.copy_from_slice(&v);
        return Ok(LoadedState::Full(QuartState { amp }));
    }
    if let Some(pairs) = &file.z {
        let v = pairs_to_complex(pairs, 4)?;
        let mut z = [Complex64::new(0.0, 0.0); 4];
        z.copy_from_slice(&v);
        return Ok(LoadedState::Coords(AVector { z }));
    }
    Err(Box::new(StateError::UnknownFormat))
}

pub fn state_to_json(psi: &QuartState) -> String {
    let file = StateFile {
        amplitudes: Some(psi.amp.iter().map(|c| [c.re, c.im]).collect()),
        z: None,
    };
    serde_json::to_string(&file).expect("serializable")
}

pub fn avector_to_json(z: &AVector) -> String {
    let file = StateFile {
        amplitudes: None,
        z: Some(z.z.iter().map(|c| [c.re, c.im]).collect()),
    };
    serde_json::to_string(&file).expect("serializable")
}
