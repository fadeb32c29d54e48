//! Local-unitary equivalence tools for the maximizer family.
//!
//! Three explicit slot-wise unitaries U₀, U₁, U₂ permute the u-basis: U_i
//! interchanges u_i and u_{i+1} and fixes the other two, so words in them
//! realize every permutation of {u₀..u₃} up to a global phase. Together
//! with global phases this is enough to bring any coordinate vector with
//! |Det| = 3⁻⁹ to one of the two reference states L, L′ along the explicit
//! four-case endgame; [`canonicalize_maximizer`] replays that reduction and
//! records the moves. [`lu_search`] finds constructive LU-equivalence
//! witnesses by maximizing fidelity over SU(2)^⊗4.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::critpoint::criticality_residual;
use crate::hyperdet::det_a;
use crate::opt::lbfgs_maximize;
use crate::orbit::{apply_local, su2_from_params, LocalOperator, Mat2};
use crate::qstate::{square_map, state_l, state_lprime, AVector, QuartState};

#[derive(Debug, Error)]
pub enum LuError {
    #[error("permutation index {0} out of range (expected 0..=2)")]
    IndexOutOfRange(usize),
    #[error("input is not in the maximizer family: {what} residual {residual:.3e}")]
    NotInFamily { what: &'static str, residual: f64 },
    #[error("input state is not normalized (norm {0})")]
    Unnormalized(f64),
    #[error("restart count must be at least 1")]
    NoRestarts,
}

/// Parameters selecting a member of the |Det|-maximizer family in A.
#[derive(Debug, Clone, Copy)]
pub struct MaximizerParams {
    /// Which coordinate vanishes.
    pub zero_index: usize,
    /// Global rotation of the configuration.
    pub phase: f64,
    /// +1 for the L-type cube-root pairing, −1 for the L′ type.
    pub orientation: i8,
}

/// One step of the canonicalization transcript.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Move {
    /// Apply U_i (swap u_i ↔ u_{i+1}).
    Swap(usize),
    /// Multiply by the global phase e^{iφ}.
    Phase(f64),
}

#[derive(Debug, Clone, Serialize)]
pub struct Transcript {
    pub moves: Vec<Move>,
    /// "L" or "Lprime".
    pub target: &'static str,
}

const DIAG_I: Mat2 = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)],
];
const DIAG_MI: Mat2 = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
];

/// The displayed unitaries: U₀ = diag(1,−i)⊗diag(1,−i)⊗diag(1,i)⊗diag(1,i),
/// U₁ = ¼ `[[1,1],[1,−1]]`^⊗4 (the ¼ distributed as 1/√2 per factor), and
/// U₂ = diag(1,i)⊗diag(1,−i)⊗diag(1,−i)⊗diag(1,i).
pub fn permutation_unitary(i: usize) -> Result<LocalOperator, LuError> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let hadamard: Mat2 = [
        [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
    ];
    match i {
        0 => Ok(LocalOperator::unitary([DIAG_MI, DIAG_MI, DIAG_I, DIAG_I])),
        1 => Ok(LocalOperator::unitary([hadamard; 4])),
        2 => Ok(LocalOperator::unitary([DIAG_I, DIAG_MI, DIAG_MI, DIAG_I])),
        _ => Err(LuError::IndexOutOfRange(i)),
    }
}

/// Swap of u-coordinates induced by U_i (exact on the span of the u_j).
fn swap_coords(z: &AVector, i: usize) -> AVector {
    let mut out = *z;
    out.z.swap(i, i + 1);
    out
}

/// A member of the maximizer family: unit-norm coordinates whose squares
/// form the equilateral triangle of radius 1/3 plus one zero. Orientation +1
/// places the cube roots in the L pattern (1, ω, ω*)·e^{iφ}/√3, −1 in the
/// L′ pattern (1, ω², ω*²)·e^{iφ}/√3, with ω = e^{iπ/3}, off `zero_index`.
pub fn maximizer(params: &MaximizerParams) -> AVector {
    // Angle profile [0, s, −s]: s = π/3 reproduces L, s = 2π/3 reproduces L′
    // (the other cube-root pairing of the same squared triangle).
    let step = if params.orientation >= 0 {
        std::f64::consts::PI / 3.0
    } else {
        2.0 * std::f64::consts::PI / 3.0
    };
    let s = 1.0 / 3.0_f64.sqrt();
    let angles = [0.0, step, -step];
    let mut z = [Complex64::new(0.0, 0.0); 4];
    let mut m = 0;
    for (j, zj) in z.iter_mut().enumerate() {
        if j == params.zero_index % 4 {
            continue;
        }
        *zj = Complex64::from_polar(s, params.phase + angles[m]);
        m += 1;
    }
    AVector { z }
}

const DET_TARGET: f64 = 1.0 / 19683.0; // 3⁻⁹

/// Bring a maximizer-family member to L or L′ by u-basis permutations and a
/// global phase, replaying the four-case endgame. Returns the transformed
/// vector together with the transcript of moves.
pub fn canonicalize_maximizer(z: &AVector) -> Result<(AVector, Transcript), LuError> {
    let det_res = (det_a(z).norm() - DET_TARGET).abs() / DET_TARGET;
    if det_res > 1e-6 {
        return Err(LuError::NotInFamily {
            what: "|Det|",
            residual: det_res,
        });
    }
    let norm_res = (square_map(z).radius_l1() - 1.0).abs();
    if norm_res > 1e-9 {
        return Err(LuError::NotInFamily {
            what: "constraint",
            residual: norm_res,
        });
    }

    let mut moves = Vec::new();
    let mut cur = *z;

    // Move the vanishing coordinate to slot 3 by adjacent swaps.
    let mut k = (0..4)
        .min_by(|&a, &b| {
            cur.z[a]
                .norm()
                .partial_cmp(&cur.z[b].norm())
                .expect("finite")
        })
        .expect("nonempty");
    while k < 3 {
        cur = swap_coords(&cur, k);
        moves.push(Move::Swap(k));
        k += 1;
    }

    // Global phase so that z₀ is real positive.
    let phi = cur.z[0].arg();
    if phi.abs() > 1e-12 {
        let rot = Complex64::from_polar(1.0, -phi);
        cur = cur.scale(rot);
        moves.push(Move::Phase(-phi));
    }

    // Order the squares as (1, ω², ω⁴)/3: z₁² should sit at angle +2π/3.
    if cur.z[1].powu(2).arg() < 0.0 {
        cur = swap_coords(&cur, 1);
        moves.push(Move::Swap(1));
    }

    // Four cases on (arg z₁, arg z₂) ∈ {π/3, −2π/3} × {2π/3, −π/3}.
    let pi = std::f64::consts::PI;
    let omega = pi / 3.0;
    let z1_is_plus = (cur.z[1].arg() - omega).abs() < pi / 2.0;
    let z2_is_plus = (cur.z[2].arg() - 2.0 * omega).abs() < pi / 2.0;
    let target = match (z1_is_plus, z2_is_plus) {
        // (ω, ω*): already L.
        (true, false) => "L",
        // (ω⁴, ω²): multiply by ω², swap u₀ ↔ u₁ → L′.
        (false, true) => {
            cur = cur.scale(Complex64::from_polar(1.0, 2.0 * omega));
            moves.push(Move::Phase(2.0 * omega));
            cur = swap_coords(&cur, 0);
            moves.push(Move::Swap(0));
            "Lprime"
        }
        // (ω, ω²): multiply by ω⁻¹, then cycle the first three.
        (true, true) => {
            cur = cur.scale(Complex64::from_polar(1.0, -omega));
            moves.push(Move::Phase(-omega));
            cur = swap_coords(&cur, 0);
            moves.push(Move::Swap(0));
            cur = swap_coords(&cur, 1);
            moves.push(Move::Swap(1));
            "L"
        }
        // (ω⁴, ω*): multiply by ω, then cycle the other way.
        (false, false) => {
            cur = cur.scale(Complex64::from_polar(1.0, omega));
            moves.push(Move::Phase(omega));
            cur = swap_coords(&cur, 1);
            moves.push(Move::Swap(1));
            cur = swap_coords(&cur, 0);
            moves.push(Move::Swap(0));
            "L"
        }
    };

    let reference = if target == "L" {
        state_l()
    } else {
        state_lprime()
    };
    let dist = cur
        .z
        .iter()
        .zip(reference.z.iter())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if dist > 1e-8 {
        return Err(LuError::NotInFamily {
            what: "endgame distance",
            residual: dist,
        });
    }
    Ok((cur, Transcript { moves, target }))
}

/// Certify a family member: Σ|z_j²| = 1 and the squared configuration is
/// first-order critical on Δ.
pub fn maximizer_certificate(z: &AVector) -> crate::critpoint::CriticalityReport {
    criticality_residual(&square_map(z))
}

fn local_from_params(x: &[f64]) -> LocalOperator {
    LocalOperator::unitary([
        su2_from_params(x[0], x[1], x[2]),
        su2_from_params(x[3], x[4], x[5]),
        su2_from_params(x[6], x[7], x[8]),
        su2_from_params(x[9], x[10], x[11]),
    ])
}

/// Maximize |⟨φ, (V₁⊗V₂⊗V₃⊗V₄)ψ⟩| over slot-wise special unitaries by
/// multistart ascent on the 12-parameter chart V_i = exp(i a_i·σ); the
/// global phase is quotiented by taking the modulus. Returns the best
/// fidelity and its witness. Fidelity 1 certifies LU-equivalence.
pub fn lu_search(
    psi: &QuartState,
    phi: &QuartState,
    restarts: usize,
    seed: u64,
) -> Result<(f64, LocalOperator), LuError> {
    if restarts == 0 {
        return Err(LuError::NoRestarts);
    }
    for s in [psi, phi] {
        let n = s.norm();
        if (n - 1.0).abs() > 1e-9 {
            return Err(LuError::Unnormalized(n));
        }
    }

    let overlap_sq = |x: &[f64]| -> f64 {
        let g = local_from_params(x);
        let moved = apply_local(&g, psi).expect("unitary kind");
        phi.inner(&moved).norm_sqr()
    };
    let objective = |x: &[f64]| -> (f64, Vec<f64>) {
        let v = overlap_sq(x);
        let h = 1e-6;
        let mut grad = vec![0.0; 12];
        let mut xp = x.to_vec();
        for (i, gi) in grad.iter_mut().enumerate() {
            let orig = xp[i];
            xp[i] = orig + h;
            let vp = overlap_sq(&xp);
            xp[i] = orig - h;
            let vm = overlap_sq(&xp);
            xp[i] = orig;
            *gi = (vp - vm) / (2.0 * h);
        }
        (v, grad)
    };

    let results: Vec<(f64, Vec<f64>)> = (0..restarts as u64)
        .into_par_iter()
        .map(|index| {
            let x0: Vec<f64> = if index == 0 {
                vec![0.0; 12]
            } else {
                let mut rng = ChaCha12Rng::seed_from_u64(seed);
                rng.set_stream(index);
                (0..12)
                    .map(|_| rng.sample::<f64, _>(StandardNormal))
                    .collect()
            };
            let out = lbfgs_maximize(&objective, &x0, 400, 1e-11, 0.0);
            (out.value, out.x)
        })
        .collect();

    let best = results
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.0.partial_cmp(&b.0).expect("finite").then(ib.cmp(ia)))
        .map(|(_, r)| r)
        .expect("at least one restart");
    Ok((best.0.max(0.0).sqrt().min(1.0), local_from_params(&best.1)))
}
