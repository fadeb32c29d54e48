//! The SL(2,ℂ)^⊗4 and SU(2)^⊗4 actions on four-qubit states.
//!
//! A local operator acts slot-wise on the 4-index tensor of amplitudes. The
//! Lie algebra 𝔰𝔩(2)^×4 has twelve generators (three traceless matrices per
//! slot); their images X_k·ψ span the tangent space of the SL-orbit, whose
//! dimension is 12 exactly on the generic set where the hyperdeterminant is
//! nonzero. Every point z of the subspace A is orthogonal to its orbit's
//! tangent space, which by the Kempf-Ness theorem makes ‖z‖ minimal on the
//! orbit; [`kempf_ness_residual`] and [`norm_min_probe`] check the
//! orthogonality identically and the minimality by sampling.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::qstate::{embed_a, AVector, QuartState};

pub type Mat2 = [[Complex64; 2]; 2];

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("a Lie-algebra generator was passed where a group element is required")]
    GeneratorWhereGroupRequired,
    #[error("a group element was passed where a Lie-algebra generator is required")]
    GroupWhereGeneratorRequired,
    #[error("sample count must be at least 1")]
    NoSamples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Unitary,
    SpecialLinear,
    LieGenerator,
}

/// A slot-wise operator: four 2×2 matrices. For `LieGenerator` exactly one
/// slot carries a traceless matrix and the others are zero markers; the
/// action is then X⊗I⊗I⊗I (and its slot rotations), not a tensor product of
/// the stored matrices.
#[derive(Debug, Clone, Copy)]
pub struct LocalOperator {
    pub m: [Mat2; 4],
    pub kind: OperatorKind,
}

pub const ZERO2: Mat2 = [
    [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
];

pub const ID2: Mat2 = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
];

impl LocalOperator {
    pub fn unitary(m: [Mat2; 4]) -> Self {
        LocalOperator {
            m,
            kind: OperatorKind::Unitary,
        }
    }

    pub fn special_linear(m: [Mat2; 4]) -> Self {
        LocalOperator {
            m,
            kind: OperatorKind::SpecialLinear,
        }
    }

    pub fn generator(slot: usize, x: Mat2) -> Self {
        let mut m = [ZERO2; 4];
        m[slot] = x;
        LocalOperator {
            m,
            kind: OperatorKind::LieGenerator,
        }
    }

    pub fn identity() -> Self {
        LocalOperator::unitary([ID2; 4])
    }

    /// Largest violation of this operator's kind invariant (unitarity,
    /// unit determinant, or single-slot tracelessness).
    pub fn kind_residual(&self) -> f64 {
        match self.kind {
            OperatorKind::Unitary => self
                .m
                .iter()
                .map(|g| {
                    let gtg = mat2_mul(&mat2_dagger(g), g);
                    mat2_sub_norm(&gtg, &ID2)
                })
                .fold(0.0, f64::max),
            OperatorKind::SpecialLinear => self
                .m
                .iter()
                .map(|g| (mat2_det(g) - Complex64::new(1.0, 0.0)).norm())
                .fold(0.0, f64::max),
            OperatorKind::LieGenerator => {
                let mut active = 0;
                let mut res = 0.0_f64;
                for g in &self.m {
                    let norm = mat2_norm(g);
                    if norm > 0.0 {
                        active += 1;
                        res = res.max((g[0][0] + g[1][1]).norm());
                    }
                }
                if active == 1 {
                    res
                } else {
                    f64::INFINITY
                }
            }
        }
    }
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = ZERO2;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat2_det(a: &Mat2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn mat2_dagger(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

fn mat2_norm(a: &Mat2) -> f64 {
    a.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn mat2_sub_norm(a: &Mat2, b: &Mat2) -> f64 {
    let mut s = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            s += (a[i][j] - b[i][j]).norm_sqr();
        }
    }
    s.sqrt()
}

/// exp(X) for traceless X, via X² = −det(X)·I:
/// exp(X) = cosh(μ) I + sinh(μ)/μ · X with μ² = −det X.
pub fn exp_traceless(x: &Mat2) -> Mat2 {
    let mu2 = -mat2_det(x);
    let mu = mu2.sqrt();
    let (ch, shc) = if mu.norm() < 1e-8 {
        // cosh μ ≈ 1 + μ²/2, sinh μ / μ ≈ 1 + μ²/6.
        (
            Complex64::new(1.0, 0.0) + mu2 / 2.0,
            Complex64::new(1.0, 0.0) + mu2 / 6.0,
        )
    } else {
        (mu.cosh(), mu.sinh() / mu)
    };
    [
        [ch + shc * x[0][0], shc * x[0][1]],
        [shc * x[1][0], ch + shc * x[1][1]],
    ]
}

/// exp(i(a σ_x + b σ_y + c σ_z)) ∈ SU(2).
pub fn su2_from_params(a: f64, b: f64, c: f64) -> Mat2 {
    let theta = (a * a + b * b + c * c).sqrt();
    let (cos, sinc) = if theta < 1e-8 {
        (1.0 - theta * theta / 2.0, 1.0 - theta * theta / 6.0)
    } else {
        (theta.cos(), theta.sin() / theta)
    };
    let i = Complex64::new(0.0, 1.0);
    // a σ_x + b σ_y + c σ_z = [[c, a−ib], [a+ib, −c]].
    [
        [
            Complex64::new(cos, 0.0) + i * sinc * c,
            i * sinc * Complex64::new(a, -b),
        ],
        [
            i * sinc * Complex64::new(a, b),
            Complex64::new(cos, 0.0) - i * sinc * c,
        ],
    ]
}

/// exp of a random traceless matrix with entries of the given scale;
/// determinant 1 up to rounding.
pub fn random_special_linear(rng: &mut ChaCha12Rng, scale: f64) -> Mat2 {
    let mut draw = || {
        Complex64::new(
            scale * rng.sample::<f64, _>(StandardNormal),
            scale * rng.sample::<f64, _>(StandardNormal),
        )
    };
    let a = draw();
    let b = draw();
    let c = draw();
    exp_traceless(&[[a, b], [c, -a]])
}

pub fn random_su2(rng: &mut ChaCha12Rng, scale: f64) -> Mat2 {
    su2_from_params(
        scale * rng.sample::<f64, _>(StandardNormal),
        scale * rng.sample::<f64, _>(StandardNormal),
        scale * rng.sample::<f64, _>(StandardNormal),
    )
}

/// Apply a 2×2 matrix to one qubit slot (slot 0 is the leading bit).
pub fn apply_slot(m: &Mat2, slot: usize, psi: &QuartState) -> QuartState {
    let shift = 3 - slot;
    let mut out = QuartState::zero();
    for idx in 0..16 {
        let bit = (idx >> shift) & 1;
        for src_bit in 0..2 {
            let src = (idx & !(1 << shift)) | (src_bit << shift);
            out.amp[idx] += m[bit][src_bit] * psi.amp[src];
        }
    }
    out
}

/// Slot-wise group action (U₁⊗U₂⊗U₃⊗U₄)ψ.
pub fn apply_local(g: &LocalOperator, psi: &QuartState) -> Result<QuartState, OrbitError> {
    if g.kind == OperatorKind::LieGenerator {
        return Err(OrbitError::GeneratorWhereGroupRequired);
    }
    let mut out = psi.clone();
    for slot in 0..4 {
        out = apply_slot(&g.m[slot], slot, &out);
    }
    Ok(out)
}

/// Lie-algebra action: X acting in its single active slot, identity
/// elsewhere.
pub fn apply_generator(g: &LocalOperator, psi: &QuartState) -> Result<QuartState, OrbitError> {
    if g.kind != OperatorKind::LieGenerator {
        return Err(OrbitError::GroupWhereGeneratorRequired);
    }
    let mut out = QuartState::zero();
    for slot in 0..4 {
        if mat2_norm(&g.m[slot]) > 0.0 {
            out = out.add(&apply_slot(&g.m[slot], slot, psi));
        }
    }
    Ok(out)
}

/// The twelve generators of 𝔰𝔩(2)^×4: raising, lowering and diagonal in
/// each slot.
pub fn sl2_basis() -> Vec<LocalOperator> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let e: Mat2 = [[zero, one], [zero, zero]];
    let f: Mat2 = [[zero, zero], [one, zero]];
    let h: Mat2 = [[one, zero], [zero, -one]];
    let mut out = Vec::with_capacity(12);
    for slot in 0..4 {
        for x in [e, f, h] {
            out.push(LocalOperator::generator(slot, x));
        }
    }
    out
}

/// The images X_k·ψ of the twelve generators, with the rank of their span.
#[derive(Debug, Clone)]
pub struct TangentMap {
    pub rows: Vec<[Complex64; 16]>,
    pub rank: usize,
    pub smallest_sv: f64,
}

pub fn tangent_map(psi: &QuartState) -> TangentMap {
    let basis = sl2_basis();
    let rows: Vec<[Complex64; 16]> = basis
        .iter()
        .map(|x| apply_generator(x, psi).expect("generator kind").amp)
        .collect();
    let m = nalgebra::DMatrix::from_fn(12, 16, |i, j| rows[i][j]);
    let svs = m.singular_values();
    let max_sv = svs.iter().cloned().fold(0.0_f64, f64::max);
    let rank = if max_sv == 0.0 {
        0
    } else {
        svs.iter().filter(|&&s| s > 1e-9 * max_sv).count()
    };
    let smallest_sv = svs.iter().cloned().fold(f64::INFINITY, f64::min);
    TangentMap {
        rows,
        rank,
        smallest_sv,
    }
}

/// A state is generic exactly when its SL-orbit has full dimension 12.
pub fn is_generic(psi: &QuartState) -> bool {
    tangent_map(psi).rank == 12
}

/// max over the twelve generators of |⟨ψ, X_k ψ⟩| at ψ = Σ z_j u_j. This
/// vanishes (to rounding) for every z ∈ A: each generator image either
/// leaves the even-weight support of A or redistributes weight evenly.
pub fn kempf_ness_residual(z: &AVector) -> f64 {
    let psi = embed_a(z);
    sl2_basis()
        .iter()
        .map(|x| {
            psi.inner(&apply_generator(x, &psi).expect("generator kind"))
                .norm()
        })
        .fold(0.0, f64::max)
}

/// Sample determinant-one perturbations g and return min ‖g·ψ‖/‖ψ‖ at
/// ψ = Σ z_j u_j. Entry scales cycle through {0.1, 0.5, 1.0} to probe both
/// near-identity and far regions.
pub fn norm_min_probe(z: &AVector, samples: usize, seed: u64) -> Result<f64, OrbitError> {
    if samples == 0 {
        return Err(OrbitError::NoSamples);
    }
    let psi = embed_a(z);
    let base = psi.norm();
    const SCALES: [f64; 3] = [0.1, 0.5, 1.0];
    let mut min_ratio = f64::INFINITY;
    for index in 0..samples {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let scale = SCALES[index % SCALES.len()];
        let g = LocalOperator::special_linear([
            random_special_linear(&mut rng, scale),
            random_special_linear(&mut rng, scale),
            random_special_linear(&mut rng, scale),
            random_special_linear(&mut rng, scale),
        ]);
        let ratio = apply_local(&g, &psi)?.norm() / base;
        min_ratio = min_ratio.min(ratio);
    }
    Ok(min_ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperdet::{det4, det_a};
    use crate::qstate::{state_l, QuartState};

    fn rand_complex(rng: &mut ChaCha12Rng) -> Complex64 {
        Complex64::new(
            rng.random::<f64>() * 2.0 - 1.0,
            rng.random::<f64>() * 2.0 - 1.0,
        )
    }

    fn rand_avector(rng: &mut ChaCha12Rng) -> AVector {
        AVector {
            z: [
                rand_complex(rng),
                rand_complex(rng),
                rand_complex(rng),
                rand_complex(rng),
            ],
        }
    }

    fn rand_state(rng: &mut ChaCha12Rng) -> QuartState {
        let mut s = QuartState::zero();
        for a in &mut s.amp {
            *a = rand_complex(rng);
        }
        s
    }

    fn product_state(rng: &mut ChaCha12Rng) -> QuartState {
        let factors: Vec<[Complex64; 2]> = (0..4)
            .map(|_| [rand_complex(rng), rand_complex(rng)])
            .collect();
        let mut s = QuartState::zero();
        for idx in 0..16 {
            let mut a = Complex64::new(1.0, 0.0);
            for (slot, f) in factors.iter().enumerate() {
                a *= f[(idx >> (3 - slot)) & 1];
            }
            s.amp[idx] = a;
        }
        s
    }

    #[test]
    fn identity_action() {
        let mut rng = ChaCha12Rng::seed_from_u64(103);
        let psi = rand_state(&mut rng);
        let out = apply_local(&LocalOperator::identity(), &psi).unwrap();
        assert!(out.sub(&psi).norm() < 1e-15);
    }

    #[test]
    fn unitary_preserves_norm() {
        let mut rng = ChaCha12Rng::seed_from_u64(107);
        for _ in 0..20 {
            let g = LocalOperator::unitary([
                random_su2(&mut rng, 1.0),
                random_su2(&mut rng, 1.0),
                random_su2(&mut rng, 1.0),
                random_su2(&mut rng, 1.0),
            ]);
            assert!(g.kind_residual() < 1e-12);
            let psi = rand_state(&mut rng);
            let out = apply_local(&g, &psi).unwrap();
            assert!((out.norm() - psi.norm()).abs() < 1e-12 * psi.norm());
        }
    }

    #[test]
    fn special_linear_preserves_det4() {
        let mut rng = ChaCha12Rng::seed_from_u64(109);
        for _ in 0..20 {
            let z = rand_avector(&mut rng);
            let psi = embed_a(&z).normalized();
            let d = det4(&psi);
            let g = LocalOperator::special_linear([
                random_special_linear(&mut rng, 0.5),
                random_special_linear(&mut rng, 0.5),
                random_special_linear(&mut rng, 0.5),
                random_special_linear(&mut rng, 0.5),
            ]);
            assert!(g.kind_residual() < 1e-12);
            let d2 = det4(&apply_local(&g, &psi).unwrap());
            assert!((d - d2).norm() < 1e-8 * (1.0 + d.norm()));
        }
    }

    #[test]
    fn generator_rejected_as_group_element() {
        let g = sl2_basis().into_iter().next().unwrap();
        let psi = QuartState::basis_e(0);
        assert!(matches!(
            apply_local(&g, &psi),
            Err(OrbitError::GeneratorWhereGroupRequired)
        ));
    }

    #[test]
    fn sl2_basis_properties() {
        let basis = sl2_basis();
        assert_eq!(basis.len(), 12);
        for g in &basis {
            assert!(g.kind_residual() < 1e-15);
            for slot in 0..4 {
                let m = g.m[slot];
                let trace = m[0][0] + m[1][1];
                assert!(trace.norm() < 1e-15);
                if mat2_norm(&m) > 0.0 {
                    // exp(tX) has determinant 1 for the active slot.
                    let scaled = [
                        [m[0][0] * 0.1, m[0][1] * 0.1],
                        [m[1][0] * 0.1, m[1][1] * 0.1],
                    ];
                    let e = exp_traceless(&scaled);
                    assert!((mat2_det(&e) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn tangent_rank_generic_and_degenerate() {
        let mut rng = ChaCha12Rng::seed_from_u64(113);
        // Generic coordinate vectors have rank 12.
        let mut found = 0;
        while found < 5 {
            let z = rand_avector(&mut rng);
            if det_a(&z).norm() < 1e-6 {
                continue;
            }
            found += 1;
            assert_eq!(tangent_map(&embed_a(&z)).rank, 12);
        }
        // A product state degenerates: E kills it, the four F images are
        // distinct basis vectors, the four H images are all ψ itself, so the
        // span has dimension 5.
        let t = tangent_map(&QuartState::basis_e(0));
        assert_eq!(t.rank, 5);
        assert!(t.rank < 12);
    }

    #[test]
    fn tangent_rank_orbit_invariant() {
        let mut rng = ChaCha12Rng::seed_from_u64(127);
        let z = rand_avector(&mut rng);
        let psi = embed_a(&z);
        let base = tangent_map(&psi).rank;
        for _ in 0..5 {
            let g = LocalOperator::special_linear([
                random_special_linear(&mut rng, 0.5),
                random_special_linear(&mut rng, 0.5),
                random_special_linear(&mut rng, 0.5),
                random_special_linear(&mut rng, 0.5),
            ]);
            assert_eq!(tangent_map(&apply_local(&g, &psi).unwrap()).rank, base);
        }
    }

    #[test]
    fn genericity_examples() {
        assert!(is_generic(&embed_a(&state_l())));
        assert!(!is_generic(&QuartState::basis_e(0)));
        let z = AVector::from_reals([1.0, 1.0, 0.0, 0.0]);
        assert!(!is_generic(&embed_a(&z)));
    }

    #[test]
    fn genericity_agrees_with_det4() {
        let mut rng = ChaCha12Rng::seed_from_u64(131);
        let mut cases: Vec<QuartState> = Vec::new();
        for _ in 0..100 {
            cases.push(rand_state(&mut rng).normalized());
        }
        for _ in 0..50 {
            cases.push(product_state(&mut rng).normalized());
        }
        for _ in 0..50 {
            let a = rand_complex(&mut rng);
            let b = rand_complex(&mut rng);
            let z = AVector::new(a, -a, b, -b); // repeated squares: Det = 0
            let psi = embed_a(&z);
            if psi.norm() > 1e-3 {
                cases.push(psi.normalized());
            }
        }
        for psi in &cases {
            let generic = is_generic(psi);
            let by_det = det4(psi).norm() > 1e-12 * psi.norm().powi(24);
            assert_eq!(generic, by_det);
        }
    }

    #[test]
    fn kempf_ness_orthogonality_on_a() {
        let z = AVector::from_reals([1.0, 0.0, 0.0, 0.0]);
        assert!(kempf_ness_residual(&z) < 1e-14);

        let mut rng = ChaCha12Rng::seed_from_u64(137);
        for _ in 0..1000 {
            let z = rand_avector(&mut rng);
            let res = kempf_ness_residual(&z);
            let scale = z.norm() * z.norm();
            assert!(res < 1e-12 * scale, "residual {res} at scale {scale}");
        }
    }

    #[test]
    fn kempf_ness_nonvacuous_off_a() {
        // Generic states outside A are not orthogonal to their orbit tangent.
        let mut rng = ChaCha12Rng::seed_from_u64(139);
        let mut big = 0;
        for _ in 0..20 {
            let psi = rand_state(&mut rng).normalized();
            let res = sl2_basis()
                .iter()
                .map(|x| psi.inner(&apply_generator(x, &psi).unwrap()).norm())
                .fold(0.0, f64::max);
            if res > 1e-3 {
                big += 1;
            }
        }
        assert!(big >= 18, "only {big}/20 off-A states showed a residual");
    }

    #[test]
    fn norm_minimality_at_state_l() {
        let min_ratio = norm_min_probe(&state_l(), 500, 7).unwrap();
        assert!(min_ratio >= 1.0 - 1e-9, "min ratio {min_ratio}");
    }

    #[test]
    fn unitary_probes_have_unit_ratio() {
        let mut rng = ChaCha12Rng::seed_from_u64(149);
        let psi = embed_a(&state_l());
        for _ in 0..100 {
            let g = LocalOperator::unitary([
                random_su2(&mut rng, 1.0),
                random_su2(&mut rng, 1.0),
                random_su2(&mut rng, 1.0),
                random_su2(&mut rng, 1.0),
            ]);
            let ratio = apply_local(&g, &psi).unwrap().norm() / psi.norm();
            assert!((ratio - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_probe_grows_norm() {
        // diag(2, 1/2) on slot 0 applied to u₀ doubles two amplitudes and
        // halves two: the squared norm becomes 2·1² + 2·(1/4)² = 17/8.
        let z = AVector::from_reals([1.0, 0.0, 0.0, 0.0]);
        let psi = embed_a(&z);
        let g: Mat2 = [
            [Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)],
        ];
        let out = apply_slot(&g, 0, &psi);
        let ratio = out.norm() / psi.norm();
        assert!((ratio - (17.0_f64 / 8.0).sqrt()).abs() < 1e-14);
        assert!(ratio > 1.0);
    }

    #[test]
    fn inequality_chain_replay() {
        // |Det(g·z)| = ‖z‖²⁴ |Det(z/‖z‖)| ≤ 3⁻⁹ ‖g·z‖²⁴.
        let mut rng = ChaCha12Rng::seed_from_u64(151);
        let bound = 3.0_f64.powi(-9);
        let mut done = 0;
        while done < 100 {
            let z = rand_avector(&mut rng);
            if det_a(&z).norm() < 1e-10 {
                continue;
            }
            done += 1;
            let psi = embed_a(&z);
            let g = LocalOperator::special_linear([
                random_special_linear(&mut rng, 0.4),
                random_special_linear(&mut rng, 0.4),
                random_special_linear(&mut rng, 0.4),
                random_special_linear(&mut rng, 0.4),
            ]);
            let moved = apply_local(&g, &psi).unwrap();
            let lhs = det4(&moved).norm();
            let norm = z.norm();
            let unit = z.scale(Complex64::new(1.0 / norm, 0.0));
            let middle = norm.powi(24) * det_a(&unit).norm();
            assert!((lhs - middle).abs() < 1e-8 * (1.0 + middle));
            let rhs = bound * moved.norm().powi(24);
            assert!(lhs <= rhs * (1.0 + 1e-8), "chain violated: {lhs} > {rhs}");
        }
    }

    #[test]
    fn probe_argument_validation() {
        assert!(matches!(
            norm_min_probe(&state_l(), 0, 1),
            Err(OrbitError::NoSamples)
        ));
    }
}
