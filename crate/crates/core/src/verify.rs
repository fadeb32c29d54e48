//! The one-shot verification suite: runs every headline check and reports a
//! machine-readable summary.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::casework;
use crate::critpoint::Classification;
use crate::hyperdet::{calibrate, det4, det_a};
use crate::luequiv::{canonicalize_maximizer, lu_search, maximizer, MaximizerParams};
use crate::orbit::{
    apply_local, kempf_ness_residual, norm_min_probe, random_special_linear, LocalOperator,
};
use crate::qstate::{embed_a, state_l, state_lprime, AVector};
use crate::vmax::{maximize_det_a, maximize_vn};

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub measured: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub checks: Vec<CheckOutcome>,
    /// Best |Det| found on the unit sphere of A.
    pub max_abs_det_estimate: f64,
    /// μ̂₇ / λ₇.
    pub ratio_n7: f64,
    pub all_pass: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub restarts: usize,
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            restarts: 50,
            tol: 1e-12,
        }
    }
}

fn rand_avector(rng: &mut ChaCha12Rng) -> AVector {
    AVector {
        z: [
            Complex64::new(
                rng.random::<f64>() * 2.0 - 1.0,
                rng.random::<f64>() * 2.0 - 1.0,
            ),
            Complex64::new(
                rng.random::<f64>() * 2.0 - 1.0,
                rng.random::<f64>() * 2.0 - 1.0,
            ),
            Complex64::new(
                rng.random::<f64>() * 2.0 - 1.0,
                rng.random::<f64>() * 2.0 - 1.0,
            ),
            Complex64::new(
                rng.random::<f64>() * 2.0 - 1.0,
                rng.random::<f64>() * 2.0 - 1.0,
            ),
        ],
    }
}

/// Run every suite in order. Each check contributes one outcome; the summary
/// also carries the two headline numbers.
pub fn run_verify_all(config: &VerifyConfig) -> VerifySummary {
    let mut checks = Vec::new();
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed ^ 0x76657269);

    // Hyperdeterminant calibration and invariance.
    {
        let kappa = calibrate();
        let mut max_rel = 0.0_f64;
        if kappa.is_ok() {
            for _ in 0..200 {
                let z = rand_avector(&mut rng);
                let d = det_a(&z);
                let s = det4(&embed_a(&z));
                max_rel = max_rel.max((d - s).norm() / (1.0 + d.norm()));
            }
        }
        let pass = kappa.is_ok() && max_rel < 1e-9;
        checks.push(CheckOutcome {
            name: "hyperdet-calibration".into(),
            pass,
            measured: serde_json::json!({
                "kappa": kappa.as_ref().map(|k| [k.re, k.im]).unwrap_or([f64::NAN, f64::NAN]),
                "max_rel_deviation": max_rel,
            }),
        });

        let mut max_inv = 0.0_f64;
        for _ in 0..20 {
            let z = rand_avector(&mut rng);
            let psi = embed_a(&z).normalized();
            let d = det4(&psi);
            let g = LocalOperator::special_linear([
                random_special_linear(&mut rng, 0.4),
                random_special_linear(&mut rng, 0.4),
                random_special_linear(&mut rng, 0.4),
                random_special_linear(&mut rng, 0.4),
            ]);
            let moved = apply_local(&g, &psi).expect("group element");
            max_inv = max_inv.max((det4(&moved) - d).norm() / (1.0 + d.norm()));
        }
        checks.push(CheckOutcome {
            name: "hyperdet-sl-invariance".into(),
            pass: max_inv < 1e-8,
            measured: serde_json::json!({ "max_rel_deviation": max_inv }),
        });
    }

    // Kempf-Ness orthogonality and norm minimality.
    {
        let mut max_res = 0.0_f64;
        for _ in 0..1000 {
            let z = rand_avector(&mut rng);
            let scale = z.norm() * z.norm();
            max_res = max_res.max(kempf_ness_residual(&z) / scale.max(1e-300));
        }
        checks.push(CheckOutcome {
            name: "kempf-ness-orthogonality".into(),
            pass: max_res < 1e-12,
            measured: serde_json::json!({ "max_scaled_residual": max_res }),
        });

        let mut min_ratio = f64::INFINITY;
        let mut tried = 0;
        while tried < 5 {
            let z = rand_avector(&mut rng);
            if det_a(&z).norm() < 1e-8 {
                continue;
            }
            tried += 1;
            let r = norm_min_probe(&z, 100, config.seed.wrapping_add(tried as u64))
                .expect("samples > 0");
            min_ratio = min_ratio.min(r);
        }
        checks.push(CheckOutcome {
            name: "kempf-ness-norm-minimality".into(),
            pass: min_ratio >= 1.0 - 1e-9,
            measured: serde_json::json!({ "min_norm_ratio": min_ratio }),
        });
    }

    // |V₄| maximization reaches 3^{−9/2}.
    let vn4 = maximize_vn(4, config.restarts, config.seed, config.tol).expect("valid arguments");
    {
        let target = 3.0_f64.powf(-4.5);
        let rel = (vn4.best_value - target).abs() / target;
        checks.push(CheckOutcome {
            name: "vandermonde-n4-max".into(),
            pass: rel < 1e-6,
            measured: serde_json::json!({
                "best_value": vn4.best_value,
                "target": target,
                "rel_error": rel,
            }),
        });
    }

    // |Det| maximization on the sphere of A, with criticality certification.
    let detmax = maximize_det_a(config.restarts, config.seed, config.tol).expect("valid arguments");
    {
        let target = 3.0_f64.powi(-9);
        let rel = (detmax.best_abs_det - target).abs() / target;
        let crit = detmax.criticality;
        let crit_ok = crit.classification == Classification::OneZero
            && crit.max_imag < 1e-6
            && crit.max_pairwise_gap < 1e-6
            && crit.boundary_residual < 1e-6;
        checks.push(CheckOutcome {
            name: "det-max-and-criticality".into(),
            pass: rel < 1e-6 && crit_ok,
            measured: serde_json::json!({
                "best_abs_det": detmax.best_abs_det,
                "rel_error": rel,
                "classification": crit.classification,
                "max_pairwise_gap": crit.max_pairwise_gap,
            }),
        });
    }

    // Canonicalization closes over the maximizer family and over the
    // optimizer output.
    {
        let mut failures = 0;
        for _ in 0..100 {
            let params = MaximizerParams {
                zero_index: (rng.random::<u32>() % 4) as usize,
                phase: rng.random::<f64>() * std::f64::consts::TAU,
                orientation: if rng.random::<bool>() { 1 } else { -1 },
            };
            if canonicalize_maximizer(&maximizer(&params)).is_err() {
                failures += 1;
            }
        }
        let opt_target = canonicalize_maximizer(&detmax.best_avector())
            .map(|(_, t)| t.target)
            .unwrap_or("rejected");
        checks.push(CheckOutcome {
            name: "canonicalize-maximizer-closure".into(),
            pass: failures == 0 && (opt_target == "L" || opt_target == "Lprime"),
            measured: serde_json::json!({
                "family_failures": failures,
                "optimizer_maximizer_target": opt_target,
            }),
        });
    }

    // L and L′ are LU-equivalent.
    {
        let l = embed_a(&state_l());
        let lp = embed_a(&state_lprime());
        let (fidelity, _) = lu_search(&l, &lp, 64, config.seed).expect("normalized inputs");
        checks.push(CheckOutcome {
            name: "lu-equivalence-l-lprime".into(),
            pass: fidelity > 1.0 - 1e-6,
            measured: serde_json::json!({ "fidelity": fidelity }),
        });
    }

    // Exact casework replay.
    {
        let results = casework::run_all();
        let failed: Vec<String> = results
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.name.clone())
            .collect();
        checks.push(CheckOutcome {
            name: "casework-exact-replay".into(),
            pass: failed.is_empty(),
            measured: serde_json::json!({
                "total": results.len(),
                "failed": failed,
            }),
        });
    }

    // n = 7 strict improvement over the candidate value.
    let vn7 =
        maximize_vn(7, 200.max(config.restarts), config.seed, config.tol).expect("valid arguments");
    {
        checks.push(CheckOutcome {
            name: "vandermonde-n7-improvement".into(),
            pass: vn7.ratio > 1.0 + 1e-6,
            measured: serde_json::json!({
                "best_value": vn7.best_value,
                "lambda_7": vn7.lambda_n,
                "ratio": vn7.ratio,
            }),
        });
    }

    let all_pass = checks.iter().all(|c| c.pass);
    VerifySummary {
        checks,
        max_abs_det_estimate: detmax.best_abs_det,
        ratio_n7: vn7.ratio,
        all_pass,
    }
}
