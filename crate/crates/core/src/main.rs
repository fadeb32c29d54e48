//! Command-line interface: hyperdeterminant evaluation, criticality
//! certificates, genericity and Kempf-Ness probes, LU-equivalence search,
//! Vandermonde maximization, and the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use hyperdet4::casework;
use hyperdet4::critpoint::criticality_residual;
use hyperdet4::hyperdet::{det4, det_a};
use hyperdet4::luequiv::lu_search;
use hyperdet4::orbit::{is_generic, kempf_ness_residual, norm_min_probe, tangent_map};
use hyperdet4::qstate::{parse_state_json, project_a, state_l, AVector, LoadedState, QuartState};
use hyperdet4::verify::{run_verify_all, VerifyConfig};
use hyperdet4::vmax::maximize_vn;

#[derive(Parser)]
#[command(
    name = "hyperdet4",
    version,
    about = "Four-qubit hyperdeterminant toolkit"
)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hyperdeterminant evaluation and state certificates.
    Det {
        #[command(subcommand)]
        cmd: DetCmd,
    },
    /// Maximize |V_n| under the L1 constraint.
    Vmax(VmaxArgs),
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum DetCmd {
    /// Evaluate Det on a state file.
    Eval {
        #[arg(long = "in")]
        input: PathBuf,
        /// Use the restriction formula (requires a point of A).
        #[arg(long)]
        subspace_a: bool,
    },
    /// First-order criticality certificate for a coordinate vector on Δ.
    Certify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Generic-set membership via the orbit tangent rank.
    Generic {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Kempf-Ness orthogonality and norm-minimality probes.
    Kempfness {
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Local-unitary equivalence search between two states.
    Lueq {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct VmaxArgs {
    #[command(subcommand)]
    sweep: Option<VmaxSub>,
    /// Number of points.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 50)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Also write the JSON report to a file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VmaxSub {
    /// Run a range of n and emit CSV.
    Sweep {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run every suite and emit a JSON summary.
    All {
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Run the exact casework replay only.
    Casework,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized");
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type CliResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Det { cmd } => run_det(cmd, cli.pretty),
        Command::Vmax(args) => run_vmax(args, cli.pretty),
        Command::Verify { cmd } => run_verify(cmd, cli.pretty),
    }
}

fn load_state(path: &Path) -> Result<LoadedState, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_state_json(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn load_avector(path: &Path) -> Result<AVector, Box<dyn std::error::Error>> {
    match load_state(path)? {
        LoadedState::Coords(z) => Ok(z),
        LoadedState::Full(psi) => {
            let (z, residual) = project_a(&psi);
            if residual > 1e-10 {
                return Err(format!(
                    "{}: state is not in the subspace A (residual {residual:.3e})",
                    path.display()
                )
                .into());
            }
            Ok(z)
        }
    }
}

fn emit(pretty: bool, json: serde_json::Value, table: Vec<(String, String)>) {
    if pretty {
        let width = table.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in table {
            println!("{k:<width$}  {v}");
        }
    } else {
        println!("{json}");
    }
}

fn run_det(cmd: DetCmd, pretty: bool) -> CliResult {
    match cmd {
        DetCmd::Eval { input, subspace_a } => {
            let loaded = load_state(&input)?;
            let (value, method) = if subspace_a {
                let z = load_avector(&input)?;
                (det_a(&z), "restriction")
            } else {
                (det4(&loaded.to_state()), "schlafli")
            };
            emit(
                pretty,
                serde_json::json!({
                    "det": [value.re, value.im],
                    "abs": value.norm(),
                    "method": method,
                }),
                vec![
                    ("det".into(), format!("{} + {}i", value.re, value.im)),
                    ("abs".into(), format!("{}", value.norm())),
                    ("method".into(), method.into()),
                ],
            );
            Ok(ExitCode::SUCCESS)
        }
        DetCmd::Certify { input } => {
            let z = load_avector(&input)?;
            let report = criticality_residual(&z);
            emit(
                pretty,
                serde_json::to_value(report)?,
                vec![
                    (
                        "classification".into(),
                        serde_json::to_value(report.classification)?
                            .as_str()
                            .unwrap_or("invalid")
                            .to_string(),
                    ),
                    ("max_imag".into(), format!("{:.3e}", report.max_imag)),
                    (
                        "max_pairwise_gap".into(),
                        format!("{:.3e}", report.max_pairwise_gap),
                    ),
                    (
                        "phase_sum_residual".into(),
                        format!("{:.3e}", report.phase_sum_residual),
                    ),
                    (
                        "boundary_residual".into(),
                        format!("{:.3e}", report.boundary_residual),
                    ),
                ],
            );
            Ok(ExitCode::SUCCESS)
        }
        DetCmd::Generic { input } => {
            let psi = load_state(&input)?.to_state();
            let t = tangent_map(&psi);
            let abs_det = det4(&psi).norm();
            let generic = is_generic(&psi);
            emit(
                pretty,
                serde_json::json!({
                    "generic": generic,
                    "rank": t.rank,
                    "abs_det": abs_det,
                }),
                vec![
                    ("generic".into(), generic.to_string()),
                    ("rank".into(), t.rank.to_string()),
                    ("abs_det".into(), format!("{abs_det:.6e}")),
                ],
            );
            Ok(ExitCode::SUCCESS)
        }
        DetCmd::Kempfness { samples, seed } => {
            if samples == 0 {
                return Err("samples must be at least 1".into());
            }
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let mut max_res = 0.0_f64;
            for _ in 0..samples {
                let z = AVector {
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
                };
                let scale = (z.norm() * z.norm()).max(1e-300);
                max_res = max_res.max(kempf_ness_residual(&z) / scale);
            }
            let min_ratio = norm_min_probe(&state_l(), samples, seed)?;
            emit(
                pretty,
                serde_json::json!({
                    "samples": samples,
                    "seed": seed,
                    "max_orthogonality_residual": max_res,
                    "min_norm_ratio": min_ratio,
                }),
                vec![
                    ("samples".into(), samples.to_string()),
                    ("seed".into(), seed.to_string()),
                    (
                        "max_orthogonality_residual".into(),
                        format!("{max_res:.3e}"),
                    ),
                    ("min_norm_ratio".into(), format!("{min_ratio:.12}")),
                ],
            );
            Ok(ExitCode::SUCCESS)
        }
        DetCmd::Lueq {
            a,
            b,
            restarts,
            seed,
        } => {
            let pa = normalized_state(&a)?;
            let pb = normalized_state(&b)?;
            let (fidelity, witness) = lu_search(&pa, &pb, restarts, seed)?;
            let w: Vec<Vec<Vec<[f64; 2]>>> = witness
                .m
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
                        .collect()
                })
                .collect();
            emit(
                pretty,
                serde_json::json!({ "fidelity": fidelity, "witness": w }),
                vec![("fidelity".into(), format!("{fidelity:.12}"))],
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn normalized_state(path: &Path) -> Result<QuartState, Box<dyn std::error::Error>> {
    let psi = load_state(path)?.to_state();
    let norm = psi.norm();
    if norm == 0.0 {
        return Err(format!("{}: zero state", path.display()).into());
    }
    Ok(psi.normalized())
}

fn run_vmax(args: VmaxArgs, pretty: bool) -> CliResult {
    if let Some(VmaxSub::Sweep {
        n_min,
        n_max,
        restarts,
        seed,
        tol,
        out,
    }) = args.sweep
    {
        if n_min < 2 || n_max < n_min {
            return Err("need 2 <= n-min <= n-max".into());
        }
        let mut csv =
            String::from("n,lambda_n,best_value,ratio,criticality_residual,restarts,seed\n");
        for n in n_min..=n_max {
            let report = maximize_vn(n, restarts, seed, tol)?;
            csv.push_str(&format!(
                "{},{:e},{:e},{},{:e},{},{}\n",
                n,
                report.lambda_n,
                report.best_value,
                report.ratio,
                report.criticality_residual,
                report.restarts,
                report.seed
            ));
        }
        match out {
            Some(path) => std::fs::write(&path, &csv)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
            None => print!("{csv}"),
        }
        return Ok(ExitCode::SUCCESS);
    }

    let n = args
        .n
        .ok_or("missing required flag --n (or use `vmax sweep`)")?;
    let report = maximize_vn(n, args.restarts, args.seed, args.tol)?;
    let json = serde_json::to_value(&report)?;
    if let Some(path) = &args.out {
        std::fs::write(path, serde_json::to_string_pretty(&report)?)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    emit(
        pretty,
        json,
        vec![
            ("n".into(), report.n.to_string()),
            ("best_value".into(), format!("{:e}", report.best_value)),
            ("lambda_n".into(), format!("{:e}", report.lambda_n)),
            ("ratio".into(), format!("{:.9}", report.ratio)),
            (
                "criticality_residual".into(),
                format!("{:.3e}", report.criticality_residual),
            ),
            (
                "restarts".into(),
                format!(
                    "{} ({} converged)",
                    report.restarts, report.converged_restarts
                ),
            ),
            ("seed".into(), report.seed.to_string()),
        ],
    );
    Ok(ExitCode::SUCCESS)
}

fn run_verify(cmd: VerifyCmd, pretty: bool) -> CliResult {
    match cmd {
        VerifyCmd::All {
            restarts,
            seed,
            tol,
        } => {
            if restarts == 0 || tol <= 0.0 {
                return Err("restarts must be >= 1 and tol > 0".into());
            }
            let summary = run_verify_all(&VerifyConfig {
                seed,
                restarts,
                tol,
            });
            for c in &summary.checks {
                eprintln!("{:<34} {}", c.name, if c.pass { "PASS" } else { "FAIL" });
            }
            if pretty {
                for c in &summary.checks {
                    println!(
                        "{:<34} {}  {}",
                        c.name,
                        if c.pass { "PASS" } else { "FAIL" },
                        c.measured
                    );
                }
                println!("max_abs_det_estimate  {:e}", summary.max_abs_det_estimate);
                println!("ratio_n7              {}", summary.ratio_n7);
            } else {
                println!("{}", serde_json::to_string(&summary)?);
            }
            Ok(if summary.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        VerifyCmd::Casework => {
            let results = casework::run_all();
            let mut all_pass = true;
            for r in &results {
                all_pass &= r.passed();
                eprintln!(
                    "{:<36} {}",
                    r.name,
                    if r.passed() { "PASS" } else { "FAIL" }
                );
            }
            if pretty {
                for r in &results {
                    println!(
                        "{:<36} {}  {}",
                        r.name,
                        if r.passed() { "PASS" } else { "FAIL" },
                        r.note.clone().unwrap_or_default()
                    );
                }
            } else {
                println!("{}", serde_json::to_string(&results)?);
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
