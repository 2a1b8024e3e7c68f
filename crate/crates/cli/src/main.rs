//! `henon`: solve, certify and trace solutions of the Hénon equation on the
//! unit interval and the unit square.
//!
//! Exit codes: 0 success, 1 other errors, 2 Newton did not converge,
//! 3 invalid arguments, 4 verification failed.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use henon_core::constants::{choose_tau, embed_c2, embed_cp, proj_cm, proj_cm_tau, weight_d};
use henon_core::eigen::{clusters, mu_intervals};
use henon_core::galerkin::{
    approx_eigs, default_m_diag, make_seed, newton_solve, parse_peaks, preset_peaks, trace_curve, ContinuationOptions,
    CurvePoint, GalerkinSolution, NewtonOptions,
};
use henon_core::nk::{verify, Verdict, VerifyOptions};
use henon_core::report::{
    certificate_report, curve_csv, curve_svg, fmt_interval, load_solution, save_solution, write_atomic, PlotQuantity,
    SolutionMeta,
};
use henon_core::{ProblemSpec, SpaceKind, SymmetrySpace};

const EXIT_NO_CONVERGENCE: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_NOT_PROVEN: u8 = 4;

#[derive(Parser)]
#[command(name = "henon", version, about = "Galerkin solutions and existence proofs for -Δu = |x-x0|^l |u|^(p-1) u")]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true, env = "HENON_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone)]
struct ProblemArgs {
    /// Spatial dimension, 1 or 2.
    #[arg(long = "N")]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    l: f64,
    #[arg(long, default_value_t = 3.0)]
    p: f64,
}

impl ProblemArgs {
    fn spec(&self) -> Result<ProblemSpec, UsageError> {
        ProblemSpec::new(self.n, self.l, self.p).map_err(usage)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Newton's method from a seed; writes the coefficient file.
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value = "Full")]
        space: String,
        #[arg(long = "M", default_value_t = 40)]
        m: usize,
        /// `preset:NAME` or a peak list `x[,y]:amp[:width];...`.
        #[arg(long, default_value = "preset:center")]
        seed: String,
        #[arg(long)]
        branch_id: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rigorous existence check around a stored solution.
    Verify {
        solution: PathBuf,
        /// Truncation order of the eigenvalue pencil (default: the solution's M).
        #[arg(long = "Meig")]
        m_eig: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<f64>,
        /// Space of the eigenvalue pencil (default: Full for N=1, the solution's space for N=2).
        #[arg(long)]
        eig_space: Option<String>,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Natural continuation in l from one or more stored solutions.
    Curve {
        /// Starting solutions; each becomes one branch.
        #[arg(long, required = true, num_args = 1..)]
        from: Vec<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        l_start: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        l_end: f64,
        #[arg(long, default_value_t = 0.05)]
        l_step: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Plot::Peak)]
        plot: Plot,
    },
    /// Approximate eigenvalues μ of the linearized operator.
    Eigs {
        solution: PathBuf,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long = "Mdiag")]
        m_diag: Option<usize>,
        /// Also print verified enclosures of λ.
        #[arg(long)]
        verified: bool,
    },
    /// Enclosures of the embedding and projection constants.
    Constants {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long = "M", default_value_t = 40)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Plot {
    Peak,
    Norm,
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(e: impl std::fmt::Display) -> UsageError {
    UsageError(e.to_string())
}

struct Exit(u8, String);

impl std::fmt::Debug for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(x) = e.downcast_ref::<Exit>() {
                if !x.1.is_empty() {
                    eprintln!("{}", x.1);
                }
                return ExitCode::from(x.0);
            }
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Solve {
            problem,
            space,
            m,
            seed,
            branch_id,
            out,
        } => cmd_solve(&problem, &space, m, &seed, branch_id, out.as_deref()),
        Cmd::Verify {
            solution,
            m_eig,
            tau,
            eig_space,
            out,
        } => cmd_verify(&solution, m_eig, tau, eig_space.as_deref(), out.as_deref()),
        Cmd::Curve {
            from,
            l_start,
            l_end,
            l_step,
            out,
            svg,
            plot,
        } => cmd_curve(&from, l_start, l_end, l_step, &out, svg.as_deref(), plot),
        Cmd::Eigs {
            solution,
            k,
            m_diag,
            verified,
        } => cmd_eigs(&solution, k, m_diag, verified),
        Cmd::Constants { problem, m, tau } => cmd_constants(&problem, m, tau),
    }
}

fn parse_space(s: &str, n_dim: usize, m: usize) -> Result<SymmetrySpace, UsageError> {
    let kind: SpaceKind = s.parse().map_err(usage)?;
    SymmetrySpace::new(kind, n_dim, m).map_err(usage)
}

fn cmd_solve(
    problem: &ProblemArgs,
    space: &str,
    m: usize,
    seed: &str,
    branch_id: Option<String>,
    out: Option<&Path>,
) -> Result<()> {
    let spec = problem.spec()?;
    let space = parse_space(space, spec.n_dim, m)?;
    let (peaks, default_id) = match seed.strip_prefix("preset:") {
        Some(name) => (preset_peaks(name, &spec).map_err(usage)?, name.to_string()),
        None => (parse_peaks(seed, spec.n_dim).map_err(usage)?, "custom".to_string()),
    };
    let start = make_seed(&spec, &space, &peaks).map_err(usage)?;
    let sol = newton_solve(&start, NewtonOptions::default())?;
    let summary = format!(
        "N={} l={} p={} space={} M={} dim={} converged={} iters={} grad={:.3e} h10_norm={:.9} peak={:.6}",
        spec.n_dim,
        spec.l,
        spec.p,
        space.kind,
        space.m,
        space.dim(),
        sol.converged,
        sol.iterations,
        sol.grad_norm,
        sol.h10_norm(),
        sol.peak_estimate()
    );
    if !sol.converged {
        return Err(Exit(EXIT_NO_CONVERGENCE, format!("newton did not converge: {summary}\nhistory: {:?}", sol.history)).into());
    }
    println!("{summary}");
    if let Some(path) = out {
        let meta = SolutionMeta::now(branch_id.as_deref().unwrap_or(&default_id));
        save_solution(path, &sol, &meta).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn load(path: &Path) -> Result<(GalerkinSolution, SolutionMeta)> {
    load_solution(path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_verify(path: &Path, m_eig: Option<usize>, tau: Option<f64>, eig_space: Option<&str>, out: Option<&Path>) -> Result<()> {
    if let Some(t) = tau {
        choose_tau(Some(t)).map_err(usage)?;
    }
    if m_eig.is_some_and(|m| m < 2) {
        return Err(usage("--Meig must be at least 2").into());
    }
    let (sol, _) = load(path)?;
    let eig_space = eig_space
        .map(|s| s.parse::<SpaceKind>().map_err(usage))
        .transpose()?;
    let opts = VerifyOptions { m_eig, tau, eig_space };
    let v = match verify(&sol, &opts) {
        Ok(v) => v,
        Err(e @ henon_core::Error::UnsupportedSpace(..)) => return Err(usage(e).into()),
        Err(e) => return Err(Exit(EXIT_NOT_PROVEN, format!("verdict = Failed({e})")).into()),
    };
    let report = certificate_report(&sol, &v);
    print!("{report}");
    if let Some(o) = out {
        write_atomic(o, report.as_bytes())?;
    }
    match &v.certificate.verdict {
        Verdict::Proven => Ok(()),
        Verdict::Failed(_) => Err(Exit(EXIT_NOT_PROVEN, String::new()).into()),
    }
}

fn cmd_curve(
    from: &[PathBuf],
    l_start: Option<f64>,
    l_end: f64,
    l_step: f64,
    out: &Path,
    svg: Option<&Path>,
    plot: Plot,
) -> Result<()> {
    if !(l_step > 0.0) || !l_step.is_finite() {
        return Err(usage("--l-step must be positive").into());
    }
    if !(l_end >= 0.0) || l_start.is_some_and(|l| !(l >= 0.0)) {
        return Err(usage("l must be nonnegative").into());
    }
    let seeds = from.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
    let branches: Vec<Vec<CurvePoint>> = seeds
        .par_iter()
        .map(|(sol, meta)| {
            let start = l_start.unwrap_or(sol.spec.l);
            let id = if meta.branch_id.is_empty() { "branch" } else { &meta.branch_id };
            trace_curve(sol, start, l_end, l_step, id, ContinuationOptions::default()).0
        })
        .collect();
    let points: Vec<CurvePoint> = branches.into_iter().flatten().collect();
    write_atomic(out, curve_csv(&points)?.as_bytes())?;
    if let Some(s) = svg {
        let q = match plot {
            Plot::Peak => PlotQuantity::Peak,
            Plot::Norm => PlotQuantity::Norm,
        };
        write_atomic(s, curve_svg(&points, q).as_bytes())?;
    }
    for (sol, meta) in &seeds {
        let pts: Vec<&CurvePoint> = points.iter().filter(|p| p.branch_id == meta.branch_id).collect();
        let last = pts.iter().rev().find(|p| p.converged);
        let died = pts.last().filter(|p| !p.converged);
        println!(
            "branch={} from l={} points={} last_converged_l={} {}",
            meta.branch_id,
            sol.spec.l,
            pts.iter().filter(|p| p.converged).count(),
            last.map(|p| p.l.to_string()).unwrap_or_else(|| "none".into()),
            died.map(|p| format!("failed_at_l={}", p.l)).unwrap_or_default()
        );
    }
    Ok(())
}

fn cmd_eigs(path: &Path, k: usize, m_diag: Option<usize>, verified: bool) -> Result<()> {
    let (sol, _) = load(path)?;
    let m_diag = m_diag.unwrap_or_else(|| default_m_diag(sol.spec.n_dim));
    let mu = approx_eigs(&sol, k, m_diag);
    for (i, v) in mu.iter().enumerate() {
        println!("mu_{} = {v:.6} approx", i + 1);
    }
    println!("negative = {}", mu.iter().filter(|v| **v < 0.0).count());
    if verified {
        let v = match verify(&sol, &VerifyOptions::default()) {
            Ok(v) => v,
            Err(e) => return Err(Exit(EXIT_NOT_PROVEN, format!("no verified eigenvalues: {e}")).into()),
        };
        for (i, (l, mult)) in clusters(&v.corrected.lambda).iter().take(k).enumerate() {
            println!("lambda_cluster_{} = {} multiplicity {mult}", i + 1, fmt_interval(*l));
        }
        for (i, m) in mu_intervals(&v.corrected).iter().take(k).enumerate() {
            println!("mu_enclosure_{} = {}", i + 1, fmt_interval(*m));
        }
    }
    Ok(())
}

fn cmd_constants(problem: &ProblemArgs, m: usize, tau: Option<f64>) -> Result<()> {
    let spec = problem.spec()?;
    if m < 2 {
        return Err(usage("--M must be at least 2").into());
    }
    let tau = choose_tau(tau).map_err(usage)?;
    println!("tau    = {}", fmt_interval(tau));
    println!("C2     = {}", fmt_interval(embed_c2(spec.n_dim, tau)));
    println!("Cp1    = {}", fmt_interval(embed_cp(spec.n_dim, spec.p + 1.0, tau)?));
    println!("CM     = {}", fmt_interval(proj_cm(m)));
    println!("CM_tau = {}", fmt_interval(proj_cm_tau(m, tau)));
    println!("d      = {}", fmt_interval(weight_d(&spec)?));
    Ok(())
}
