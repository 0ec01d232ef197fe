//! Command-line front end. Exit codes: 0 success, 1 bad input, 2 negative
//! verdict (no connection, no transition, not converged), 3 failed check.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::action::{self, GridParams, MinimizeOptions, WellPotential};
use crate::analysis::{self, SweepOptions};
use crate::catalog::{Family, FAMILY_NAMES};
use crate::dynamics::{self, ReparamOptions, Trajectory, TOL_EQUIPARTITION, TOL_EULER_LAGRANGE};
use crate::error::Error;
use crate::geodesic::{self, TraceOptions};
use crate::io::{self, RunManifest};
use crate::potential::{BranchTag, Potential, PotentialSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hetero", version, about = "Heteroclinic connections of planar |f|^q potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Trace a connection, reparametrize it and write curve, trajectory and figure.
    Trace(TraceArgs),
    /// Minimize the discrete action directly.
    Minimize(MinimizeArgs),
    /// Recompute the residuals of a stored trajectory.
    Verify(VerifyArgs),
    /// Scan a family parameter for the existence threshold.
    Sweep(SweepArgs),
    /// Print the transition energy |g(β) − g(α)|.
    Energy(EnergyArgs),
    /// List the built-in families.
    Catalog,
}

#[derive(Args, Debug, Clone)]
pub struct PotentialArgs {
    /// Built-in family, e.g. triple-well-3, quartic-eps, cubic-ieps, rational-a.
    #[arg(long, conflicts_with = "spec")]
    pub catalog: Option<String>,
    /// Family parameter.
    #[arg(long)]
    pub param: Option<f64>,
    /// Potential spec as a JSON file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Exponent p > 1; defaults to the spec's value, or 2.
    #[arg(long)]
    pub p: Option<f64>,
    /// Logarithm branch: upper, lower or none.
    #[arg(long)]
    pub branch: Option<BranchTag>,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Index of the start minimum.
    #[arg(long)]
    pub from: usize,
    /// Index of the end minimum.
    #[arg(long)]
    pub to: usize,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Largest step in arclength.
    #[arg(long, default_value_t = 1e-2)]
    pub h: f64,
    /// Reach tolerance; default 1e-5·(1 + |β|).
    #[arg(long)]
    pub eps_reach: Option<f64>,
    /// Local error tolerance of the stepper.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Trajectory covers [−x_span, x_span].
    #[arg(long, default_value_t = 10.0)]
    pub x_span: f64,
    /// Trajectory sample spacing.
    #[arg(long, default_value_t = 1e-3)]
    pub dx: f64,
    #[arg(long, default_value_t = TOL_EQUIPARTITION)]
    pub tol_equipartition: f64,
    #[arg(long, default_value_t = TOL_EULER_LAGRANGE)]
    pub tol_euler_lagrange: f64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct MinimizeArgs {
    /// Use W(u) = (1 − u²)² on the line instead of a planar potential.
    #[arg(long, conflicts_with_all = ["catalog", "spec"])]
    pub scalar_two_well: bool,
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, default_value_t = 0)]
    pub from: usize,
    #[arg(long, default_value_t = 1)]
    pub to: usize,
    /// Monotonicity radius R; default |a⁺ − a⁻|/4.
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long, default_value_t = -8.0, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 8.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 1600)]
    pub intervals: usize,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1e-7)]
    pub grad_tol: f64,
    /// Skip the monotonicity check before minimizing.
    #[arg(long)]
    pub skip_hypothesis: bool,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Trajectory CSV as written by `trace`.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, default_value_t = TOL_EQUIPARTITION)]
    pub tol_equipartition: f64,
    #[arg(long, default_value_t = TOL_EULER_LAGRANGE)]
    pub tol_euler_lagrange: f64,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Family name, e.g. cubic-ieps.
    #[arg(long)]
    pub family: String,
    /// Parameter interval.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    pub range: Vec<f64>,
    #[arg(long, default_value_t = 15)]
    pub n_coarse: usize,
    #[arg(long, default_value_t = 0)]
    pub from: usize,
    #[arg(long, default_value_t = 1)]
    pub to: usize,
    #[arg(long, default_value_t = 1e-2)]
    pub h: f64,
    /// Target bracket width.
    #[arg(long, default_value_t = 1e-4)]
    pub width: f64,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub pair: PairArgs,
}

struct Resolved {
    pot: Potential,
    branch: BranchTag,
    label: String,
}

fn resolve(args: &PotentialArgs) -> anyhow::Result<Resolved> {
    let (spec, default_branch, label) = match (&args.catalog, &args.spec) {
        (Some(name), None) => {
            let fam = Family::from_name(name, args.param)?;
            (fam.spec(2.0), fam.default_branch(), fam.to_string())
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let spec: PotentialSpec = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            let branch = if spec.pole_at_zero { BranchTag::Upper } else { BranchTag::None };
            let p = spec.p;
            (PotentialSpec { p: args.p.unwrap_or(p), ..spec }, branch, path.display().to_string())
        }
        (None, None) => bail!("give a potential with --catalog or --spec"),
        (Some(_), Some(_)) => bail!("--catalog and --spec are exclusive"),
    };
    let spec = match (&args.catalog, args.p) {
        (Some(_), p) => PotentialSpec { p: p.unwrap_or(2.0), ..spec },
        (None, _) => spec,
    };
    Ok(Resolved { pot: Potential::new(spec)?, branch: args.branch.unwrap_or(default_branch), label })
}

fn create(dir: &Path, name: &str) -> anyhow::Result<(BufWriter<File>, String)> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    Ok((BufWriter::new(file), path.display().to_string()))
}

fn write_manifest(dir: &Path, mut manifest: RunManifest, start: Instant) -> anyhow::Result<()> {
    manifest.wall_time_s = start.elapsed().as_secs_f64();
    let (mut w, _) = create(dir, "manifest.json")?;
    io::write_json(&mut w, &manifest)?;
    w.flush()?;
    Ok(())
}

fn c(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn run_trace(args: &TraceArgs) -> anyhow::Result<i32> {
    let start = Instant::now();
    let Resolved { pot, branch, label } = resolve(&args.potential)?;
    let alpha = pot.minimum(args.pair.from)?;
    let beta = pot.minimum(args.pair.to)?;
    let opts = TraceOptions { h: args.h, eps_reach: args.eps_reach, tol: args.tol, ..Default::default() };
    let curve = geodesic::trace(&pot, alpha, beta, branch, &opts)?;
    let mut outputs = Vec::new();
    let mut verdicts = Map::new();

    let (mut w, name) = create(&args.out, "curve.csv")?;
    io::write_curve_csv(&mut w, &pot, &curve)?;
    w.flush()?;
    outputs.push(name);
    let (mut w, name) = create(&args.out, "curve.svg")?;
    io::write_svg(&mut w, &pot, &curve)?;
    w.flush()?;
    outputs.push(name);

    verdicts.insert("reached".into(), json!(curve.reached));
    verdicts.insert("outcome".into(), serde_json::to_value(curve.outcome)?);
    verdicts.insert("energy".into(), json!(curve.length));
    println!("potential    {label}, p = {}", pot.p());
    println!("from {alpha} to {beta} ({branch} branch)");
    println!("energy       {:.12}", curve.length);

    let code = if curve.reached {
        let traj = dynamics::reparametrize(&pot, &curve, &ReparamOptions { x_span: args.x_span, dx: args.dx })?;
        let profile = dynamics::residual_profile(&pot, &traj)?;
        let (eq, el) = (profile.max_equipartition(), profile.max_euler_lagrange());
        let (mut w, name) = create(&args.out, "trajectory.csv")?;
        io::write_trajectory_csv(&mut w, &pot, &traj)?;
        w.flush()?;
        outputs.push(name);
        verdicts.insert("equipartition_residual".into(), json!(eq));
        verdicts.insert("euler_lagrange_residual".into(), json!(el));
        println!("reached      yes");
        println!("equipartition residual  {eq:.3e}");
        println!("Euler-Lagrange residual {el:.3e}");
        if eq < args.tol_equipartition && el < args.tol_euler_lagrange {
            EXIT_OK
        } else {
            EXIT_CHECK
        }
    } else {
        println!("reached      no ({:?})", curve.outcome);
        EXIT_NEGATIVE
    };

    let manifest = RunManifest {
        command: "trace".into(),
        spec_hash: Some(io::spec_hash(pot.spec())?),
        parameters: json!({
            "potential": label, "p": pot.p(), "branch": branch, "alpha": c(alpha), "beta": c(beta),
            "h": args.h, "eps_reach": opts.eps_reach_for(beta), "tol": args.tol,
            "x_span": args.x_span, "dx": args.dx,
        }),
        outputs,
        verdicts,
        wall_time_s: 0.0,
    };
    write_manifest(&args.out, manifest, start)?;
    Ok(code)
}

fn run_minimize(args: &MinimizeArgs) -> anyhow::Result<i32> {
    let start = Instant::now();
    let (pot, p, label, hash) = if args.scalar_two_well {
        (WellPotential::scalar_two_well(), args.potential.p.unwrap_or(2.0), "scalar-two-well".to_string(), None)
    } else {
        let Resolved { pot, label, .. } = resolve(&args.potential)?;
        let (a, b) = (pot.minimum(args.from)?, pot.minimum(args.to)?);
        let radius = args.radius.unwrap_or(0.25 * (b - a).norm());
        let p = pot.p();
        let hash = io::spec_hash(pot.spec())?;
        (WellPotential::planar(pot, args.from, args.to, radius)?, p, label, Some(hash))
    };
    let grid = GridParams { x_min: args.x_min, x_max: args.x_max, intervals: args.intervals, ..Default::default() };
    let opts = MinimizeOptions {
        max_iter: args.max_iter,
        grad_tol: args.grad_tol,
        check_hypothesis: !args.skip_hypothesis,
        ..Default::default()
    };
    let res = action::minimize(&pot, p, &grid, None, &opts)?;

    let mut outputs = Vec::new();
    let (mut w, name) = create(&args.out, "path.csv")?;
    io::write_path_csv(&mut w, &pot, &res.path)?;
    w.flush()?;
    outputs.push(name);
    let (mut w, name) = create(&args.out, "log.jsonl")?;
    io::write_log_jsonl(&mut w, &res.log)?;
    w.flush()?;
    outputs.push(name);

    println!("potential   {label}, p = {p}");
    println!("action      {:.10}", res.action);
    println!("iterations  {}", res.iterations);
    println!("grad norm   {:.3e}", res.grad_norm);
    println!("converged   {}", if res.converged { "yes" } else { "no" });

    let mut verdicts = Map::new();
    verdicts.insert("action".into(), json!(res.action));
    verdicts.insert("converged".into(), json!(res.converged));
    verdicts.insert("iterations".into(), json!(res.iterations));
    let manifest = RunManifest {
        command: "minimize".into(),
        spec_hash: hash,
        parameters: json!({
            "potential": label, "p": p, "radius": pot.radius(), "grid": grid,
            "max_iter": opts.max_iter, "grad_tol": opts.grad_tol, "smoothing": opts.smoothing,
            "check_hypothesis": opts.check_hypothesis,
        }),
        outputs,
        verdicts,
        wall_time_s: 0.0,
    };
    write_manifest(&args.out, manifest, start)?;
    Ok(if res.converged { EXIT_OK } else { EXIT_NEGATIVE })
}

fn nearest_minimum(pot: &Potential, u: Complex64) -> Complex64 {
    *pot.minima()
        .iter()
        .min_by(|a, b| (*a - u).norm().total_cmp(&(*b - u).norm()))
        .expect("potentials have minima")
}

fn run_verify(args: &VerifyArgs) -> anyhow::Result<i32> {
    let Resolved { pot, branch, .. } = resolve(&args.potential)?;
    let file = File::open(&args.input).with_context(|| format!("opening {}", args.input.display()))?;
    let samples = io::read_trajectory_csv(std::io::BufReader::new(file))
        .with_context(|| format!("reading {}", args.input.display()))?;
    let alpha = nearest_minimum(&pot, samples[0].u);
    let beta = nearest_minimum(&pot, samples[samples.len() - 1].u);
    let traj = Trajectory::from_samples(pot.p(), samples, alpha, beta, branch)?;
    let profile = dynamics::residual_profile(&pot, &traj)?;
    let evaluated = profile.equipartition.iter().flatten().count();

    let rows = [
        ("distinct end minima", if alpha != beta { 0.0 } else { 1.0 }, 0.5),
        ("equipartition", profile.max_equipartition(), args.tol_equipartition),
        ("Euler-Lagrange", profile.max_euler_lagrange(), args.tol_euler_lagrange),
        ("interior samples", if evaluated > 0 { 0.0 } else { 1.0 }, 0.5),
    ];
    println!("{:<22} {:>12} {:>12}  result", "check", "value", "tolerance");
    let mut ok = true;
    for (name, value, tol) in rows {
        let pass = value < tol;
        ok &= pass;
        println!("{name:<22} {value:>12.3e} {tol:>12.1e}  {}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK })
}

fn run_sweep(args: &SweepArgs) -> anyhow::Result<i32> {
    let start = Instant::now();
    let &[lo, hi] = args.range.as_slice() else { bail!("--range takes two values") };
    let family = Family::from_name(&args.family, Some(0.5 * (lo + hi)))?;
    let opts = SweepOptions {
        from: args.from,
        to: args.to,
        width: args.width,
        trace: TraceOptions { h: args.h, ..Default::default() },
        ..Default::default()
    };
    let mut verdicts = Map::new();
    let mut outputs = Vec::new();
    let code = match analysis::existence_sweep(&family, (lo, hi), args.n_coarse, &opts) {
        Ok(report) => {
            let (mut w, name) = create(&args.out, "sweep.json")?;
            io::write_json(&mut w, &report)?;
            w.flush()?;
            outputs.push(name);
            println!("threshold  {:.6}", report.threshold_estimate);
            println!("bracket    [{:.6}, {:.6}]", report.bracket.0, report.bracket.1);
            verdicts.insert("threshold_estimate".into(), json!(report.threshold_estimate));
            verdicts.insert("bracket".into(), json!(report.bracket));
            EXIT_OK
        }
        Err(Error::NoTransition) => {
            println!("no transition in [{lo}, {hi}]");
            verdicts.insert("transition".into(), json!(false));
            EXIT_NEGATIVE
        }
        Err(e) => return Err(e.into()),
    };
    let manifest = RunManifest {
        command: "sweep".into(),
        spec_hash: None,
        parameters: json!({ "family": family.base_name(), "range": [lo, hi], "n_coarse": args.n_coarse, "options": opts }),
        outputs,
        verdicts,
        wall_time_s: 0.0,
    };
    write_manifest(&args.out, manifest, start)?;
    Ok(code)
}

fn run_energy(args: &EnergyArgs) -> anyhow::Result<i32> {
    let Resolved { pot, branch, .. } = resolve(&args.potential)?;
    let alpha = pot.minimum(args.pair.from)?;
    let beta = pot.minimum(args.pair.to)?;
    let e = dynamics::transition_energy(&pot, alpha, beta, branch)?;
    println!("{e:.12}");
    Ok(EXIT_OK)
}

fn run_catalog() -> anyhow::Result<i32> {
    let formulas = ["z^n - 1", "(1 - z^2)(z^2 + eps^2)", "(1 - z^2)(z - i eps)", "(z - 1)(z + a)/z"];
    for (name, formula) in FAMILY_NAMES.iter().zip(formulas) {
        let fam = Family::from_name(name, None)?;
        let minima: Vec<String> = fam.spec(2.0).minima.iter().map(|m| format!("{m:.4}")).collect();
        println!("{name:<14} f = {formula:<24} default {fam:<18} minima [{}]", minima.join(", "));
    }
    Ok(EXIT_OK)
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(raw) = std::env::var("HETERO_THREADS") {
        let n: usize = raw.trim().parse().with_context(|| format!("HETERO_THREADS = `{raw}` is not a count"))?;
        if n == 0 {
            bail!("HETERO_THREADS must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

/// Runs one parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Trace(a) => run_trace(a),
        Command::Minimize(a) => run_minimize(a),
        Command::Verify(a) => run_verify(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Energy(a) => run_energy(a),
        Command::Catalog => run_catalog(),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INPUT
        }
    }
}
