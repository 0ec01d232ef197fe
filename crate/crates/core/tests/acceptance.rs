//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hetero::action::{self, ActionPath, GridParams, MinimizeOptions, WellPotential};
use hetero::analysis::{self, SweepOptions};
use hetero::dynamics::{self, ReparamOptions};
use hetero::geodesic::{self, polyline_hausdorff, GeodesicCurve, TraceOptions};
use hetero::{BranchTag, Family, Potential};

const POLAR_TOL: f64 = 1e-6;
const POLAR_TIME_S: f64 = 1.0;
const ENERGY_TOL: f64 = 1e-9;
const THRESHOLD: f64 = 0.68125;
const THRESHOLD_TOL: f64 = 1e-3;
const SWEEP_TIME_S: f64 = 30.0;
const MIRROR_TOL: f64 = 1e-6;
const MIRROR_ENERGY_TOL: f64 = 1e-8;
const CROSS_HAUSDORFF_TOL: f64 = 5e-3;
const CROSS_ACTION_TOL: f64 = 2e-3;
const SCALAR_ACTION_TOL: f64 = 1e-3;
const SCALAR_MID_TOL: f64 = 1e-3;
const RESIDUAL_TOL: f64 = 1e-4;
const GRADIENT_TOL: f64 = 1e-6;
const REFINE_TOL: f64 = 1e-7;

type Check = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn polar_identity() -> Outcome {
    let start = Instant::now();
    let pot = Family::TripleWell(3).potential(2.0).unwrap();
    let m = pot.minima().to_vec();
    let curve = geodesic::trace(&pot, m[0], m[1], BranchTag::None, &TraceOptions::default()).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let worst = curve
        .points()
        .iter()
        .map(|z| {
            let (r, t) = (z.norm(), z.arg());
            (4.0 * r * (t - PI / 3.0).cos() - r.powi(4) * (4.0 * t - PI / 3.0).cos() - 1.5).abs()
        })
        .fold(0.0, f64::max);
    Outcome {
        pass: curve.reached && worst < POLAR_TOL && elapsed < POLAR_TIME_S,
        detail: format!("max residual {worst:.2e} < {POLAR_TOL:e}, {} samples, runtime {elapsed:.3} s < {POLAR_TIME_S} s", curve.samples.len()),
    }
}

fn energy_identities() -> Outcome {
    let three = Family::TripleWell(3).potential(2.0).unwrap();
    let m = three.minima().to_vec();
    let c3 = geodesic::trace(&three, m[0], m[1], BranchTag::None, &TraceOptions::default()).unwrap();
    let two = Family::TripleWell(2).potential(2.0).unwrap();
    let n = two.minima().to_vec();
    let c2 = geodesic::trace(&two, n[1], n[0], BranchTag::None, &TraceOptions::default()).unwrap();
    let e3 = (c3.length - 0.75 * 3f64.sqrt()).abs();
    let e2 = (c2.length - 4.0 / 3.0).abs();
    Outcome {
        pass: c3.reached && c2.reached && e3 < ENERGY_TOL && e2 < ENERGY_TOL,
        detail: format!("triple well off by {e3:.1e}, two-well off by {e2:.1e} (tol {ENERGY_TOL:e})"),
    }
}

fn existence_threshold() -> Outcome {
    let start = Instant::now();
    let report = analysis::existence_sweep(&Family::CubicIEps(0.5), (0.3, 1.0), 15, &SweepOptions::default()).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let err = (report.threshold_estimate - THRESHOLD).abs();
    Outcome {
        pass: err < THRESHOLD_TOL && elapsed < SWEEP_TIME_S,
        detail: format!(
            "estimate {:.6} (|Δ| = {err:.1e} < {THRESHOLD_TOL:e}), runtime {elapsed:.2} s < {SWEEP_TIME_S} s",
            report.threshold_estimate
        ),
    }
}

fn branch_count() -> Outcome {
    let curves = analysis::enumerate_branches(0.5, &TraceOptions::default()).unwrap();
    if curves.len() != 2 {
        return Outcome { pass: false, detail: format!("{} connections instead of 2", curves.len()) };
    }
    let pot = Family::RationalA(0.5).potential(2.0).unwrap();
    let mirrored: Vec<_> = curves[1]
        .samples
        .iter()
        .map(|s| geodesic::CurveSample { l: s.l, z: s.z.conj() })
        .collect();
    let mirrored = GeodesicCurve::from_samples(&pot, mirrored, BranchTag::Upper).unwrap();
    let gap = curves[0].hausdorff(&mirrored, &pot).unwrap();
    let de = (curves[0].length - curves[1].length).abs();
    Outcome {
        pass: gap < MIRROR_TOL && de < MIRROR_ENERGY_TOL,
        detail: format!("2 connections, mirror distance {gap:.1e} < {MIRROR_TOL:e}, energy gap {de:.1e} < {MIRROR_ENERGY_TOL:e}"),
    }
}

fn cross_method() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for p in [1.5, 2.0, 3.0] {
        let pot = Family::TripleWell(3).potential(p).unwrap();
        let m = pot.minima().to_vec();
        let curve = geodesic::trace(&pot, m[0], m[1], BranchTag::None, &TraceOptions::default()).unwrap();
        let wells = WellPotential::planar(pot, 0, 1, 0.5).unwrap();
        let res = action::minimize(&wells, p, &GridParams::default(), None, &MinimizeOptions::default()).unwrap();
        let nodes: Vec<Complex64> = (0..res.path.len()).map(|i| Complex64::new(res.path.node(i)[0], res.path.node(i)[1])).collect();
        let h = polyline_hausdorff(&nodes, &curve.points());
        let da = (res.action - curve.length).abs();
        pass &= res.converged && h < CROSS_HAUSDORFF_TOL && da < CROSS_ACTION_TOL;
        parts.push(format!("p={p}: H={h:.1e} ΔA={da:.1e}{}", if res.converged { "" } else { " (not converged)" }));
    }
    Outcome { pass, detail: format!("{} (tol H < {CROSS_HAUSDORFF_TOL:e}, ΔA < {CROSS_ACTION_TOL:e})", parts.join(", ")) }
}

fn scalar_oracle() -> Outcome {
    let pot = WellPotential::scalar_two_well();
    let res = action::minimize(&pot, 2.0, &GridParams::default(), None, &MinimizeOptions::default()).unwrap();
    let mid = res.path.node(res.path.len() / 2)[0];
    let da = (res.action - 4.0 / 3.0).abs();
    Outcome {
        pass: res.converged && da < SCALAR_ACTION_TOL && mid.abs() < SCALAR_MID_TOL,
        detail: format!("action {:.6} (|Δ| = {da:.1e}), u(0) = {mid:.1e}, {} iterations", res.action, res.iterations),
    }
}

/// Every reached connection of the four families at their default parameters.
fn catalog_connections(p: f64) -> Vec<(String, Potential, GeodesicCurve)> {
    let mut out = Vec::new();
    let families = [Family::TripleWell(2), Family::TripleWell(3), Family::QuarticEps(1.0), Family::CubicIEps(1.0)];
    for fam in families {
        let pot = fam.potential(p).unwrap();
        let m = pot.minima().to_vec();
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                let curve = geodesic::trace(&pot, m[i], m[j], BranchTag::None, &TraceOptions::default()).unwrap();
                if curve.reached {
                    out.push((format!("{fam} {i}→{j}"), pot.clone(), curve));
                }
            }
        }
    }
    let pot = Family::RationalA(0.5).potential(p).unwrap();
    for branch in [BranchTag::Upper, BranchTag::Lower] {
        let curve = geodesic::trace(&pot, pot.minima()[0], pot.minima()[1], branch, &TraceOptions::default()).unwrap();
        out.push((format!("rational-a(0.5) {branch}"), pot.clone(), curve));
    }
    out
}

fn residual_suite() -> Outcome {
    let (mut worst_eq, mut worst_el, mut count) = (0.0f64, 0.0f64, 0);
    let mut failures = Vec::new();
    for p in [1.5, 2.0, 3.0] {
        for (name, pot, curve) in catalog_connections(p) {
            let traj = dynamics::reparametrize(&pot, &curve, &ReparamOptions::default()).unwrap();
            let profile = dynamics::residual_profile(&pot, &traj).unwrap();
            let (eq, el) = (profile.max_equipartition(), profile.max_euler_lagrange());
            worst_eq = worst_eq.max(eq);
            worst_el = worst_el.max(el);
            count += 1;
            if !(eq < RESIDUAL_TOL && el < RESIDUAL_TOL) {
                failures.push(format!("{name} p={p}"));
            }
        }
    }
    Outcome {
        pass: failures.is_empty() && count > 0,
        detail: format!(
            "{count} connections, worst equipartition {worst_eq:.1e}, worst Euler-Lagrange {worst_el:.1e} (tol {RESIDUAL_TOL:e}){}",
            if failures.is_empty() { String::new() } else { format!("; failing: {}", failures.join(", ")) }
        ),
    }
}

fn gradient_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for k in 0..20 {
        let p = [1.5, 2.0, 3.0][k % 3];
        let pot = if k % 2 == 0 {
            WellPotential::scalar_two_well()
        } else {
            WellPotential::planar(Family::TripleWell(3).potential(p).unwrap(), 0, 1, 0.5).unwrap()
        };
        let grid = GridParams { x_min: -3.0, x_max: 3.0, intervals: 30, ..Default::default() };
        let mut path = ActionPath::initial(&pot, p, &grid).unwrap();
        let n = path.dim;
        let end = path.nodes.len() - n;
        for v in path.nodes[n..end].iter_mut() {
            *v += rng.gen_range(-0.3..0.3);
        }
        let exact = action::action_grad(&path, &pot);
        let h = 1e-6;
        let mut err = 0.0f64;
        for c in n..path.nodes.len() - n {
            let (mut a, mut b) = (path.clone(), path.clone());
            a.nodes[c] += h;
            b.nodes[c] -= h;
            let fd = (action::action_eval(&a, &pot) - action::action_eval(&b, &pot)) / (2.0 * h);
            err = err.max((fd - exact[c]).abs());
        }
        let scale = exact.iter().fold(0.0f64, |m, g| m.max(g.abs()));
        worst = worst.max(err / scale);
    }
    Outcome { pass: worst < GRADIENT_TOL, detail: format!("20 paths, worst relative error {worst:.1e} < {GRADIENT_TOL:e}") }
}

fn refinement() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for (_, pot, curve) in catalog_connections(2.0) {
        let r2 = geodesic::refine(&pot, &curve, 2).unwrap();
        let r4 = geodesic::refine(&pot, &curve, 4).unwrap();
        worst = worst.max(curve.hausdorff(&r2, &pot).unwrap()).max(curve.hausdorff(&r4, &pot).unwrap());
        count += 1;
    }
    Outcome { pass: worst < REFINE_TOL, detail: format!("{count} curves, worst Hausdorff {worst:.1e} < {REFINE_TOL:e}") }
}

fn main() {
    let criteria: [Check; 9] = [
        ("triple-well polar identity", polar_identity),
        ("energy identities", energy_identities),
        ("existence threshold", existence_threshold),
        ("two mirror connections", branch_count),
        ("cross-method agreement", cross_method),
        ("scalar two-well oracle", scalar_oracle),
        ("residual suite", residual_suite),
        ("action gradient", gradient_check),
        ("step refinement", refinement),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        if !outcome.pass {
            failed += 1;
        }
        println!("[{}] {} {name}: {}", if outcome.pass { "PASS" } else { "FAIL" }, k + 1, outcome.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
