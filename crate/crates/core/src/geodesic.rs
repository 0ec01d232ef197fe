//! Connection curves as preimages of straight segments under `g`.
//!
//! Along a connection from `α` to `β` the weighted arclength `l` satisfies
//! `g(z(l)) = g(α) + C·l` with `C` the unit direction of `g(β) − g(α)`, so the
//! curve solves `dz/dl = C / f(z)` for `l ∈ [0, L]`, `L = |g(β) − g(α)|`.
//! The right-hand side is singular at both endpoints (simple zeros of `f`), so
//! the first and last arcs of length `δ = 1e-6·L` are solved from the exact
//! local relation `g(α + t) − g(α) = C·l` instead of being integrated.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{BranchTag, Potential};
use crate::rk::{self, Flow, StepControl};

/// Tracing parameters. Defaults follow the documented tolerances.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TraceOptions {
    /// Largest step in `l`.
    pub h: f64,
    /// Reach tolerance; `None` means `1e-5·(1 + |β|)`.
    pub eps_reach: Option<f64>,
    /// Local error target of the stepper, relative to `1 + |z|`.
    pub tol: f64,
    /// Length of the locally solved end arcs, as a fraction of `L`.
    pub start_fraction: f64,
    /// Foreign-zero capture radius, as a fraction of the smallest root separation.
    pub capture_fraction: f64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self { h: 1e-2, eps_reach: None, tol: 1e-10, start_fraction: 1e-6, capture_fraction: 1e-3 }
    }
}

impl TraceOptions {
    pub fn eps_reach_for(&self, beta: Complex64) -> f64 {
        self.eps_reach.unwrap_or(1e-5 * (1.0 + beta.norm()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub l: f64,
    pub z: Complex64,
}

/// How a trace ended.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TraceOutcome {
    /// Landed on `β`; `gap` is the distance between the integrated point and
    /// the exact local preimage at `l = L − δ`.
    Reached { gap: f64 },
    /// Came within the capture radius of another zero of `f`.
    Captured { root: Complex64, l: f64 },
    /// Ran the full length without landing on `β`.
    Missed { closest: f64 },
}

/// A traced connection candidate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeodesicCurve {
    pub alpha: Complex64,
    pub beta: Complex64,
    /// Unit phase `C = (g(β) − g(α)) / L`.
    pub phase: Complex64,
    /// Transition energy `L = |g(β) − g(α)|`.
    pub length: f64,
    pub samples: Vec<CurveSample>,
    pub branch: BranchTag,
    pub reached: bool,
    pub outcome: TraceOutcome,
    pub options: TraceOptions,
}

/// Where a point of the curve sits: `z = anchor + offset`, with the offset
/// kept separately so that `f` can be evaluated to full relative precision
/// near the endpoints.
#[derive(Clone, Copy, Debug)]
pub struct CurvePoint {
    pub anchor: Complex64,
    pub offset: Complex64,
}

impl CurvePoint {
    pub fn z(&self) -> Complex64 {
        self.anchor + self.offset
    }
}

/// Unit phase and length of the segment `[g(α), g(β)]`.
pub fn phase_and_length(
    pot: &Potential,
    alpha: Complex64,
    beta: Complex64,
    branch: BranchTag,
) -> Result<(Complex64, f64)> {
    let diff = pot.g(beta, branch)? - pot.g(alpha, branch)?;
    let length = diff.norm();
    if length < 1e-12 || alpha == beta {
        return Err(Error::DegenerateSegment(length));
    }
    Ok((diff / length, length))
}

/// Solves `g(anchor + t) − g(anchor) = target` for `t` by Newton's method.
fn solve_increment(pot: &Potential, anchor: Complex64, target: Complex64, guess: Complex64) -> Result<Complex64> {
    let mut t = guess;
    for _ in 0..60 {
        let resid = pot.g_increment(anchor, t)? - target;
        let slope = pot.f_shifted(anchor, t)?;
        if slope.norm() == 0.0 {
            break;
        }
        let step = resid / slope;
        t -= step;
        if step.norm() <= 1e-15 * t.norm().max(1e-300) {
            break;
        }
    }
    Ok(t)
}

/// The two exact local preimages of `g(root) + target` next to a simple zero.
fn local_preimages(pot: &Potential, root: Complex64, target: Complex64) -> Result<[Complex64; 2]> {
    let (_, df) = pot.f_and_derivative(root)?;
    if df.norm() == 0.0 {
        return Err(Error::StartDegenerate(root));
    }
    let lead = (target * 2.0 / df).sqrt();
    Ok([solve_increment(pot, root, target, lead)?, solve_increment(pot, root, target, -lead)?])
}

struct Leg {
    samples: Vec<CurveSample>,
    outcome: TraceOutcome,
}

fn run_leg(
    pot: &Potential,
    alpha: Complex64,
    beta: Complex64,
    phase: Complex64,
    length: f64,
    start: Complex64,
    opts: &TraceOptions,
) -> Result<Leg> {
    let delta = opts.start_fraction * length;
    let capture = opts.capture_fraction * pot.min_root_separation();
    let foreign: Vec<Complex64> = pot
        .roots()
        .iter()
        .copied()
        .filter(|r| (*r - alpha).norm() > capture && (*r - beta).norm() > capture)
        .collect();
    let mut samples = vec![CurveSample { l: 0.0, z: alpha }, CurveSample { l: delta, z: alpha + start }];
    let mut captured = None;
    let ctrl = StepControl { tol: opts.tol, h_max: opts.h, ..Default::default() };
    let rhs = |_: f64, z: Complex64| pot.f(z).map(|f| phase / f);
    let l_end = length - delta;

    // Newton-correct each accepted state so that g(z_new) − g(z_prev) = C·Δl;
    // the increments telescope and g(z(l)) = g(α) + C·l holds along the curve.
    let project = |l0: f64, z0: Complex64, l1: f64, z1: Complex64| {
        solve_increment(pot, z0, phase * (l1 - l0), z1 - z0).map(|t| z0 + t)
    };
    let result = rk::integrate_projected(rhs, delta, alpha + start, l_end, ctrl, project, |l, z| {
        samples.push(CurveSample { l, z });
        if let Some(r) = foreign.iter().find(|r| (z - **r).norm() < capture) {
            captured = Some(TraceOutcome::Captured { root: *r, l });
            return Flow::Stop;
        }
        Flow::Continue
    });
    if let Some(outcome) = captured {
        return Ok(Leg { samples, outcome });
    }
    if let Err(Error::StepFailure { l }) = result {
        // the stepper stalls only next to a zero of f
        let z = samples.last().map_or(alpha, |s| s.z);
        let root = foreign
            .iter()
            .chain([beta].iter())
            .min_by(|a, b| (z - **a).norm().total_cmp(&(z - **b).norm()))
            .copied()
            .unwrap_or(beta);
        return Ok(Leg { samples, outcome: TraceOutcome::Captured { root, l } });
    }
    result?;

    let z_end = samples.last().map_or(alpha, |s| s.z);
    let ends = local_preimages(pot, beta, -phase * delta)?;
    let gap = ends.iter().map(|e| (z_end - (beta + *e)).norm()).fold(f64::INFINITY, f64::min);
    if gap < opts.eps_reach_for(beta) {
        samples.push(CurveSample { l: length, z: beta });
        return Ok(Leg { samples, outcome: TraceOutcome::Reached { gap } });
    }

    // Not at β: finish the last arc by integration where f is regular.
    let _ = rk::integrate_projected(rhs, l_end, z_end, length, ctrl, project, |l, z| {
        samples.push(CurveSample { l, z });
        Flow::Continue
    });
    let closest = samples.iter().map(|s| (s.z - beta).norm()).fold(f64::INFINITY, f64::min);
    Ok(Leg { samples, outcome: TraceOutcome::Missed { closest } })
}

/// Traces the preimage of `[g(α), g(β)]` starting at `α`.
///
/// Both local directions leaving `α` map onto the same initial ray in the
/// `g`-plane; each is followed and the one landing on `β` is returned. If
/// neither does, the candidate that came closest to `β` is returned with
/// `reached = false`.
pub fn trace(
    pot: &Potential,
    alpha: Complex64,
    beta: Complex64,
    branch: BranchTag,
    opts: &TraceOptions,
) -> Result<GeodesicCurve> {
    if !(opts.h > 0.0) {
        return Err(Error::InvalidParameter(format!("step h must be positive, got {}", opts.h)));
    }
    let (phase, length) = phase_and_length(pot, alpha, beta, branch)?;
    let delta = opts.start_fraction * length;
    let starts = local_preimages(pot, alpha, phase * delta)?;

    let mut best: Option<Leg> = None;
    for start in starts {
        let leg = run_leg(pot, alpha, beta, phase, length, start, opts)?;
        best = Some(match best {
            None => leg,
            Some(prev) => {
                if rank(&leg.outcome, &leg.samples, beta) < rank(&prev.outcome, &prev.samples, beta) {
                    leg
                } else {
                    prev
                }
            }
        });
    }
    let leg = best.expect("two candidate legs");
    Ok(GeodesicCurve {
        alpha,
        beta,
        phase,
        length,
        reached: matches!(leg.outcome, TraceOutcome::Reached { .. }),
        samples: leg.samples,
        outcome: leg.outcome,
        branch,
        options: *opts,
    })
}

/// Ordering key: reached legs first (smallest gap), then closest approach.
fn rank(outcome: &TraceOutcome, samples: &[CurveSample], beta: Complex64) -> (u8, f64) {
    match outcome {
        TraceOutcome::Reached { gap } => (0, *gap),
        _ => (1, samples.iter().map(|s| (s.z - beta).norm()).fold(f64::INFINITY, f64::min)),
    }
}

/// Re-traces with the step divided by `factor`.
pub fn refine(pot: &Potential, curve: &GeodesicCurve, factor: u32) -> Result<GeodesicCurve> {
    if factor < 2 {
        return Err(Error::InvalidParameter(format!("refinement factor must be ≥ 2, got {factor}")));
    }
    let opts = TraceOptions { h: curve.options.h / factor as f64, ..curve.options };
    trace(pot, curve.alpha, curve.beta, curve.branch, &opts)
}

/// `max_k |Im((g(z_k) − g(α)) / (g(β) − g(α)))|` over the samples.
pub fn levelset_residual(pot: &Potential, curve: &GeodesicCurve) -> Result<f64> {
    let ga = pot.g(curve.alpha, curve.branch)?;
    let span = pot.g(curve.beta, curve.branch)? - ga;
    let mut worst: f64 = 0.0;
    for s in &curve.samples {
        worst = worst.max(((pot.g(s.z, curve.branch)? - ga) / span).im.abs());
    }
    Ok(worst)
}

impl GeodesicCurve {
    /// Builds a curve from externally supplied samples, e.g. to check a
    /// candidate that did not come from [`trace`].
    pub fn from_samples(
        pot: &Potential,
        samples: Vec<CurveSample>,
        branch: BranchTag,
    ) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidParameter("a curve needs at least two samples".into()));
        }
        let alpha = samples[0].z;
        let beta = samples[samples.len() - 1].z;
        let (phase, length) = phase_and_length(pot, alpha, beta, branch)?;
        Ok(Self {
            alpha,
            beta,
            phase,
            length,
            samples,
            branch,
            reached: true,
            outcome: TraceOutcome::Reached { gap: 0.0 },
            options: TraceOptions::default(),
        })
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.samples.iter().map(|s| s.z).collect()
    }

    /// Normalized segment position `s = l / L`.
    pub fn segment_parameter(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.l / self.length).collect()
    }

    /// The curve point at arclength `l`, solved from `g(z) = g(α) + C·l`
    /// relative to the nearest stored sample (or endpoint).
    pub fn point_at(&self, pot: &Potential, l: f64) -> Result<CurvePoint> {
        let n = self.samples.len();
        let l = l.clamp(0.0, self.length);
        if n < 4 {
            return Err(Error::InvalidParameter("curve too short to evaluate".into()));
        }
        let head = self.samples[1];
        if l <= head.l {
            if l == 0.0 {
                return Ok(CurvePoint { anchor: self.alpha, offset: Complex64::default() });
            }
            let guess = (head.z - self.alpha) * (l / head.l).sqrt();
            let t = solve_increment(pot, self.alpha, self.phase * l, guess)?;
            return Ok(CurvePoint { anchor: self.alpha, offset: t });
        }
        let tail = self.samples[n - 2];
        if self.reached && l >= tail.l {
            return self.point_before_end(pot, self.length - l);
        }
        let k = match self.samples.binary_search_by(|s| s.l.total_cmp(&l)) {
            Ok(k) => return Ok(CurvePoint { anchor: self.samples[k].z, offset: Complex64::default() }),
            Err(k) => k - 1,
        };
        let (a, b) = (self.samples[k], self.samples[k + 1]);
        let guess = hermite(pot, self.phase, a, b, l)? - a.z;
        let t = solve_increment(pot, a.z, self.phase * (l - a.l), guess)?;
        Ok(CurvePoint { anchor: a.z, offset: t })
    }

    /// The curve point at arclength `L − rem`. Taking the remaining length
    /// directly keeps full precision when `rem` is far below `ulp(L)`.
    pub fn point_before_end(&self, pot: &Potential, rem: f64) -> Result<CurvePoint> {
        let n = self.samples.len();
        let tail = self.samples[n - 2];
        let tail_rem = self.length - tail.l;
        if !self.reached || rem > tail_rem {
            return self.point_at(pot, self.length - rem);
        }
        if rem <= 0.0 {
            return Ok(CurvePoint { anchor: self.beta, offset: Complex64::default() });
        }
        let guess = (tail.z - self.beta) * (rem / tail_rem).sqrt();
        let t = solve_increment(pot, self.beta, -self.phase * rem, guess)?;
        Ok(CurvePoint { anchor: self.beta, offset: t })
    }

    /// Hausdorff distance between two traced curves, measuring each sample
    /// against the other curve's exact parametrization.
    pub fn hausdorff(&self, other: &GeodesicCurve, pot: &Potential) -> Result<f64> {
        Ok(one_sided(self, other, pot)?.max(one_sided(other, self, pot)?))
    }
}

fn hermite(pot: &Potential, phase: Complex64, a: CurveSample, b: CurveSample, l: f64) -> Result<Complex64> {
    let h = b.l - a.l;
    let s = (l - a.l) / h;
    let da = phase / pot.f(a.z)? * h;
    let db = phase / pot.f(b.z)? * h;
    let s2 = s * s;
    let s3 = s2 * s;
    Ok(a.z * (2.0 * s3 - 3.0 * s2 + 1.0) + da * (s3 - 2.0 * s2 + s) + b.z * (-2.0 * s3 + 3.0 * s2) + db * (s3 - s2))
}

fn one_sided(from: &GeodesicCurve, to: &GeodesicCurve, pot: &Potential) -> Result<f64> {
    let scale = to.length / from.length;
    let mut worst: f64 = 0.0;
    for s in &from.samples {
        let mut l = (s.l * scale).clamp(0.0, to.length);
        let mut d = f64::INFINITY;
        for _ in 0..3 {
            let z = to.point_at(pot, l)?.z();
            d = d.min((z - s.z).norm());
            let Ok(fz) = pot.f(z) else { break };
            if fz.norm() < 1e-12 {
                break;
            }
            let tangent = to.phase / fz;
            let shift = ((s.z - z) * tangent.conj()).re / tangent.norm_sqr();
            if shift.abs() < 1e-16 {
                break;
            }
            l = (l + shift).clamp(0.0, to.length);
        }
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Symmetric Hausdorff distance between two polylines.
pub fn polyline_hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    fn to_polyline(p: Complex64, line: &[Complex64]) -> f64 {
        if line.len() == 1 {
            return (p - line[0]).norm();
        }
        line.windows(2)
            .map(|w| {
                let d = w[1] - w[0];
                let len2 = d.norm_sqr();
                let t = if len2 == 0.0 { 0.0 } else { (((p - w[0]) * d.conj()).re / len2).clamp(0.0, 1.0) };
                (p - (w[0] + d * t)).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }
    let ab = a.iter().map(|p| to_polyline(*p, b)).fold(0.0, f64::max);
    let ba = b.iter().map(|p| to_polyline(*p, a)).fold(0.0, f64::max);
    ab.max(ba)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn triple_curve() -> (Potential, GeodesicCurve) {
        let pot = Family::TripleWell(3).potential(2.0).unwrap();
        let a = pot.minimum(0).unwrap();
        let b = pot.minimum(1).unwrap();
        let curve = trace(&pot, a, b, BranchTag::None, &TraceOptions::default()).unwrap();
        (pot, curve)
    }

    /// Positive root in (0, 1) of r⁴ − 4√3 r + 3 by bisection.
    fn bisector_radius() -> f64 {
        let h = |r: f64| r.powi(4) - 4.0 * 3f64.sqrt() * r + 3.0;
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if h(lo) * h(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn phase_and_length_examples() {
        let pot = Family::TripleWell(3).potential(2.0).unwrap();
        let (a, b) = (pot.minimum(0).unwrap(), pot.minimum(1).unwrap());
        let (phase, len) = phase_and_length(&pot, a, b, BranchTag::None).unwrap();
        assert!((len - 0.75 * 3f64.sqrt()).abs() < 1e-12);
        assert!((phase.norm() - 1.0).abs() < 1e-12);
        assert!(matches!(phase_and_length(&pot, a, a, BranchTag::None), Err(Error::DegenerateSegment(_))));

        let two = Family::TripleWell(2).potential(2.0).unwrap();
        let (_, len) = phase_and_length(&two, c(-1.0, 0.0), c(1.0, 0.0), BranchTag::None).unwrap();
        assert!((len - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn triple_well_crosses_bisector_at_known_radius() {
        let (pot, curve) = triple_curve();
        assert!(curve.reached, "{:?}", curve.outcome);
        // find the crossing of arg z = π/6 and interpolate along the exact curve
        let target = PI / 6.0;
        let k = curve.samples.windows(2).position(|w| (w[0].z.arg() - target) * (w[1].z.arg() - target) <= 0.0).unwrap();
        let (mut lo, mut hi) = (curve.samples[k].l, curve.samples[k + 1].l);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if curve.point_at(&pot, mid).unwrap().z().arg() < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let r = curve.point_at(&pot, lo).unwrap().z().norm();
        assert!((r - bisector_radius()).abs() < 1e-8, "r = {r}");
        assert!((bisector_radius() - 0.4383).abs() < 1e-4);
    }

    #[test]
    fn curve_invariants_hold() {
        let (pot, curve) = triple_curve();
        assert!((curve.phase.norm() - 1.0).abs() < 1e-12);
        assert_eq!(curve.samples[0].l, 0.0);
        assert_eq!(curve.samples.last().unwrap().l, curve.length);
        assert!(curve.samples.windows(2).all(|w| w[1].l > w[0].l));
        assert!((curve.samples.last().unwrap().z - curve.beta).norm() < 1e-5 * 2.0);
        let s = curve.segment_parameter();
        assert_eq!(s[0], 0.0);
        assert_eq!(*s.last().unwrap(), 1.0);

        let ga = pot.g(curve.alpha, BranchTag::None).unwrap();
        for w in curve.samples.windows(2) {
            let dg = pot.g_increment(w[0].z, w[1].z - w[0].z).unwrap();
            let speed = dg.norm() / (w[1].l - w[0].l);
            assert!((speed - 1.0).abs() < 1e-6, "speed {speed} at l={}", w[0].l);
        }
        let mut prev = -1.0;
        for smp in &curve.samples {
            let proj = ((pot.g(smp.z, BranchTag::None).unwrap() - ga) / curve.phase).re;
            assert!(proj > prev);
            assert!((proj - smp.l).abs() < 1e-6 * curve.length);
            prev = proj;
        }
        assert!(levelset_residual(&pot, &curve).unwrap() < 1e-7);
    }

    #[test]
    fn polar_identity_on_every_sample() {
        let (_, curve) = triple_curve();
        for s in &curve.samples {
            let (r, th) = (s.z.norm(), s.z.arg());
            let lhs = 4.0 * r * (th - PI / 3.0).cos() - r.powi(4) * (4.0 * th - PI / 3.0).cos() - 1.5;
            assert!(lhs.abs() < 1e-6, "{lhs:e} at {}", s.z);
        }
    }

    #[test]
    fn levelset_residual_examples() {
        let two = Family::TripleWell(2).potential(2.0).unwrap();
        let straight: Vec<_> = (0..=100)
            .map(|k| {
                let x = -1.0 + 2.0 * k as f64 / 100.0;
                CurveSample { l: (x - x.powi(3) / 3.0 + 2.0 / 3.0), z: c(x, 0.0) }
            })
            .collect();
        let curve = GeodesicCurve::from_samples(&two, straight.clone(), BranchTag::None).unwrap();
        assert!(levelset_residual(&two, &curve).unwrap() < 1e-15);

        let mut bent = curve.clone();
        for s in bent.samples.iter_mut().skip(1).take(99) {
            s.z += c(0.0, 0.01);
        }
        assert!(levelset_residual(&two, &bent).unwrap() > 1e-3);
    }

    #[test]
    fn refinement_is_stable() {
        let (pot, curve) = triple_curve();
        let fine = refine(&pot, &curve, 2).unwrap();
        assert!(fine.reached);
        assert!(fine.samples.len() > curve.samples.len());
        let d = curve.hausdorff(&fine, &pot).unwrap();
        assert!(d < 1e-8, "hausdorff {d:e}");
        assert!(matches!(refine(&pot, &curve, 1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn two_well_runs_along_the_real_axis() {
        let two = Family::TripleWell(2).potential(2.0).unwrap();
        let curve = trace(&two, c(-1.0, 0.0), c(1.0, 0.0), BranchTag::None, &TraceOptions::default()).unwrap();
        assert!(curve.reached);
        assert!(curve.samples.iter().all(|s| s.z.im.abs() < 1e-9));
    }

    #[test]
    fn cubic_below_threshold_is_not_reached() {
        let pot = Family::CubicIEps(0.3).potential(2.0).unwrap();
        let curve = trace(&pot, c(-1.0, 0.0), c(1.0, 0.0), BranchTag::None, &TraceOptions::default()).unwrap();
        assert!(!curve.reached, "{:?}", curve.outcome);
    }

    #[test]
    fn rational_upper_branch_stays_in_upper_half_plane() {
        let pot = Family::RationalA(0.5).potential(2.0).unwrap();
        let curve = trace(&pot, c(-0.5, 0.0), c(1.0, 0.0), BranchTag::Upper, &TraceOptions::default()).unwrap();
        assert!(curve.reached, "{:?}", curve.outcome);
        assert!(curve.samples.iter().all(|s| s.z.im >= 0.0));
        assert!(curve.samples.iter().any(|s| s.z.im > 0.1));
        assert!(levelset_residual(&pot, &curve).unwrap() < 1e-7);

        let fine = refine(&pot, &curve, 4).unwrap();
        assert_eq!(fine.branch, BranchTag::Upper);
        assert!(fine.reached);
    }

    #[test]
    fn start_at_double_zero_is_degenerate() {
        use crate::potential::PotentialSpec;
        let spec = PotentialSpec {
            roots: vec![c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
            pole_at_zero: false,
            leading_coeff: c(1.0, 0.0),
            p: 2.0,
            minima: vec![c(-1.0, 0.0)],
        };
        let pot = Potential::new(spec).unwrap();
        let res = trace(&pot, c(1.0, 0.0), c(-1.0, 0.0), BranchTag::None, &TraceOptions::default());
        assert!(matches!(res, Err(Error::StartDegenerate(_))));
    }

    #[test]
    fn polyline_hausdorff_basics() {
        let a = [c(0.0, 0.0), c(1.0, 0.0)];
        let b = [c(0.0, 0.1), c(0.5, 0.1), c(1.0, 0.1)];
        assert!((polyline_hausdorff(&a, &b) - 0.1).abs() < 1e-15);
        assert_eq!(polyline_hausdorff(&a, &a), 0.0);
    }
}
