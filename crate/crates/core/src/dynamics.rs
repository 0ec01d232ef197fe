//! Physical-time trajectories from traced curves.
//!
//! Under the equipartition parametrization `|u_x|^p = W(u)` the weighted
//! arclength advances as `dl/dx = W(u)`, so a traced curve `z(l)` becomes a
//! solution `u(x) = z(l(x))` with `dx/dl = 1/W`. The anchor `x = 0` sits at
//! `l = L/2`. Both halves are integrated in the logarithmic variable
//! `σ = ln l` (resp. `ln(L − l)`), where the divergent tails become smooth.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesic::{CurvePoint, GeodesicCurve};
use crate::potential::{BranchTag, Potential};
use crate::quadrature;

/// Relative equipartition tolerance.
pub const TOL_EQUIPARTITION: f64 = 1e-4;
/// Normalized Euler–Lagrange residual tolerance.
pub const TOL_EULER_LAGRANGE: f64 = 1e-4;

/// Smallest `l` the tails are followed to before the remainder is closed
/// analytically.
const L_FLOOR: f64 = 1e-280;
/// Knot spacing in `σ` beyond the traced samples.
const TAIL_DSIGMA: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub x: f64,
    pub u: Complex64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Trajectory {
    pub p: f64,
    pub samples: Vec<TrajectorySample>,
    pub x_window: (f64, f64),
    /// Arclength value placed at `x = 0`.
    pub anchor: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub branch: BranchTag,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ReparamOptions {
    /// Samples cover `[−x_span, x_span]`.
    pub x_span: f64,
    /// Uniform sample spacing in `x`.
    pub dx: f64,
}

impl Default for ReparamOptions {
    fn default() -> Self {
        Self { x_span: 10.0, dx: 1e-3 }
    }
}

/// One half of the curve mapped to `x`, tabulated at knots in `σ`.
struct HalfMap<'a> {
    pot: &'a Potential,
    curve: &'a GeodesicCurve,
    /// `+1` for the `β` half, `−1` for the `α` half.
    side: f64,
    sigma: Vec<f64>,
    x: Vec<f64>,
    /// `x` at which the tail reaches the endpoint (finite only for `q < 2`).
    arrival: f64,
}

impl<'a> HalfMap<'a> {
    fn point(&self, sigma: f64) -> Result<CurvePoint> {
        if self.side < 0.0 {
            self.curve.point_at(self.pot, sigma.exp())
        } else {
            self.curve.point_before_end(self.pot, sigma.exp())
        }
    }

    /// `dx/dσ` (its magnitude; the sign is carried by `side`).
    fn rate(&self, sigma: f64) -> Result<f64> {
        let pt = self.point(sigma)?;
        let w = self.pot.w_shifted(pt.anchor, pt.offset)?;
        Ok(sigma.exp() / w)
    }

    fn increment(&self, s0: f64, s1: f64) -> Result<f64> {
        let mut err = None;
        let val: f64 = quadrature::integrate(s0, s1, 1, |s| {
            self.rate(s).unwrap_or_else(|e| {
                err = Some(e);
                0.0
            })
        });
        match err {
            Some(e) => Err(e),
            None => Ok(val),
        }
    }

    fn build(pot: &'a Potential, curve: &'a GeodesicCurve, side: f64, x_span: f64) -> Result<Self> {
        let length = curve.length;
        let half = 0.5 * length;
        // distances from the endpoint of this half, increasing toward the middle
        let mut dist: Vec<f64> = curve
            .samples
            .iter()
            .map(|s| if side < 0.0 { s.l } else { length - s.l })
            .filter(|d| *d > 0.0 && *d < half)
            .collect();
        dist.push(half);
        dist.sort_by(f64::total_cmp);
        dist.dedup();
        let mut sigma: Vec<f64> = dist.iter().map(|d| d.ln()).collect();

        // x at the knots, accumulated outward from the anchor
        let mut map = Self { pot, curve, side, sigma: Vec::new(), x: Vec::new(), arrival: f64::NEG_INFINITY };
        let n = sigma.len();
        let mut x = vec![0.0; n];
        for k in (0..n - 1).rev() {
            x[k] = x[k + 1] - map.increment(sigma[k], sigma[k + 1])?;
        }

        // follow the tail beyond the first traced sample
        let q = pot.q();
        let mut tail_s = Vec::new();
        let mut tail_x = Vec::new();
        let (mut s_cur, mut x_cur) = (sigma[0], x[0]);
        let mut arrival = f64::NEG_INFINITY;
        loop {
            if q >= 2.0 && x_cur < -x_span - 1.0 {
                break;
            }
            let s_next = s_cur - TAIL_DSIGMA;
            if s_next.exp() < L_FLOOR {
                if q < 2.0 {
                    // ∫₀^l dl'/(κ l')^{q/2} closes the convergent remainder
                    let end = map.curve_end();
                    let (_, df) = pot.f_and_derivative(end)?;
                    let kappa = 2.0 * df.norm();
                    let l = s_cur.exp();
                    let rest = kappa.powf(-q / 2.0) * l.powf(1.0 - q / 2.0) / (1.0 - q / 2.0);
                    arrival = x_cur - rest;
                }
                break;
            }
            let step = map.increment(s_next, s_cur)?;
            if !step.is_finite() {
                break;
            }
            s_cur = s_next;
            x_cur -= step;
            tail_s.push(s_cur);
            tail_x.push(x_cur);
        }
        tail_s.reverse();
        tail_x.reverse();
        tail_s.append(&mut sigma);
        tail_x.extend(x);
        map.sigma = tail_s;
        map.x = tail_x;
        map.arrival = arrival;
        Ok(map)
    }

    fn curve_end(&self) -> Complex64 {
        if self.side < 0.0 {
            self.curve.alpha
        } else {
            self.curve.beta
        }
    }

    /// Curve point at signed-outward time `xi ≤ 0` (i.e. `x = side·(−xi)`).
    fn point_at_time(&self, xi: f64) -> Result<Complex64> {
        let first = self.x[0];
        if xi <= first {
            return Ok(self.curve_end());
        }
        let k = match self.x.binary_search_by(|v| v.total_cmp(&xi)) {
            Ok(k) => return Ok(self.point(self.sigma[k])?.z()),
            Err(k) => k - 1,
        };
        let (s0, s1) = (self.sigma[k], self.sigma[k + 1]);
        let (x0, x1) = (self.x[k], self.x[k + 1]);
        let (mut lo, mut hi) = (s0, s1);
        let mut s = s0 + (s1 - s0) * (xi - x0) / (x1 - x0);
        for _ in 0..40 {
            let val = x0 + self.increment(s0, s)? - xi;
            if val.abs() <= 1e-14 * (1.0 + xi.abs()) {
                break;
            }
            if val > 0.0 {
                hi = s;
            } else {
                lo = s;
            }
            let mut next = s - val / self.rate(s)?;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - s).abs() < 1e-15 * (1.0 + s.abs()) {
                s = next;
                break;
            }
            s = next;
        }
        Ok(self.point(s)?.z())
    }
}

/// Converts a reached curve into a trajectory on a uniform `x` grid.
pub fn reparametrize(pot: &Potential, curve: &GeodesicCurve, opts: &ReparamOptions) -> Result<Trajectory> {
    if !curve.reached {
        return Err(Error::NotConnected);
    }
    if !(opts.x_span > 0.0 && opts.dx > 0.0) {
        return Err(Error::InvalidParameter("x_span and dx must be positive".into()));
    }
    let left = HalfMap::build(pot, curve, -1.0, opts.x_span)?;
    let right = HalfMap::build(pot, curve, 1.0, opts.x_span)?;
    let mid = curve.point_at(pot, 0.5 * curve.length)?.z();

    let steps = (opts.x_span / opts.dx).round() as i64;
    let mut samples = Vec::with_capacity(2 * steps as usize + 1);
    for j in -steps..=steps {
        let x = j as f64 * opts.dx;
        let u = match j.cmp(&0) {
            std::cmp::Ordering::Less => left.point_at_time(x)?,
            std::cmp::Ordering::Equal => mid,
            std::cmp::Ordering::Greater => right.point_at_time(-x)?,
        };
        samples.push(TrajectorySample { x, u });
    }
    Ok(Trajectory {
        p: pot.p(),
        x_window: (samples[0].x, samples[samples.len() - 1].x),
        samples,
        anchor: 0.5 * curve.length,
        alpha: curve.alpha,
        beta: curve.beta,
        branch: curve.branch,
    })
}

/// Finite-time arrival points `(x⁻, x⁺)` of a reparametrized curve; infinite
/// when the approach to the minimum takes infinite time (`p ≤ 2`).
pub fn arrival_times(pot: &Potential, curve: &GeodesicCurve, x_span: f64) -> Result<(f64, f64)> {
    let left = HalfMap::build(pot, curve, -1.0, x_span)?;
    let right = HalfMap::build(pot, curve, 1.0, x_span)?;
    Ok((left.arrival, -right.arrival))
}

/// First and second derivatives on a possibly nonuniform grid (3-point).
/// First and second `x`-derivatives at sample `j`: a five-point stencil where
/// the spacing is uniform, three points otherwise.
fn derivatives(s: &[TrajectorySample], j: usize) -> (Complex64, Complex64) {
    if j >= 2 && j + 2 < s.len() {
        let h = s[j + 1].x - s[j].x;
        let uniform = (j - 2..j + 2).all(|k| ((s[k + 1].x - s[k].x) - h).abs() <= 1e-9 * h);
        if uniform {
            let (m2, m1, c, p1, p2) = (s[j - 2].u, s[j - 1].u, s[j].u, s[j + 1].u, s[j + 2].u);
            let ux = (m2 - p2 + (p1 - m1) * 8.0) / (12.0 * h);
            let uxx = ((p1 + m1) * 16.0 - (p2 + m2) - c * 30.0) / (12.0 * h * h);
            return (ux, uxx);
        }
    }
    let (a, b, c) = (s[j - 1], s[j], s[j + 1]);
    let h1 = b.x - a.x;
    let h2 = c.x - b.x;
    let ux = a.u * (-h2 / (h1 * (h1 + h2))) + b.u * ((h2 - h1) / (h1 * h2)) + c.u * (h1 / (h2 * (h1 + h2)));
    let uxx = (a.u / (h1 * (h1 + h2)) - b.u / (h1 * h2) + c.u / (h2 * (h1 + h2))) * 2.0;
    (ux, uxx)
}

/// Per-sample diagnostics; `None` where a sample is not evaluated
/// (the two boundary samples and samples within the exclusion radius of a
/// minimum).
#[derive(Clone, Debug, Default)]
pub struct ResidualProfile {
    pub equipartition: Vec<Option<f64>>,
    pub euler_lagrange: Vec<Option<f64>>,
}

impl ResidualProfile {
    pub fn max_equipartition(&self) -> f64 {
        self.equipartition.iter().flatten().fold(0.0, |a, b| a.max(*b))
    }

    pub fn max_euler_lagrange(&self) -> f64 {
        self.euler_lagrange.iter().flatten().fold(0.0, |a, b| a.max(*b))
    }
}

/// Radius around minima excluded from the residual checks.
pub fn exclusion_radius(pot: &Potential) -> f64 {
    1e-3 * pot.min_root_separation()
}

/// Equipartition and Euler–Lagrange residuals at every interior sample.
pub fn residual_profile(pot: &Potential, traj: &Trajectory) -> Result<ResidualProfile> {
    let n = traj.samples.len();
    let mut profile = ResidualProfile { equipartition: vec![None; n], euler_lagrange: vec![None; n] };
    if n < 5 {
        return Ok(profile);
    }
    let p = traj.p;
    let radius = exclusion_radius(pot);
    for j in 1..n - 1 {
        let u = traj.samples[j].u;
        if pot.minima().iter().any(|m| (u - m).norm() < radius) {
            continue;
        }
        let (ux, uxx) = derivatives(&traj.samples, j);
        let (f, df) = pot.f_and_derivative(u)?;
        let w = f.norm().powf(pot.q());
        let speed2 = ux.norm_sqr();
        profile.equipartition[j] = Some((speed2.powf(0.5 * p) - w).abs() / w.max(1e-12));

        let forcing = f * df.conj();
        let lhs = uxx * (p * speed2) + uxx.conj() * ux * ux * (p - 2.0) - forcing * (2.0 * speed2.powf(3.0 - p));
        profile.euler_lagrange[j] = Some(lhs.norm() / (1.0 + forcing.norm()));
    }
    Ok(profile)
}

/// Largest normalized Euler–Lagrange residual over the interior samples.
pub fn el_residual(pot: &Potential, traj: &Trajectory) -> Result<f64> {
    Ok(residual_profile(pot, traj)?.max_euler_lagrange())
}

/// Largest relative equipartition residual over the interior samples.
pub fn equipartition_residual(pot: &Potential, traj: &Trajectory) -> Result<f64> {
    Ok(residual_profile(pot, traj)?.max_equipartition())
}

/// Total action of the connection, `|g(β) − g(α)|`.
pub fn transition_energy(pot: &Potential, alpha: Complex64, beta: Complex64, branch: BranchTag) -> Result<f64> {
    Ok((pot.g(beta, branch)? - pot.g(alpha, branch)?).norm())
}

fn interpolate(traj: &Trajectory, y: f64) -> Result<Complex64> {
    let s = &traj.samples;
    if !(y >= s[0].x && y <= s[s.len() - 1].x) {
        return Err(Error::InvalidParameter(format!(
            "y = {y} outside the trajectory window [{}, {}]",
            s[0].x,
            s[s.len() - 1].x
        )));
    }
    let k = s.partition_point(|v| v.x <= y).clamp(1, s.len() - 1);
    let (a, b) = (s[k - 1], s[k]);
    let t = if b.x > a.x { (y - a.x) / (b.x - a.x) } else { 0.0 };
    Ok(a.u + (b.u - a.u) * t)
}

/// Action accumulated up to `y`, in closed form: `|g(u(y)) − g(α)|`.
pub fn partial_energy(pot: &Potential, traj: &Trajectory, y: f64) -> Result<f64> {
    let u = interpolate(traj, y)?;
    Ok((pot.g(u, traj.branch)? - pot.g(traj.alpha, traj.branch)?).norm())
}

/// Trapezoid quadrature of `|u_x|^p/p + W(u)/q` from the window start to `y`.
pub fn action_integral(pot: &Potential, traj: &Trajectory, y: f64) -> Result<f64> {
    let s = &traj.samples;
    interpolate(traj, y)?;
    let (p, q) = (traj.p, pot.q());
    let density = |j: usize| -> Result<f64> {
        let ux = if j == 0 {
            (s[1].u - s[0].u) / (s[1].x - s[0].x)
        } else if j == s.len() - 1 {
            (s[j].u - s[j - 1].u) / (s[j].x - s[j - 1].x)
        } else {
            derivatives(s, j).0
        };
        Ok(ux.norm().powf(p) / p + pot.w(s[j].u)? / q)
    };
    let mut total = 0.0;
    let mut prev = density(0)?;
    for j in 1..s.len() {
        if s[j].x > y {
            let cur = density(j)?;
            let t = (y - s[j - 1].x) / (s[j].x - s[j - 1].x);
            let at_y = prev + (cur - prev) * t;
            total += 0.5 * (prev + at_y) * (y - s[j - 1].x);
            break;
        }
        let cur = density(j)?;
        total += 0.5 * (prev + cur) * (s[j].x - s[j - 1].x);
        prev = cur;
    }
    Ok(total)
}

impl Trajectory {
    /// Wraps externally produced samples (e.g. read back from CSV).
    pub fn from_samples(
        p: f64,
        samples: Vec<TrajectorySample>,
        alpha: Complex64,
        beta: Complex64,
        branch: BranchTag,
    ) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidParameter("a trajectory needs at least two samples".into()));
        }
        if samples.windows(2).any(|w| !(w[1].x > w[0].x)) {
            return Err(Error::InvalidParameter("x must be strictly increasing".into()));
        }
        Ok(Self {
            p,
            x_window: (samples[0].x, samples[samples.len() - 1].x),
            samples,
            anchor: f64::NAN,
            alpha,
            beta,
            branch,
        })
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.samples.iter().map(|s| s.u).collect()
    }
}
