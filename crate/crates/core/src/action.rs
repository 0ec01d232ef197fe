//! Direct minimization of the discrete action
//!
//! ```text
//! A_p(u) = Σ_i [ |(u_{i+1} − u_i)/Δx|^p / p + (W(u_i) + W(u_{i+1})) / (2q) ] · Δx
//! ```
//!
//! over paths in `R^N` pinned at the two minima, with the nodes outside a
//! window `[i⁻, i⁺]` confined to balls of radius `R/2` around `a⁻` and `a⁺`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{conjugate_exponent, Potential, SINGULAR_GUARD};

/// A nonnegative potential on `R^N` with its gradient.
pub trait Landscape: Send + Sync {
    fn dim(&self) -> usize;
    fn value(&self, u: &[f64]) -> f64;
    fn gradient(&self, u: &[f64], out: &mut [f64]);

    /// Mean diagonal of the Hessian, used only to scale descent directions.
    fn curvature(&self, u: &[f64]) -> f64 {
        let n = self.dim();
        let h = 1e-6 * (1.0 + u.iter().fold(0.0f64, |a, b| a.max(b.abs())));
        let (mut x, mut gp, mut gm) = (u.to_vec(), vec![0.0; n], vec![0.0; n]);
        let mut sum = 0.0;
        for d in 0..n {
            x[d] = u[d] + h;
            self.gradient(&x, &mut gp);
            x[d] = u[d] - h;
            self.gradient(&x, &mut gm);
            x[d] = u[d];
            sum += (gp[d] - gm[d]) / (2.0 * h);
        }
        sum / n as f64
    }
}

/// `W(u) = (1 − u²)²` on the line.
#[derive(Clone, Copy, Debug, Default)]
pub struct ScalarTwoWell;

impl Landscape for ScalarTwoWell {
    fn dim(&self) -> usize {
        1
    }

    fn value(&self, u: &[f64]) -> f64 {
        (1.0 - u[0] * u[0]).powi(2)
    }

    fn gradient(&self, u: &[f64], out: &mut [f64]) {
        out[0] = -4.0 * u[0] * (1.0 - u[0] * u[0]);
    }
}

/// `W = |f|^q` of a planar potential, seen as a function on `R²`.
#[derive(Clone, Debug)]
pub struct PlanarLandscape {
    pot: Potential,
}

impl PlanarLandscape {
    pub fn new(pot: Potential) -> Self {
        Self { pot }
    }

    pub fn potential(&self) -> &Potential {
        &self.pot
    }
}

impl Landscape for PlanarLandscape {
    fn dim(&self) -> usize {
        2
    }

    fn value(&self, u: &[f64]) -> f64 {
        self.pot.w(num_complex::Complex64::new(u[0], u[1])).unwrap_or(f64::INFINITY)
    }

    fn gradient(&self, u: &[f64], out: &mut [f64]) {
        let z = num_complex::Complex64::new(u[0], u[1]);
        // |∇W| = q |f|^{q−1} |f'| → 0 at a zero of f for every q > 1
        let g = match self.pot.grad_w(z) {
            Ok(g) => g,
            Err(_) if self.pot.f(z).map(|f| f.norm() < SINGULAR_GUARD).unwrap_or(false) => [0.0, 0.0],
            Err(_) => [f64::NAN, f64::NAN],
        };
        out[..2].copy_from_slice(&g);
    }

    fn curvature(&self, u: &[f64]) -> f64 {
        // ΔW = q² |f|^{q−2} |f'|² for holomorphic f
        let z = num_complex::Complex64::new(u[0], u[1]);
        match self.pot.f_and_derivative(z) {
            Ok((f, df)) => {
                let q = self.pot.q();
                0.5 * q * q * f.norm().max(SINGULAR_GUARD).powf(q - 2.0) * df.norm_sqr()
            }
            Err(_) => 0.0,
        }
    }
}

type ValueFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradFn = dyn Fn(&[f64], &mut [f64]) + Send + Sync;

/// A landscape given by closures.
pub struct FnLandscape {
    dim: usize,
    value: Box<ValueFn>,
    gradient: Box<GradFn>,
}

impl FnLandscape {
    pub fn new(
        dim: usize,
        value: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
    ) -> Self {
        Self { dim, value: Box::new(value), gradient: Box::new(gradient) }
    }
}

impl Landscape for FnLandscape {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, u: &[f64]) -> f64 {
        (self.value)(u)
    }

    fn gradient(&self, u: &[f64], out: &mut [f64]) {
        (self.gradient)(u, out)
    }
}

/// A landscape together with its two minima and the monotonicity radius `R`.
pub struct WellPotential {
    landscape: Box<dyn Landscape>,
    minus: Vec<f64>,
    plus: Vec<f64>,
    radius: f64,
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

impl WellPotential {
    pub fn new(landscape: impl Landscape + 'static, minus: Vec<f64>, plus: Vec<f64>, radius: f64) -> Result<Self> {
        let n = landscape.dim();
        if n == 0 || minus.len() != n || plus.len() != n {
            return Err(Error::InvalidParameter("minima must match the landscape dimension".into()));
        }
        let sep = dist(&minus, &plus);
        if !(radius > 0.0 && radius < sep) {
            return Err(Error::InvalidParameter(format!("need 0 < R < |a⁺ − a⁻| = {sep}, got R = {radius}")));
        }
        for a in [&minus, &plus] {
            let w = landscape.value(a);
            if w.abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!("W({a:?}) = {w:e} is not zero")));
            }
        }
        Ok(Self { landscape: Box::new(landscape), minus, plus, radius })
    }

    /// The scalar two-well `(1 − u²)²` with `a± = ±1`, `R = 1/2`.
    pub fn scalar_two_well() -> Self {
        Self::new(ScalarTwoWell, vec![-1.0], vec![1.0], 0.5).expect("valid built-in")
    }

    /// Two minima of a planar potential, viewed on `R²`.
    pub fn planar(pot: Potential, from: usize, to: usize, radius: f64) -> Result<Self> {
        let a = pot.minimum(from)?;
        let b = pot.minimum(to)?;
        Self::new(PlanarLandscape::new(pot), vec![a.re, a.im], vec![b.re, b.im], radius)
    }

    pub fn dim(&self) -> usize {
        self.minus.len()
    }

    pub fn minus(&self) -> &[f64] {
        &self.minus
    }

    pub fn plus(&self) -> &[f64] {
        &self.plus
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn value(&self, u: &[f64]) -> f64 {
        self.landscape.value(u)
    }

    pub fn gradient(&self, u: &[f64], out: &mut [f64]) {
        self.landscape.gradient(u, out)
    }

    pub fn curvature(&self, u: &[f64]) -> f64 {
        self.landscape.curvature(u)
    }
}

/// Uniform grid and constraint window.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GridParams {
    pub x_min: f64,
    pub x_max: f64,
    /// Number of intervals `M`; nodes are `0..=M`.
    pub intervals: usize,
    /// Window `(i⁻, i⁺)` as fractions of `M`.
    pub window: (f64, f64),
}

impl Default for GridParams {
    fn default() -> Self {
        Self { x_min: -8.0, x_max: 8.0, intervals: 1600, window: (0.15, 0.85) }
    }
}

/// A discretized path `u_0 … u_M` in `R^N`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionPath {
    pub p: f64,
    pub dim: usize,
    pub x0: f64,
    pub dx: f64,
    /// Node coordinates, node-major.
    pub nodes: Vec<f64>,
    pub window: (usize, usize),
}

impl ActionPath {
    /// Linear interpolation from `a⁻` at `i⁻` to `a⁺` at `i⁺`, constant outside.
    pub fn initial(pot: &WellPotential, p: f64, grid: &GridParams) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("p must be > 1, got {p}")));
        }
        let m = grid.intervals;
        if m < 4 || !(grid.x_max > grid.x_min) {
            return Err(Error::InvalidParameter("grid needs x_max > x_min and at least 4 intervals".into()));
        }
        let lo = ((grid.window.0 * m as f64).round() as usize).clamp(1, m - 2);
        let hi = ((grid.window.1 * m as f64).round() as usize).clamp(lo + 1, m - 1);
        let n = pot.dim();
        let mut nodes = Vec::with_capacity((m + 1) * n);
        for i in 0..=m {
            let t = ((i as f64 - lo as f64) / (hi - lo) as f64).clamp(0.0, 1.0);
            for d in 0..n {
                nodes.push(pot.minus[d] + t * (pot.plus[d] - pot.minus[d]));
            }
        }
        Ok(Self { p, dim: n, x0: grid.x_min, dx: (grid.x_max - grid.x_min) / m as f64, nodes, window: (lo, hi) })
    }

    pub fn len(&self) -> usize {
        self.nodes.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    /// Whether every node outside the window lies in its `R/2` ball.
    pub fn satisfies_constraints(&self, pot: &WellPotential) -> bool {
        let half = 0.5 * pot.radius * (1.0 + 1e-12);
        (0..=self.window.0).all(|i| dist(self.node(i), &pot.minus) <= half)
            && (self.window.1..self.len()).all(|i| dist(self.node(i), &pot.plus) <= half)
    }

    /// Radially projects nodes outside the window back onto their balls.
    fn project(&mut self, pot: &WellPotential) {
        let half = 0.5 * pot.radius;
        let n = self.dim;
        let len = self.len();
        for i in (0..=self.window.0).chain(self.window.1..len) {
            let center = if i <= self.window.0 { &pot.minus } else { &pot.plus };
            let node = &mut self.nodes[i * n..(i + 1) * n];
            let r = dist(node, center);
            if r > half {
                for d in 0..n {
                    node[d] = center[d] + (node[d] - center[d]) * half / r;
                }
            }
        }
    }
}

/// `|v|^p/p` and its gradient factor `|v|^{p−2}`, optionally smoothed as
/// `(|v|² + μ²)^{p/2}`.
fn kinetic(v2: f64, p: f64, mu: f64) -> (f64, f64) {
    let s = v2 + mu * mu;
    if s == 0.0 {
        return (0.0, 0.0);
    }
    (s.powf(0.5 * p) / p, s.powf(0.5 * p - 1.0))
}

/// Per-interval contributions to the action.
fn interval_terms(path: &ActionPath, pot: &WellPotential, mu: f64) -> Vec<f64> {
    let (n, dx, p) = (path.dim, path.dx, path.p);
    let q = conjugate_exponent(p);
    let w: Vec<f64> = (0..path.len()).map(|i| pot.value(path.node(i))).collect();
    (0..path.len() - 1)
        .map(|i| {
            let v2: f64 = (0..n).map(|d| ((path.nodes[(i + 1) * n + d] - path.nodes[i * n + d]) / dx).powi(2)).sum();
            (kinetic(v2, p, mu).0 + (w[i] + w[i + 1]) / (2.0 * q)) * dx
        })
        .collect()
}

fn eval_with(path: &ActionPath, pot: &WellPotential, mu: f64) -> f64 {
    interval_terms(path, pot, mu).iter().sum()
}

fn grad_with(path: &ActionPath, pot: &WellPotential, mu: f64) -> Vec<f64> {
    let (n, dx, p) = (path.dim, path.dx, path.p);
    let q = conjugate_exponent(p);
    let len = path.len();
    let mut grad = vec![0.0; path.nodes.len()];
    // flux_i = |v_i|^{p−2} v_i on interval i
    let mut flux = vec![0.0; (len - 1) * n];
    for i in 0..len - 1 {
        let v: Vec<f64> = (0..n).map(|d| (path.nodes[(i + 1) * n + d] - path.nodes[i * n + d]) / dx).collect();
        let factor = kinetic(v.iter().map(|x| x * x).sum(), p, mu).1;
        for d in 0..n {
            flux[i * n + d] = factor * v[d];
        }
    }
    let mut gw = vec![0.0; n];
    for i in 1..len - 1 {
        pot.gradient(path.node(i), &mut gw);
        for d in 0..n {
            grad[i * n + d] = flux[(i - 1) * n + d] - flux[i * n + d] + dx * gw[d] / q;
        }
    }
    grad
}

/// Positive per-node estimate of the Hessian diagonal of the smoothed action.
fn diagonal_scale(path: &ActionPath, pot: &WellPotential, mu: f64) -> Vec<f64> {
    let (n, dx, p) = (path.dim, path.dx, path.p);
    let q = conjugate_exponent(p);
    let len = path.len();
    let mix = (p - 1.0 + (n - 1) as f64) / n as f64;
    let stiff: Vec<f64> = (0..len - 1)
        .map(|i| {
            let v2: f64 = (0..n).map(|d| ((path.nodes[(i + 1) * n + d] - path.nodes[i * n + d]) / dx).powi(2)).sum();
            mix * kinetic(v2, p, mu).1 / dx
        })
        .collect();
    let mut c: Vec<f64> = (0..len)
        .map(|i| {
            let left = if i > 0 { stiff[i - 1] } else { 0.0 };
            let right = if i + 1 < len { stiff[i] } else { 0.0 };
            left + right + dx * pot.curvature(path.node(i)).max(0.0) / q
        })
        .collect();
    let top = c.iter().cloned().fold(0.0, f64::max);
    let floor = if top > 0.0 { 1e-10 * top } else { 1.0 };
    for v in c.iter_mut() {
        if !(v.is_finite() && *v > floor) {
            *v = if v.is_finite() { floor } else { top.max(floor) };
        }
    }
    c
}

/// Discrete action of `path` (exact `|v|^p`, no smoothing).
pub fn action_eval(path: &ActionPath, pot: &WellPotential) -> f64 {
    eval_with(path, pot, 0.0)
}

/// Exact gradient of [`action_eval`] with respect to every node; the pinned
/// end nodes get zero.
pub fn action_grad(path: &ActionPath, pot: &WellPotential) -> Vec<f64> {
    grad_with(path, pot, 0.0)
}

/// Gradient with the outward normal component removed at nodes sitting on
/// their constraint sphere.
pub fn projected_gradient(path: &ActionPath, pot: &WellPotential, grad: &[f64]) -> Vec<f64> {
    let mut out = grad.to_vec();
    let n = path.dim;
    let half = 0.5 * pot.radius;
    for i in (1..=path.window.0).chain(path.window.1..path.len() - 1) {
        let center = if i <= path.window.0 { &pot.minus } else { &pot.plus };
        let node = path.node(i);
        let r = dist(node, center);
        if r < half * (1.0 - 1e-9) {
            continue;
        }
        let normal: Vec<f64> = (0..n).map(|d| (node[d] - center[d]) / r).collect();
        let g = &mut out[i * n..(i + 1) * n];
        let along: f64 = (0..n).map(|d| g[d] * normal[d]).sum();
        // descent would push outward
        if along < 0.0 {
            for d in 0..n {
                g[d] -= along * normal[d];
            }
        }
    }
    out
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, b| a.max(b.abs()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Mean of `| |u_x|^p − W |` over the transition layer (intervals where the
/// mean `W` exceeds 1% of its maximum), relative to `max W`.
pub fn equipartition_gap(path: &ActionPath, pot: &WellPotential) -> f64 {
    let n = path.dim;
    let w: Vec<f64> = (0..path.len()).map(|i| pot.value(path.node(i))).collect();
    let top = w.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    let (mut sum, mut count) = (0.0, 0usize);
    for i in 0..path.len() - 1 {
        let wm = 0.5 * (w[i] + w[i + 1]);
        if wm < 1e-2 * top {
            continue;
        }
        let v2: f64 = (0..n).map(|d| ((path.nodes[(i + 1) * n + d] - path.nodes[i * n + d]) / path.dx).powi(2)).sum();
        sum += (v2.powf(0.5 * path.p) - wm).abs();
        count += 1;
    }
    if count == 0 {
        0.0
    } else {
        sum / count as f64 / top
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MinimizeOptions {
    pub max_iter: usize,
    /// Stop when the projected gradient max-norm drops below this.
    pub grad_tol: f64,
    /// Smoothing `μ` of `|v|^p` used for `p < 2`.
    pub smoothing: f64,
    /// Number of correction pairs kept by the quasi-Newton direction.
    pub memory: usize,
    /// Validate the monotonicity hypothesis before minimizing.
    pub check_hypothesis: bool,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self { max_iter: 100_000, grad_tol: 1e-7, smoothing: 1e-8, memory: 10, check_hypothesis: true }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LogEntry {
    pub iteration: usize,
    pub action: f64,
    pub grad_norm: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinimizeResult {
    pub path: ActionPath,
    /// Exact (unsmoothed) action of `path`.
    pub action: f64,
    pub converged: bool,
    pub iterations: usize,
    pub grad_norm: f64,
    pub log: Vec<LogEntry>,
}

/// Minimizes the discrete action from `init` (default: [`ActionPath::initial`]).
///
/// Directions come from a limited-memory quasi-Newton model built from
/// gradient differences; every step is accepted only under an Armijo
/// backtracking test on the projected iterate, so the action sequence is
/// nonincreasing. If no step makes progress the best path is returned with
/// `converged = false`.
pub fn minimize(
    pot: &WellPotential,
    p: f64,
    grid: &GridParams,
    init: Option<ActionPath>,
    opts: &MinimizeOptions,
) -> Result<MinimizeResult> {
    if opts.check_hypothesis {
        let report = validate_hypothesis(pot, 64, 32, 0);
        if !report.passed() {
            return Err(Error::HypothesisViolated(report.summary()));
        }
    }
    let mut path = match init {
        Some(path) => {
            if path.dim != pot.dim() {
                return Err(Error::InvalidParameter("initial path dimension mismatch".into()));
            }
            ActionPath { p, ..path }
        }
        None => ActionPath::initial(pot, p, grid)?,
    };
    path.project(pot);
    let mu = if p < 2.0 { opts.smoothing } else { 0.0 };
    let n = path.dim;
    let len = path.len();
    let free = n..(len - 1) * n;

    let mut terms = interval_terms(&path, pot, mu);
    let mut value: f64 = terms.iter().sum();
    let mut grad = grad_with(&path, pot, mu);
    let mut pg = projected_gradient(&path, pot, &grad);
    let mut log = vec![LogEntry { iteration: 0, action: value, grad_norm: max_norm(&pg) }];
    let mut history: Vec<(Vec<f64>, Vec<f64>, f64)> = Vec::new();
    let mut converged = max_norm(&pg) < opts.grad_tol;
    let mut iterations = 0;
    let mut fresh_restart = false;

    while !converged && iterations < opts.max_iter {
        // two-loop recursion over the free coordinates
        let mut d: Vec<f64> = grad[free.clone()].iter().map(|g| -g).collect();
        let mut alphas = Vec::with_capacity(history.len());
        for (s, y, rho) in history.iter().rev() {
            let a = rho * dot(s, &d);
            for (di, yi) in d.iter_mut().zip(y) {
                *di -= a * yi;
            }
            alphas.push(a);
        }
        let inv: Vec<f64> = diagonal_scale(&path, pot, mu)[1..len - 1]
            .iter()
            .flat_map(|c| std::iter::repeat_n(1.0 / c, n))
            .collect();
        let gamma = match history.last() {
            Some((s, y, _)) => dot(s, y) / y.iter().zip(&inv).map(|(yi, hi)| yi * yi * hi).sum::<f64>(),
            None => 1.0,
        };
        for (di, hi) in d.iter_mut().zip(&inv) {
            *di *= gamma * hi;
        }
        for ((s, y, rho), a) in history.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(y, &d);
            for (di, si) in d.iter_mut().zip(s) {
                *di += (a - b) * si;
            }
        }
        let mut slope = dot(&grad[free.clone()], &d);
        if !(slope < 0.0) {
            history.clear();
            d = grad[free.clone()].iter().zip(&inv).map(|(g, hi)| -g * hi).collect();
            slope = dot(&grad[free.clone()], &d);
        }

        // Armijo backtracking on the projected trial point
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let mut trial = path.clone();
            for (k, di) in free.clone().zip(&d) {
                trial.nodes[k] += t * di;
            }
            trial.project(pot);
            let moved: f64 = free.clone().map(|k| grad[k] * (trial.nodes[k] - path.nodes[k])).sum();
            // summing local differences resolves decreases far below ulp(A)
            let trial_terms = interval_terms(&trial, pot, mu);
            let change: f64 = trial_terms.iter().zip(&terms).map(|(a, b)| a - b).sum();
            if change < 0.0 && change <= 1e-4 * moved.min(t * slope) {
                accepted = Some((trial, trial_terms, change));
                break;
            }
            t *= 0.5;
        }

        iterations += 1;
        match accepted {
            Some((trial, trial_terms, change)) => {
                fresh_restart = false;
                let new_grad = grad_with(&trial, pot, mu);
                let s: Vec<f64> = free.clone().map(|k| trial.nodes[k] - path.nodes[k]).collect();
                let y: Vec<f64> = free.clone().map(|k| new_grad[k] - grad[k]).collect();
                let sy = dot(&s, &y);
                if sy > 1e-300 {
                    history.push((s, y, 1.0 / sy));
                    if history.len() > opts.memory {
                        history.remove(0);
                    }
                }
                path = trial;
                terms = trial_terms;
                value += change;
                grad = new_grad;
                pg = projected_gradient(&path, pot, &grad);
                let gn = max_norm(&pg);
                log.push(LogEntry { iteration: iterations, action: value, grad_norm: gn });
                converged = gn < opts.grad_tol;
            }
            None => {
                if fresh_restart || history.is_empty() {
                    break;
                }
                history.clear();
                fresh_restart = true;
            }
        }
    }

    let action = action_eval(&path, pot);
    Ok(MinimizeResult { action, converged, iterations, grad_norm: max_norm(&pg), path, log })
}

/// A nonpositive forward difference of `r ↦ W(a + rξ)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonotonicityViolation {
    /// `-1` for `a⁻`, `+1` for `a⁺`.
    pub well: i8,
    pub direction: Vec<f64>,
    pub radius: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub violations: Vec<MonotonicityViolation>,
    /// Smallest `W` found on the far circle `|u| = 10·|a⁺ − a⁻|`.
    pub far_field_min: f64,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.far_field_min > 0.0
    }

    pub fn summary(&self) -> String {
        match self.violations.first() {
            Some(v) => format!(
                "{} monotonicity violations (first near a{} at r = {:.4})",
                self.violations.len(),
                if v.well < 0 { "⁻" } else { "⁺" },
                v.radius
            ),
            None if self.far_field_min <= 0.0 => format!("far-field minimum {:e} is not positive", self.far_field_min),
            None => "ok".into(),
        }
    }
}

fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 1e-3 && r <= 1.0 {
            return v.into_iter().map(|x| x / r).collect();
        }
    }
}

/// Samples `r ↦ W(a± + rξ)` on `rays` random directions at `samples_per_ray`
/// radii in `(0, R)` and checks that it strictly increases; also samples `W`
/// on a far circle. Report only.
pub fn validate_hypothesis(pot: &WellPotential, samples_per_ray: usize, rays: usize, seed: u64) -> HypothesisReport {
    let n = pot.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let directions: Vec<Vec<f64>> = if n == 1 {
        vec![vec![1.0], vec![-1.0]]
    } else {
        (0..rays.max(1)).map(|_| random_direction(&mut rng, n)).collect()
    };
    let mut violations = Vec::new();
    let mut point = vec![0.0; n];
    for (well, center) in [(-1i8, &pot.minus), (1, &pot.plus)] {
        for xi in &directions {
            let mut prev = pot.value(center);
            for k in 1..=samples_per_ray {
                let r = pot.radius * k as f64 / (samples_per_ray + 1) as f64;
                for d in 0..n {
                    point[d] = center[d] + r * xi[d];
                }
                let w = pot.value(&point);
                if !(w > prev) {
                    violations.push(MonotonicityViolation { well, direction: xi.clone(), radius: r });
                    break;
                }
                prev = w;
            }
        }
    }
    let far = 10.0 * dist(&pot.minus, &pot.plus);
    let far_dirs: Vec<Vec<f64>> = if n == 1 {
        vec![vec![1.0], vec![-1.0]]
    } else {
        (0..rays.max(1) * 4).map(|_| random_direction(&mut rng, n)).collect()
    };
    let far_field_min = far_dirs
        .iter()
        .map(|xi| pot.value(&xi.iter().map(|x| far * x).collect::<Vec<_>>()))
        .fold(f64::INFINITY, f64::min);
    HypothesisReport { violations, far_field_min }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;

    fn random_path(pot: &WellPotential, p: f64, m: usize, seed: u64) -> ActionPath {
        let grid = GridParams { x_min: -3.0, x_max: 3.0, intervals: m, window: (0.15, 0.85) };
        let mut path = ActionPath::initial(pot, p, &grid).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = path.dim;
        for k in n..path.nodes.len() - n {
            path.nodes[k] += rng.gen_range(-0.2..0.2);
        }
        path
    }

    #[test]
    fn constant_path_has_zero_action() {
        let pot = WellPotential::scalar_two_well();
        let mut path = ActionPath::initial(&pot, 2.0, &GridParams::default()).unwrap();
        path.nodes.iter_mut().for_each(|v| *v = 1.0);
        assert_eq!(action_eval(&path, &pot), 0.0);
    }

    #[test]
    fn tanh_profile_has_classical_action() {
        let pot = WellPotential::scalar_two_well();
        let grid = GridParams { x_min: -8.0, x_max: 8.0, intervals: 1600, window: (0.15, 0.85) };
        let mut path = ActionPath::initial(&pot, 2.0, &grid).unwrap();
        for i in 0..path.len() {
            path.nodes[i] = path.x(i).tanh();
        }
        let a = action_eval(&path, &pot);
        assert!((a - 4.0 / 3.0).abs() < 1e-3, "{a}");
    }

    /// Central differences of the discrete action, coordinate by coordinate.
    fn fd_gradient(path: &ActionPath, pot: &WellPotential, h: f64) -> Vec<f64> {
        let mut out = vec![0.0; path.nodes.len()];
        let n = path.dim;
        for k in n..path.nodes.len() - n {
            let mut a = path.clone();
            let mut b = path.clone();
            a.nodes[k] += h;
            b.nodes[k] -= h;
            out[k] = (action_eval(&a, pot) - action_eval(&b, pot)) / (2.0 * h);
        }
        out
    }

    #[test]
    fn gradient_matches_central_differences() {
        let scalar = WellPotential::scalar_two_well();
        let planar = WellPotential::planar(Family::TripleWell(3).potential(2.0).unwrap(), 0, 1, 0.5).unwrap();
        for (seed, p) in [(1u64, 1.5), (2, 2.0), (3, 3.0)] {
            for pot in [&scalar, &planar] {
                let pot_p = if pot.dim() == 2 {
                    WellPotential::planar(Family::TripleWell(3).potential(p).unwrap(), 0, 1, 0.5).unwrap()
                } else {
                    WellPotential::scalar_two_well()
                };
                let path = random_path(&pot_p, p, 40, seed);
                let exact = action_grad(&path, &pot_p);
                let fd = fd_gradient(&path, &pot_p, 1e-6);
                let scale = max_norm(&exact);
                let err = exact.iter().zip(&fd).fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
                assert!(err / scale < 1e-6, "p={p} dim={} rel={:e}", pot.dim(), err / scale);
            }
        }
    }

    #[test]
    fn zero_velocity_gradient_is_finite() {
        let pot = WellPotential::scalar_two_well();
        let path = ActionPath::initial(&pot, 1.5, &GridParams { intervals: 50, ..Default::default() }).unwrap();
        // the clamped ends have zero-velocity intervals
        assert!(action_grad(&path, &pot).iter().all(|g| g.is_finite()));
    }

    #[test]
    fn scalar_minimization_recovers_tanh() {
        let pot = WellPotential::scalar_two_well();
        let res = minimize(&pot, 2.0, &GridParams::default(), None, &MinimizeOptions::default()).unwrap();
        assert!((res.action - 4.0 / 3.0).abs() < 1e-3, "{}", res.action);
        let mid = res.path.node(res.path.len() / 2)[0];
        assert!(mid.abs() < 1e-3, "u(0) = {mid}");
        assert!(res.log.windows(2).all(|w| w[1].action <= w[0].action));
        assert!(res.path.satisfies_constraints(&pot));
        assert!(res.converged);
        assert!(equipartition_gap(&res.path, &pot) < 5e-3);

        // restarting from the minimizer stops at once
        let again = minimize(&pot, 2.0, &GridParams::default(), Some(res.path.clone()), &MinimizeOptions::default()).unwrap();
        if res.converged {
            assert_eq!(again.iterations, 0);
        } else {
            assert!(again.iterations <= 50 && (again.action - res.action).abs() < 1e-9);
        }
    }

    #[test]
    fn planar_minimizer_matches_transition_energy() {
        let pot = WellPotential::planar(Family::TripleWell(3).potential(2.0).unwrap(), 0, 1, 0.5).unwrap();
        let res = minimize(&pot, 2.0, &GridParams::default(), None, &MinimizeOptions::default()).unwrap();
        assert!(res.converged);
        assert!((res.action - 0.75 * 3f64.sqrt()).abs() < 2e-3);
        assert!(equipartition_gap(&res.path, &pot) < 5e-3);
        let exact = action_grad(&res.path, &pot);
        assert!(max_norm(&projected_gradient(&res.path, &pot, &exact)) < 1e-6);
    }

    #[test]
    fn hypothesis_checks() {
        let pot = WellPotential::scalar_two_well();
        assert!(validate_hypothesis(&pot, 100, 8, 0).passed());

        // (1 − u²)²((u − 1.25)² + 1e−4) dips near u = 1.25, a distance R/2 from a⁺
        let bumpy = FnLandscape::new(
            1,
            |u| (1.0 - u[0] * u[0]).powi(2) * ((u[0] - 1.25).powi(2) + 1e-4),
            |u, g| {
                let a = (1.0 - u[0] * u[0]).powi(2);
                let b = (u[0] - 1.25).powi(2) + 1e-4;
                g[0] = -4.0 * u[0] * (1.0 - u[0] * u[0]) * b + a * 2.0 * (u[0] - 1.25);
            },
        );
        let bumpy = WellPotential::new(bumpy, vec![-1.0], vec![1.0], 0.5).unwrap();
        let report = validate_hypothesis(&bumpy, 100, 8, 0);
        assert!(!report.passed());
        assert!(report.violations.iter().all(|v| v.well == 1));
        let err = minimize(&bumpy, 2.0, &GridParams::default(), None, &MinimizeOptions::default());
        assert!(matches!(err, Err(Error::HypothesisViolated(_))));

        assert!(WellPotential::new(ScalarTwoWell, vec![-1.0], vec![1.0], 2.0).is_err());
    }
}
