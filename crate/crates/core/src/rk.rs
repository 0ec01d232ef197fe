//! Dormand–Prince 5(4) embedded Runge–Kutta stepper for a scalar complex ODE.

use num_complex::Complex64;

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0];
const B: [f64; 6] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0];
/// Difference between the fifth- and fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Step-size controls. The local error of an accepted step satisfies
/// `|err| ≤ tol · (1 + |z|)`.
#[derive(Clone, Copy, Debug)]
pub struct StepControl {
    pub tol: f64,
    pub h_max: f64,
    pub h_min: f64,
}

impl Default for StepControl {
    fn default() -> Self {
        Self { tol: 1e-10, h_max: 1e-2, h_min: 1e-15 }
    }
}

/// What the observer wants after an accepted step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

/// Counters from one integration run.
#[derive(Clone, Copy, Debug, Default)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Integrates `z' = rhs(l, z)` from `l0` to `l_end`, calling `observe` after
/// every accepted step (including the final one that lands on `l_end`).
pub fn integrate<F, O>(rhs: F, l0: f64, z0: Complex64, l_end: f64, ctrl: StepControl, observe: O) -> Result<Stats>
where
    F: Fn(f64, Complex64) -> Result<Complex64>,
    O: FnMut(f64, Complex64) -> Flow,
{
    integrate_projected(rhs, l0, z0, l_end, ctrl, |_, _, _, z| Ok(z), observe)
}

/// As [`integrate`], but every accepted state is passed through
/// `project(l_prev, z_prev, l_new, z_new)` before it is recorded, which lets
/// the caller restore a known first integral.
pub fn integrate_projected<F, P, O>(
    rhs: F,
    l0: f64,
    z0: Complex64,
    l_end: f64,
    ctrl: StepControl,
    mut project: P,
    mut observe: O,
) -> Result<Stats>
where
    F: Fn(f64, Complex64) -> Result<Complex64>,
    P: FnMut(f64, Complex64, f64, Complex64) -> Result<Complex64>,
    O: FnMut(f64, Complex64) -> Flow,
{
    let mut stats = Stats::default();
    let mut l = l0;
    let mut z = z0;
    let span = l_end - l0;
    if span <= 0.0 {
        return Ok(stats);
    }
    let mut k1 = rhs(l, z)?;
    // initial guess: move about tol^(1/5) of the local scale
    let mut h = (ctrl.tol.powf(0.2) * (1.0 + z.norm()) / k1.norm().max(1e-300))
        .min(ctrl.h_max)
        .min(span);
    let h_floor = ctrl.h_min * span.max(1.0);

    while l < l_end {
        let last = l + h >= l_end;
        if last {
            h = l_end - l;
        }
        let k2 = rhs(l + C[1] * h, z + k1 * (h * A2[0]))?;
        let k3 = rhs(l + C[2] * h, z + (k1 * A3[0] + k2 * A3[1]) * h)?;
        let k4 = rhs(l + C[3] * h, z + (k1 * A4[0] + k2 * A4[1] + k3 * A4[2]) * h)?;
        let k5 = rhs(
            l + C[4] * h,
            z + (k1 * A5[0] + k2 * A5[1] + k3 * A5[2] + k4 * A5[3]) * h,
        )?;
        let k6 = rhs(
            l + C[5] * h,
            z + (k1 * A6[0] + k2 * A6[1] + k3 * A6[2] + k4 * A6[3] + k5 * A6[4]) * h,
        )?;
        let z_new = z + (k1 * B[0] + k3 * B[2] + k4 * B[3] + k5 * B[4] + k6 * B[5]) * h;
        let k7 = rhs(l + h, z_new)?;
        let err = (k1 * E[0] + k3 * E[2] + k4 * E[3] + k5 * E[4] + k6 * E[5] + k7 * E[6]) * h;
        let scale = ctrl.tol * (1.0 + z.norm().max(z_new.norm()));
        let ratio = err.norm() / scale;

        if ratio <= 1.0 && ratio.is_finite() {
            stats.accepted += 1;
            let l_new = if last { l_end } else { l + h };
            let z_proj = project(l, z, l_new, z_new)?;
            k1 = if z_proj == z_new { k7 } else { rhs(l_new, z_proj)? };
            l = l_new;
            z = z_proj;
            if observe(l, z) == Flow::Stop {
                return Ok(stats);
            }
            let factor = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
            h = (h * factor).min(ctrl.h_max);
        } else {
            stats.rejected += 1;
            let factor = if ratio.is_finite() { (0.9 * ratio.powf(-0.2)).clamp(0.1, 0.5) } else { 0.1 };
            h *= factor;
            if h < h_floor {
                return Err(Error::StepFailure { l });
            }
        }
    }
    Ok(stats)
}
