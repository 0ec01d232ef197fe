//! Parameter sweeps, branch enumeration and all-pairs tracing over the
//! built-in families.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::Family;
use crate::error::{Error, Result};
use crate::geodesic::{trace, CurveSample, GeodesicCurve, TraceOptions};
use crate::potential::{BranchTag, Potential};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SweepOptions {
    /// Minima indices of the traced pair.
    pub from: usize,
    pub to: usize,
    /// Target bracket width.
    pub width: f64,
    pub max_bisections: usize,
    pub trace: TraceOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { from: 0, to: 1, width: 1e-4, max_bisections: 40, trace: TraceOptions::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub param: f64,
    pub reached: bool,
    pub energy: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub family: String,
    /// The coarse grid.
    pub grid: Vec<f64>,
    /// Every evaluated parameter, coarse and bisection, sorted.
    pub verdicts: Vec<Verdict>,
    pub bracket: (f64, f64),
    pub threshold_estimate: f64,
}

/// Whether the pair connects for one parameter value. A collapsed segment
/// counts as no connection.
pub fn connection_verdict(family: &Family, param: f64, opts: &SweepOptions) -> Result<Verdict> {
    let pot = family.with_param(param)?.potential(2.0)?;
    let alpha = pot.minimum(opts.from)?;
    let beta = pot.minimum(opts.to)?;
    match trace(&pot, alpha, beta, family.default_branch(), &opts.trace) {
        Ok(curve) => Ok(Verdict { param, reached: curve.reached, energy: curve.length }),
        Err(Error::DegenerateSegment(len)) => Ok(Verdict { param, reached: false, energy: len }),
        Err(e) => Err(e),
    }
}

/// Scans `range` on `n_coarse` points, then bisects the first verdict change
/// down to `opts.width`.
pub fn existence_sweep(family: &Family, range: (f64, f64), n_coarse: usize, opts: &SweepOptions) -> Result<SweepReport> {
    let (lo, hi) = range;
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidParameter(format!("empty sweep range [{lo}, {hi}]")));
    }
    if n_coarse < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 coarse points, got {n_coarse}")));
    }
    let grid: Vec<f64> = (0..n_coarse).map(|k| lo + (hi - lo) * k as f64 / (n_coarse - 1) as f64).collect();
    let coarse = grid
        .par_iter()
        .map(|&e| connection_verdict(family, e, opts))
        .collect::<Result<Vec<_>>>()?;
    let Some(k) = coarse.windows(2).position(|w| w[0].reached != w[1].reached) else {
        return Err(Error::NoTransition);
    };
    let (mut left, mut right) = (coarse[k], coarse[k + 1]);
    let mut verdicts = coarse;
    for _ in 0..opts.max_bisections {
        if right.param - left.param <= opts.width {
            break;
        }
        let mid = connection_verdict(family, 0.5 * (left.param + right.param), opts)?;
        verdicts.push(mid);
        if mid.reached == left.reached {
            left = mid;
        } else {
            right = mid;
        }
    }
    verdicts.sort_by(|a, b| a.param.total_cmp(&b.param));
    Ok(SweepReport {
        family: family.base_name().to_string(),
        grid,
        verdicts,
        bracket: (left.param, right.param),
        threshold_estimate: 0.5 * (left.param + right.param),
    })
}

/// Reflects a curve across the real axis.
fn mirrored(pot: &Potential, curve: &GeodesicCurve, branch: BranchTag) -> Result<GeodesicCurve> {
    let samples = curve.samples.iter().map(|s| CurveSample { l: s.l, z: s.z.conj() }).collect();
    GeodesicCurve::from_samples(pot, samples, branch)
}

/// Traces `−a → 1` for `(z − 1)(z + a)/z` on both logarithm branches and
/// returns the curves that connect. When both do, they must be mirror images
/// with equal energies.
pub fn enumerate_branches(a: f64, opts: &TraceOptions) -> Result<Vec<GeodesicCurve>> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidParameter(format!("branch enumeration needs 0 < a < 1, got {a}")));
    }
    let pot = Family::RationalA(a).potential(2.0)?;
    let (alpha, beta) = (pot.minimum(0)?, pot.minimum(1)?);
    let upper = trace(&pot, alpha, beta, BranchTag::Upper, opts)?;
    let lower = trace(&pot, alpha, beta, BranchTag::Lower, opts)?;
    if upper.reached && lower.reached {
        let gap = upper.hausdorff(&mirrored(&pot, &lower, BranchTag::Upper)?, &pot)?;
        if gap > 1e-6 {
            return Err(Error::BranchAsymmetry(format!("mirror distance {gap:e}")));
        }
        let de = (upper.length - lower.length).abs();
        if de > 1e-8 {
            return Err(Error::BranchAsymmetry(format!("energy difference {de:e}")));
        }
    }
    Ok([upper, lower].into_iter().filter(|c| c.reached).collect())
}

/// All connections between the minima of one family member.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConnectionTable {
    pub family: String,
    pub minima: Vec<Complex64>,
    /// Symmetric, zero diagonal.
    pub energies: Vec<Vec<f64>>,
    /// Curves for `i < j`, in row-major pair order.
    pub curves: Vec<GeodesicCurve>,
}

/// Traces every pair of minima of `zⁿ − 1` or `(1 − z²)(z² + ε²)`; each must connect.
pub fn pairwise_connections(family: &Family, opts: &TraceOptions) -> Result<ConnectionTable> {
    match *family {
        Family::TripleWell(n) if n >= 2 => {}
        Family::QuarticEps(e) if e > 0.0 && e.is_finite() => {}
        _ => {
            return Err(Error::InvalidParameter(format!(
                "pairwise connections are guaranteed only for triple-well-n (n ≥ 2) and quartic-eps (ε > 0), got {family}"
            )))
        }
    }
    let pot = family.potential(2.0)?;
    let minima = pot.minima().to_vec();
    let m = minima.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let curves = pairs
        .par_iter()
        .map(|&(i, j)| {
            let curve = trace(&pot, minima[i], minima[j], BranchTag::None, opts)?;
            if curve.reached {
                Ok(curve)
            } else {
                Err(Error::UnexpectedNonexistence { alpha: minima[i], beta: minima[j] })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut energies = vec![vec![0.0; m]; m];
    for (&(i, j), c) in pairs.iter().zip(&curves) {
        energies[i][j] = c.length;
        energies[j][i] = c.length;
    }
    Ok(ConnectionTable { family: family.to_string(), minima, energies, curves })
}

#[cfg(test)]
mod tests {
    use super::*;

    const THRESHOLD: f64 = 0.681_250_8; // sqrt(2 sqrt 3 − 3)

    #[test]
    fn threshold_value() {
        assert!(((2.0 * 3f64.sqrt() - 3.0).sqrt() - THRESHOLD).abs() < 1e-6);
    }

    #[test]
    fn cubic_sweep_finds_threshold() {
        let fam = Family::CubicIEps(0.5);
        let report = existence_sweep(&fam, (0.3, 1.0), 15, &SweepOptions::default()).unwrap();
        let (lo, hi) = report.bracket;
        assert!(hi - lo <= 1e-4 && lo <= report.threshold_estimate && report.threshold_estimate <= hi);
        assert!((report.threshold_estimate - THRESHOLD).abs() < 1e-3, "{}", report.threshold_estimate);
        assert!(report.verdicts.windows(2).all(|w| w[0].param <= w[1].param));

        let fine = SweepOptions { trace: TraceOptions { h: 5e-3, ..Default::default() }, ..Default::default() };
        let halved = existence_sweep(&fam, (0.3, 1.0), 15, &fine).unwrap();
        assert!((halved.threshold_estimate - report.threshold_estimate).abs() < 5e-4);
    }

    #[test]
    fn no_transition_above_threshold() {
        let res = existence_sweep(&Family::CubicIEps(0.9), (0.8, 1.0), 8, &SweepOptions::default());
        assert!(matches!(res, Err(Error::NoTransition)));
    }

    #[test]
    fn zero_on_segment_is_not_a_connection() {
        let v = connection_verdict(&Family::CubicIEps(0.0), 0.0, &SweepOptions::default()).unwrap();
        assert!(!v.reached);
    }

    #[test]
    fn rational_family_has_two_mirror_connections() {
        let curves = enumerate_branches(0.5, &TraceOptions::default()).unwrap();
        assert_eq!(curves.len(), 2);
        let above = |c: &GeodesicCurve| c.samples[1..c.samples.len() - 1].iter().all(|s| s.z.im > 0.0);
        let below = |c: &GeodesicCurve| c.samples[1..c.samples.len() - 1].iter().all(|s| s.z.im < 0.0);
        assert!(above(&curves[0]) && below(&curves[1]));
        assert!((curves[0].length - curves[1].length).abs() < 1e-8);
        assert!(enumerate_branches(1.5, &TraceOptions::default()).is_err());
    }

    #[test]
    fn roots_of_unity_energies() {
        let table = pairwise_connections(&Family::TripleWell(3), &TraceOptions::default()).unwrap();
        let expected = 0.75 * 3f64.sqrt();
        assert_eq!(table.curves.len(), 3);
        for i in 0..3 {
            assert_eq!(table.energies[i][i], 0.0);
            for j in 0..3 {
                assert_eq!(table.energies[i][j], table.energies[j][i]);
                if i != j {
                    assert!((table.energies[i][j] - expected).abs() < 1e-9);
                }
            }
        }
        let two = pairwise_connections(&Family::TripleWell(2), &TraceOptions::default()).unwrap();
        assert_eq!(two.curves.len(), 1);
        assert!((two.energies[0][1] - 4.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn quartic_pairs_all_connect() {
        let table = pairwise_connections(&Family::QuarticEps(1.0), &TraceOptions::default()).unwrap();
        assert_eq!(table.curves.len(), 6);
        assert!(table.curves.iter().all(|c| c.reached));
        assert!(pairwise_connections(&Family::CubicIEps(1.0), &TraceOptions::default()).is_err());
    }

    #[test]
    fn rotation_maps_connections_onto_each_other() {
        let fam = Family::TripleWell(3);
        let pot = fam.potential(2.0).unwrap();
        let m = pot.minima().to_vec();
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let c01 = trace(&pot, m[0], m[1], BranchTag::None, &TraceOptions::default()).unwrap();
        let c12 = trace(&pot, m[1], m[2], BranchTag::None, &TraceOptions::default()).unwrap();
        let rotated: Vec<CurveSample> = c01.samples.iter().map(|s| CurveSample { l: s.l, z: s.z * w }).collect();
        let rotated = GeodesicCurve::from_samples(&pot, rotated, BranchTag::None).unwrap();
        assert!(c12.hausdorff(&rotated, &pot).unwrap() < 1e-7);
    }
}
