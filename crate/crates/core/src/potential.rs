//! Holomorphic factor `f`, its antiderivative `g`, and the planar potential
//! `W = |f|^q`.
//!
//! `f` is stored in factored form,
//!
//! ```text
//! f(z) = c · Π (z − r_i) · (1/z if pole_at_zero)
//! ```
//!
//! and `g` is the antiderivative with `g' = f`. For a pure polynomial `g(0) = 0`;
//! with the pole, `g` carries a `res · log z` term whose branch is selected by
//! [`BranchTag`].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature;

/// Guard radius for the `q < 2` gradient singularity at zeros of `f`.
pub const SINGULAR_GUARD: f64 = 1e-8;

/// Tolerance for matching minima against roots and for the Hölder relation.
const MATCH_TOL: f64 = 1e-12;

/// Half-plane selector for the logarithm in `g`.
///
/// The cut of the logarithm lies in the half-plane *not* named here:
/// `Upper` puts it on the negative imaginary axis, `Lower` on the positive one.
/// `None` means the principal branch (cut on the negative real axis).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchTag {
    Upper,
    Lower,
    #[default]
    None,
}

impl std::str::FromStr for BranchTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" => Ok(Self::Upper),
            "lower" => Ok(Self::Lower),
            "none" => Ok(Self::None),
            other => Err(Error::InvalidParameter(format!("unknown branch `{other}`"))),
        }
    }
}

impl std::fmt::Display for BranchTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Upper => "upper",
            Self::Lower => "lower",
            Self::None => "none",
        })
    }
}

fn default_lead() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn default_p() -> f64 {
    2.0
}

/// Document form of a planar potential, as read from or written to JSON.
///
/// Complex numbers are `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub roots: Vec<Complex64>,
    #[serde(default)]
    pub pole_at_zero: bool,
    #[serde(default = "default_lead")]
    pub leading_coeff: Complex64,
    #[serde(default = "default_p")]
    pub p: f64,
    pub minima: Vec<Complex64>,
}

/// A validated potential with precomputed expansion coefficients.
#[derive(Clone, Debug)]
pub struct Potential {
    spec: PotentialSpec,
    q: f64,
    /// Coefficients of the polynomial part `c · Π (z − r_i)`, lowest degree first.
    coeffs: Vec<Complex64>,
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= MATCH_TOL * (1.0 + b.norm())
}

/// Hölder conjugate of `p`.
pub fn conjugate_exponent(p: f64) -> f64 {
    p / (p - 1.0)
}

impl Potential {
    pub fn new(spec: PotentialSpec) -> Result<Self> {
        if !(spec.p.is_finite() && spec.p > 1.0) {
            return Err(Error::InvalidSpec(format!("p must be > 1, got {}", spec.p)));
        }
        let q = conjugate_exponent(spec.p);
        if (1.0 / spec.p + 1.0 / q - 1.0).abs() > MATCH_TOL {
            return Err(Error::InvalidSpec("p and q are not Hölder conjugates".into()));
        }
        if spec.leading_coeff.norm() == 0.0 || !spec.leading_coeff.is_finite() {
            return Err(Error::InvalidSpec("leading coefficient must be nonzero".into()));
        }
        if spec.roots.iter().any(|r| !r.is_finite()) {
            return Err(Error::InvalidSpec("roots must be finite".into()));
        }
        if spec.pole_at_zero && spec.roots.iter().any(|r| r.norm() <= MATCH_TOL) {
            return Err(Error::InvalidSpec("0 cannot be a root when f has a pole at 0".into()));
        }
        for (i, m) in spec.minima.iter().enumerate() {
            if spec.minima[..i].iter().any(|other| close(*m, *other)) {
                return Err(Error::InvalidSpec(format!("minimum {m} is repeated")));
            }
            let multiplicity = spec.roots.iter().filter(|r| close(*m, **r)).count();
            match multiplicity {
                0 => return Err(Error::InvalidSpec(format!("minimum {m} is not a root of f"))),
                1 => {}
                k => {
                    return Err(Error::InvalidSpec(format!(
                        "minimum {m} is a root of multiplicity {k}"
                    )))
                }
            }
        }

        let mut coeffs = vec![spec.leading_coeff];
        for r in &spec.roots {
            // multiply by (z - r)
            let mut next = vec![Complex64::default(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }

        Ok(Self { spec, q, coeffs })
    }

    pub fn spec(&self) -> &PotentialSpec {
        &self.spec
    }

    pub fn p(&self) -> f64 {
        self.spec.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn roots(&self) -> &[Complex64] {
        &self.spec.roots
    }

    pub fn minima(&self) -> &[Complex64] {
        &self.spec.minima
    }

    pub fn has_pole(&self) -> bool {
        self.spec.pole_at_zero
    }

    /// Same potential with a different `p` (and hence `q`).
    pub fn with_p(&self, p: f64) -> Result<Self> {
        Self::new(PotentialSpec { p, ..self.spec.clone() })
    }

    /// Looks up a minimum by index.
    pub fn minimum(&self, index: usize) -> Result<Complex64> {
        self.spec.minima.get(index).copied().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "minimum index {index} out of range ({} minima)",
                self.spec.minima.len()
            ))
        })
    }

    /// Smallest distance between two distinct roots (or a root and the pole).
    pub fn min_root_separation(&self) -> f64 {
        let mut pts = self.spec.roots.clone();
        if self.spec.pole_at_zero {
            pts.push(Complex64::default());
        }
        let mut best = f64::INFINITY;
        for i in 0..pts.len() {
            for j in 0..i {
                let d = (pts[i] - pts[j]).norm();
                if d > 0.0 {
                    best = best.min(d);
                }
            }
        }
        if best.is_finite() {
            best
        } else {
            1.0
        }
    }

    pub fn f(&self, z: Complex64) -> Result<Complex64> {
        self.f_shifted(z, Complex64::default())
    }

    /// `f(center + t)` with each factor formed as `(center − r_i) + t`, so
    /// small offsets from a root keep full relative precision.
    pub fn f_shifted(&self, center: Complex64, t: Complex64) -> Result<Complex64> {
        let mut val = self.spec.leading_coeff;
        for r in &self.spec.roots {
            val *= (center - r) + t;
        }
        if self.spec.pole_at_zero {
            let z = center + t;
            if z.norm() == 0.0 {
                return Err(Error::PoleEvaluation);
            }
            val /= z;
        }
        Ok(val)
    }

    /// `f(z)` and `f'(z)` by product-rule accumulation over the factors.
    pub fn f_and_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let mut val = self.spec.leading_coeff;
        let mut der = Complex64::default();
        for r in &self.spec.roots {
            der = der * (z - r) + val;
            val *= z - r;
        }
        if self.spec.pole_at_zero {
            if z.norm() == 0.0 {
                return Err(Error::PoleEvaluation);
            }
            let inv = z.inv();
            der = der * inv - val * inv * inv;
            val *= inv;
        }
        Ok((val, der))
    }

    /// Logarithm on the branch named by `branch`.
    fn log_on_branch(z: Complex64, branch: BranchTag) -> Result<Complex64> {
        if z.norm() == 0.0 {
            return Err(Error::PoleEvaluation);
        }
        let cut_tol = MATCH_TOL * z.norm().max(1.0);
        let mut arg = z.arg();
        match branch {
            BranchTag::Upper => {
                if z.re.abs() <= cut_tol && z.im < 0.0 {
                    return Err(Error::BranchCut(z));
                }
                if arg < -PI / 2.0 {
                    arg += 2.0 * PI;
                }
            }
            BranchTag::Lower => {
                if z.re.abs() <= cut_tol && z.im > 0.0 {
                    return Err(Error::BranchCut(z));
                }
                if arg > PI / 2.0 {
                    arg -= 2.0 * PI;
                }
            }
            BranchTag::None => {
                if z.im.abs() <= cut_tol && z.re < 0.0 {
                    return Err(Error::BranchCut(z));
                }
            }
        }
        Ok(Complex64::new(z.norm().ln(), arg))
    }

    /// Antiderivative `g` with `g' = f`.
    pub fn g(&self, z: Complex64, branch: BranchTag) -> Result<Complex64> {
        let coeffs = &self.coeffs;
        if self.spec.pole_at_zero {
            // (P(z) − P(0))/z integrates term by term; P(0)/z gives the log.
            let mut acc = Complex64::default();
            for k in (1..coeffs.len()).rev() {
                acc = acc * z + coeffs[k] / k as f64;
            }
            acc *= z;
            Ok(acc + coeffs[0] * Self::log_on_branch(z, branch)?)
        } else {
            let mut acc = Complex64::default();
            for k in (0..coeffs.len()).rev() {
                acc = acc * z + coeffs[k] / (k + 1) as f64;
            }
            Ok(acc * z)
        }
    }

    /// `g(center + t) − g(center)` by quadrature of `f` along the straight
    /// segment. Exact for polynomials of degree ≤ 15 and free of the
    /// cancellation that the difference of two `g` values suffers for tiny `t`.
    pub fn g_increment(&self, center: Complex64, t: Complex64) -> Result<Complex64> {
        let panels = if self.spec.pole_at_zero {
            let clearance = center.norm().min((center + t).norm()).max(1e-300);
            ((4.0 * t.norm() / clearance).ceil() as usize).clamp(1, 256)
        } else {
            1
        };
        let mut err = None;
        let integral: Complex64 = quadrature::integrate(0.0, 1.0, panels, |s| {
            match self.f_shifted(center, t * s) {
                Ok(v) => v,
                Err(e) => {
                    err = Some(e);
                    Complex64::default()
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(integral * t),
        }
    }

    /// `W(z) = |f(z)|^q`.
    pub fn w(&self, z: Complex64) -> Result<f64> {
        Ok(self.f(z)?.norm().powf(self.q))
    }

    /// `W(center + t)` with the shifted evaluation of `f`.
    pub fn w_shifted(&self, center: Complex64, t: Complex64) -> Result<f64> {
        Ok(self.f_shifted(center, t)?.norm().powf(self.q))
    }

    /// `(∂W/∂u₁, ∂W/∂u₂)` from `∂₁W + i∂₂W = q |f|^{q−2} f conj(f')`.
    pub fn grad_w(&self, z: Complex64) -> Result<[f64; 2]> {
        let (f, df) = self.f_and_derivative(z)?;
        let modulus = f.norm();
        if self.q < 2.0 && modulus < SINGULAR_GUARD {
            return Err(Error::SingularGradient(z));
        }
        let g = f * df.conj() * (self.q * modulus.powf(self.q - 2.0));
        Ok([g.re, g.im])
    }
}
