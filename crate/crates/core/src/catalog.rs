//! Built-in potential families.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::potential::{BranchTag, Potential, PotentialSpec};

/// The four planar families with their parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    /// `zⁿ − 1`, minima at the n-th roots of unity in counterclockwise order.
    TripleWell(u32),
    /// `(1 − z²)(z² + ε²)`, minima `[−1, 1, iε, −iε]`.
    QuarticEps(f64),
    /// `(1 − z²)(z − iε)`, minima `[−1, 1, iε]`.
    CubicIEps(f64),
    /// `(z − 1)(z + a)/z`, minima `[−a, 1]`.
    RationalA(f64),
}

pub const FAMILY_NAMES: [&str; 4] = ["triple-well-n", "quartic-eps", "cubic-ieps", "rational-a"];

impl Family {
    /// Builds a family from its catalog name and parameter slot.
    ///
    /// `triple-well-<n>` carries its parameter in the name; `param` is then
    /// ignored unless the name is the generic `triple-well-n`.
    pub fn from_name(name: &str, param: Option<f64>) -> Result<Self> {
        let fam = match name {
            "triple-well-n" | "triple-well" => {
                let n = param.unwrap_or(3.0);
                if n.fract() != 0.0 || n < 2.0 {
                    return Err(Error::InvalidParameter(format!("n must be an integer ≥ 2, got {n}")));
                }
                Self::TripleWell(n as u32)
            }
            "quartic-eps" => Self::QuarticEps(param.unwrap_or(1.0)),
            "cubic-ieps" => Self::CubicIEps(param.unwrap_or(1.0)),
            "rational-a" => Self::RationalA(param.unwrap_or(0.5)),
            other => match other.strip_prefix("triple-well-").map(str::parse::<u32>) {
                Some(Ok(n)) => Self::TripleWell(n),
                _ => return Err(Error::InvalidParameter(format!("unknown catalog entry `{other}`"))),
            },
        };
        fam.check()?;
        Ok(fam)
    }

    fn check(&self) -> Result<()> {
        match *self {
            Self::TripleWell(n) if n < 2 => Err(Error::InvalidParameter("n must be ≥ 2".into())),
            Self::QuarticEps(e) if !(e > 0.0 && e.is_finite()) => {
                Err(Error::InvalidParameter(format!("quartic-eps needs ε > 0, got {e}")))
            }
            Self::CubicIEps(e) if !(e >= 0.0 && e.is_finite()) => {
                Err(Error::InvalidParameter(format!("cubic-ieps needs ε ≥ 0, got {e}")))
            }
            Self::RationalA(a) if !(a > 0.0 && a < 1.0) => {
                Err(Error::InvalidParameter(format!("rational-a needs 0 < a < 1, got {a}")))
            }
            _ => Ok(()),
        }
    }

    /// Same family with a new parameter value.
    pub fn with_param(&self, value: f64) -> Result<Self> {
        let fam = match self {
            Self::TripleWell(_) => Self::TripleWell(value as u32),
            Self::QuarticEps(_) => Self::QuarticEps(value),
            Self::CubicIEps(_) => Self::CubicIEps(value),
            Self::RationalA(_) => Self::RationalA(value),
        };
        fam.check()?;
        Ok(fam)
    }

    pub fn param(&self) -> f64 {
        match *self {
            Self::TripleWell(n) => n as f64,
            Self::QuarticEps(x) | Self::CubicIEps(x) | Self::RationalA(x) => x,
        }
    }

    pub fn base_name(&self) -> &'static str {
        match self {
            Self::TripleWell(_) => "triple-well-n",
            Self::QuarticEps(_) => "quartic-eps",
            Self::CubicIEps(_) => "cubic-ieps",
            Self::RationalA(_) => "rational-a",
        }
    }

    /// Branch used by default when tracing in this family.
    pub fn default_branch(&self) -> BranchTag {
        match self {
            Self::RationalA(_) => BranchTag::Upper,
            _ => BranchTag::None,
        }
    }

    pub fn spec(&self, p: f64) -> PotentialSpec {
        let c = Complex64::new;
        let one = c(1.0, 0.0);
        let (roots, lead, pole, minima) = match *self {
            Self::TripleWell(n) => {
                let roots: Vec<_> = (0..n).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)).collect();
                (roots.clone(), one, false, roots)
            }
            Self::QuarticEps(e) => {
                let roots = vec![c(-1.0, 0.0), one, c(0.0, e), c(0.0, -e)];
                (roots.clone(), -one, false, roots)
            }
            Self::CubicIEps(e) => {
                let roots = vec![c(-1.0, 0.0), one, c(0.0, e)];
                (roots.clone(), -one, false, roots)
            }
            Self::RationalA(a) => {
                let roots = vec![c(-a, 0.0), one];
                (roots.clone(), one, true, roots)
            }
        };
        PotentialSpec { roots, pole_at_zero: pole, leading_coeff: lead, p, minima }
    }

    pub fn potential(&self, p: f64) -> Result<Potential> {
        self.check()?;
        Potential::new(self.spec(p))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TripleWell(n) => write!(f, "triple-well-{n}"),
            other => write!(f, "{}({})", other.base_name(), other.param()),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_name(s, None)
    }
}
