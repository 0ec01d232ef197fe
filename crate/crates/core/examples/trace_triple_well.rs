//! Trace the connection between two cube roots of unity for `f(z) = z³ − 1`
//! and check it against the closed-form polar equation of the curve.

use std::f64::consts::PI;

use hetero::geodesic::{levelset_residual, trace, TraceOptions};
use hetero::{BranchTag, Family};

fn main() -> hetero::Result<()> {
    let pot = Family::TripleWell(3).potential(2.0)?;
    let (alpha, beta) = (pot.minimum(0)?, pot.minimum(1)?);
    let curve = trace(&pot, alpha, beta, BranchTag::None, &TraceOptions::default())?;

    println!("{alpha} -> {beta}: reached = {}, L = {:.12}", curve.reached, curve.length);
    println!("samples: {}, level-set residual {:.2e}", curve.samples.len(), levelset_residual(&pot, &curve)?);

    // 4r cos(θ − π/3) = r⁴ cos(4θ − π/3) + 3/2
    let worst = curve
        .points()
        .iter()
        .map(|z| {
            let (r, t) = z.to_polar();
            (4.0 * r * (t - PI / 3.0).cos() - r.powi(4) * (4.0 * t - PI / 3.0).cos() - 1.5).abs()
        })
        .fold(0.0, f64::max);
    println!("polar identity residual {worst:.2e}");

    for s in curve.samples.iter().step_by(curve.samples.len() / 8) {
        println!("  l = {:.4}  z = {:.6}", s.l, s.z);
    }
    Ok(())
}
