//! Locate the parameter at which the connection between −1 and 1 of
//! `(1 − z²)(z − iε)` appears.

use hetero::analysis::{existence_sweep, SweepOptions};
use hetero::Family;

fn main() -> hetero::Result<()> {
    let report = existence_sweep(&Family::CubicIEps(0.5), (0.3, 1.0), 15, &SweepOptions::default())?;
    for v in report.verdicts.iter().filter(|v| report.grid.contains(&v.param)) {
        println!("  ε = {:.4}  {}", v.param, if v.reached { "connects" } else { "-" });
    }
    println!("threshold {:.6} in [{:.6}, {:.6}]", report.threshold_estimate, report.bracket.0, report.bracket.1);
    println!("sqrt(2 sqrt 3 - 3) = {:.6}", (2.0 * 3f64.sqrt() - 3.0).sqrt());
    Ok(())
}
