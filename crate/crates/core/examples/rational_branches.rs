//! `(z − 1)(z + a)/z` has a pole between its minima; the two logarithm
//! branches give one connection on each side of it.

use hetero::analysis::enumerate_branches;
use hetero::geodesic::TraceOptions;

fn main() -> hetero::Result<()> {
    for a in [0.25, 0.5, 0.75] {
        let curves = enumerate_branches(a, &TraceOptions::default())?;
        println!("a = {a}: {} connections", curves.len());
        for c in &curves {
            let peak = c.samples.iter().map(|s| s.z.im).fold(0.0f64, |m, y| if y.abs() > m.abs() { y } else { m });
            println!("  {} branch: L = {:.10}, furthest Im z = {peak:+.4}", c.branch, c.length);
        }
    }
    Ok(())
}
