//! Check radial monotonicity of `W` around the minima before minimizing,
//! for a well-behaved potential and for one with a spurious dip.

use hetero::action::{minimize, validate_hypothesis, FnLandscape, GridParams, MinimizeOptions, WellPotential};

fn main() -> hetero::Result<()> {
    let good = WellPotential::scalar_two_well();
    println!("(1 - u^2)^2: {}", validate_hypothesis(&good, 100, 8, 0).summary());

    let dip = FnLandscape::new(
        1,
        |u| (1.0 - u[0] * u[0]).powi(2) * ((u[0] - 1.25).powi(2) + 1e-4),
        |u, g| {
            let (a, b) = ((1.0 - u[0] * u[0]).powi(2), (u[0] - 1.25).powi(2) + 1e-4);
            g[0] = -4.0 * u[0] * (1.0 - u[0] * u[0]) * b + 2.0 * a * (u[0] - 1.25);
        },
    );
    let bad = WellPotential::new(dip, vec![-1.0], vec![1.0], 0.5)?;
    let report = validate_hypothesis(&bad, 100, 8, 0);
    println!("with a dip near 1.25: {}", report.summary());

    match minimize(&bad, 2.0, &GridParams::default(), None, &MinimizeOptions::default()) {
        Err(e) => println!("minimize refused: {e}"),
        Ok(r) => println!("unexpected: action {}", r.action),
    }
    Ok(())
}
