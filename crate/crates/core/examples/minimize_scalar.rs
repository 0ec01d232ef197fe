//! Minimize the discrete action of `W(u) = (1 − u²)²` and compare with the
//! exact heteroclinic `tanh x`.

use hetero::action::{minimize, validate_hypothesis, GridParams, MinimizeOptions, WellPotential};

fn main() -> hetero::Result<()> {
    let pot = WellPotential::scalar_two_well();
    let report = validate_hypothesis(&pot, 64, 8, 0);
    println!("hypothesis: {}", report.summary());

    let res = minimize(&pot, 2.0, &GridParams::default(), None, &MinimizeOptions::default())?;
    let dev = (0..res.path.len())
        .map(|i| (res.path.node(i)[0] - res.path.x(i).tanh()).abs())
        .fold(0.0, f64::max);
    println!("action {:.8} (4/3 = {:.8})", res.action, 4.0 / 3.0);
    println!("converged {} after {} iterations, |grad| = {:.1e}", res.converged, res.iterations, res.grad_norm);
    println!("max |u - tanh x| = {dev:.2e}");
    Ok(())
}
