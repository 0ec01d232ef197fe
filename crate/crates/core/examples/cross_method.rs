//! Minimize the planar action for the triple well and compare the result
//! with the traced level-set curve, for several exponents.

use hetero::action::{minimize, GridParams, MinimizeOptions, WellPotential};
use hetero::geodesic::{polyline_hausdorff, trace, TraceOptions};
use hetero::{BranchTag, Family};
use num_complex::Complex64;

fn main() -> hetero::Result<()> {
    for p in [1.5, 2.0, 3.0] {
        let pot = Family::TripleWell(3).potential(p)?;
        let curve = trace(&pot, pot.minimum(0)?, pot.minimum(1)?, BranchTag::None, &TraceOptions::default())?;
        let wells = WellPotential::planar(pot, 0, 1, 0.5)?;
        let res = minimize(&wells, p, &GridParams::default(), None, &MinimizeOptions::default())?;
        let nodes: Vec<Complex64> = (0..res.path.len())
            .map(|i| Complex64::new(res.path.node(i)[0], res.path.node(i)[1]))
            .collect();
        println!(
            "p = {p}: action {:.6}, L {:.6}, Hausdorff {:.1e}, {} iterations",
            res.action,
            curve.length,
            polyline_hausdorff(&nodes, &curve.points()),
            res.iterations
        );
    }
    Ok(())
}
