//! Turn a traced curve into a trajectory `u(x)` for several exponents and
//! report the equipartition and Euler–Lagrange residuals.

use hetero::dynamics::{arrival_times, reparametrize, residual_profile, ReparamOptions};
use hetero::geodesic::{trace, TraceOptions};
use hetero::{BranchTag, Family};

fn main() -> hetero::Result<()> {
    for p in [1.5, 2.0, 3.0] {
        let pot = Family::TripleWell(3).potential(p)?;
        let curve = trace(&pot, pot.minimum(0)?, pot.minimum(1)?, BranchTag::None, &TraceOptions::default())?;
        let traj = reparametrize(&pot, &curve, &ReparamOptions::default())?;
        let profile = residual_profile(&pot, &traj)?;
        let (t_minus, t_plus) = arrival_times(&pot, &curve, 1e6)?;
        println!(
            "p = {p}: {} samples, equipartition {:.1e}, Euler-Lagrange {:.1e}, arrival ({t_minus:.3e}, {t_plus:.3e})",
            traj.samples.len(),
            profile.max_equipartition(),
            profile.max_euler_lagrange()
        );
        let mid = traj.samples.len() / 2;
        println!("  u(0) = {:.6}", traj.samples[mid].u);
    }
    Ok(())
}
