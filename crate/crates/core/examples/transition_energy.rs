//! Transition energies `|g(β) − g(α)|` for the roots of unity and the
//! pairwise energy table of the quartic family.

use hetero::analysis::pairwise_connections;
use hetero::dynamics::transition_energy;
use hetero::geodesic::TraceOptions;
use hetero::{BranchTag, Family};

fn main() -> hetero::Result<()> {
    for n in 2..=6 {
        let pot = Family::TripleWell(n).potential(2.0)?;
        let e = transition_energy(&pot, pot.minimum(0)?, pot.minimum(1)?, BranchTag::None)?;
        println!("z^{n} - 1, neighbouring roots: {e:.12}");
    }
    println!("4/3 = {:.12}, 3√3/4 = {:.12}", 4.0 / 3.0, 0.75 * 3f64.sqrt());

    let table = pairwise_connections(&Family::QuarticEps(1.0), &TraceOptions::default())?;
    let minima: Vec<String> = table.minima.iter().map(|m| m.to_string()).collect();
    println!("\n{} minima [{}]", table.family, minima.join(", "));
    for row in &table.energies {
        let cells: Vec<String> = row.iter().map(|e| format!("{e:9.6}")).collect();
        println!("  {}", cells.join(" "));
    }
    Ok(())
}
