//! Write the curve, trajectory and figure for one connection into a
//! directory (first argument, default: the system temp dir).

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use hetero::dynamics::{reparametrize, ReparamOptions};
use hetero::geodesic::{trace, TraceOptions};
use hetero::{io, BranchTag, Family};

fn main() -> hetero::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;
    let pot = Family::QuarticEps(1.0).potential(2.0)?;
    let curve = trace(&pot, pot.minimum(0)?, pot.minimum(2)?, BranchTag::None, &TraceOptions::default())?;
    let traj = reparametrize(&pot, &curve, &ReparamOptions::default())?;

    io::write_curve_csv(BufWriter::new(File::create(dir.join("quartic_curve.csv"))?), &pot, &curve)?;
    io::write_trajectory_csv(BufWriter::new(File::create(dir.join("quartic_trajectory.csv"))?), &pot, &traj)?;
    io::write_svg(BufWriter::new(File::create(dir.join("quartic.svg"))?), &pot, &curve)?;
    println!("wrote quartic_curve.csv, quartic_trajectory.csv, quartic.svg to {}", dir.display());
    println!("spec hash {}", io::spec_hash(pot.spec())?);
    Ok(())
}
