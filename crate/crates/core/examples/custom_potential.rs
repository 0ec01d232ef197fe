//! Build a potential from a JSON spec and trace all pairs of its minima.

use hetero::geodesic::{trace, TraceOptions};
use hetero::{BranchTag, Potential, PotentialSpec};

const SPEC: &str = r#"{
    "roots": [[-1, 0], [1, 0], [0, 1.5], [0.3, -0.8]],
    "leading_coeff": [1, 0],
    "p": 2,
    "minima": [[-1, 0], [1, 0], [0, 1.5], [0.3, -0.8]]
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec: PotentialSpec = serde_json::from_str(SPEC)?;
    let pot = Potential::new(spec)?;
    let m = pot.minima().to_vec();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let c = trace(&pot, m[i], m[j], BranchTag::None, &TraceOptions::default())?;
            println!("{} -> {}: {:<5} L = {:.6}  {:?}", m[i], m[j], c.reached, c.length, c.outcome);
        }
    }
    Ok(())
}
