//! Rank-level checks of translation onto and off the walls.
//!
//! cargo run --example theta_translation

use affkl::koszul::theta_decomposition_check;
use affkl::weyl::{CoxeterGroup, ParabolicType};

fn main() -> affkl::Result<()> {
    for (ty, word) in [("A2", vec![1, 2]), ("A1~", vec![1, 0, 1, 0])] {
        let g = CoxeterGroup::parse(ty)?;
        let mu = ParabolicType::new([1]);
        let w = g.element(&word)?;
        let r = theta_decomposition_check(&g, &mu, &w)?;
        println!("{ty} mu={mu} w={w} z={}: structure algebra ranks {}", r.z, r.structure.holds());
        for c in &r.cases {
            let summands: Vec<String> = c.summands.iter().map(|(t, j)| format!("B({t}){{{j}}}")).collect();
            println!(
                "  x={:<8} at root {} (expected {})  minus {}  plus {}  = {}",
                c.x.to_string(),
                c.at_root,
                c.expected,
                c.minus.holds(),
                c.plus.holds(),
                summands.join(" + ")
            );
        }
    }
    Ok(())
}
