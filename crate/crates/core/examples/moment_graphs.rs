//! Truncated moment graphs, the GKM condition and the structure algebra.
//!
//! cargo run --example moment_graphs

use affkl::moment::{free_generators, Ambient, GradedSheaf, MomentGraph};
use affkl::weyl::{CoxeterGroup, ParabolicType, Sign};

fn main() -> affkl::Result<()> {
    let a2 = CoxeterGroup::parse("A2")?;
    let w0 = a2.element(&[1, 2, 1])?;
    let g = MomentGraph::build(&a2, &ParabolicType::empty(), Sign::Minus, &w0, Ambient::Coroots)?;
    println!("{}", serde_json::to_string_pretty(&g.to_json()).unwrap());
    println!("GKM: {}", g.gkm_check());

    let a1t = CoxeterGroup::parse("A1~")?;
    for mu in [ParabolicType::empty(), ParabolicType::new([1])] {
        let w = if mu.is_empty() { a1t.element(&[0, 1, 0])? } else { a1t.element(&[1, 0])? };
        let g = MomentGraph::build(&a1t, &mu, Sign::Plus, &w, Ambient::Coroots)?;
        let z = GradedSheaf::structure(&g, 8);
        let all: Vec<usize> = (0..g.len()).collect();
        let h = z.section_hilbert(&g, &all)?;
        println!(
            "A1~ mu={mu} w={w}: {} vertices, {} edges, GKM {}, structure algebra dims {:?}, generators {:?}",
            g.len(),
            g.edges.len(),
            g.gkm_check(),
            h.values().collect::<Vec<_>>(),
            free_generators(&h, g.dim())?
        );
    }
    Ok(())
}
