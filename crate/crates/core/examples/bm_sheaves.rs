//! Braden-MacPherson sheaves: stalks, defects, Verma flags, and the
//! comparison with parabolic KL polynomials.
//!
//! cargo run --example bm_sheaves

use affkl::bm::{bm_sheaf, default_span, minus_stalks_vs_q, plus_stalks_vs_p};
use affkl::hecke::{KlTable, ModuleType};
use affkl::moment::{Ambient, MomentGraph};
use affkl::weyl::{CoxeterGroup, ParabolicType, Sign};

fn main() -> affkl::Result<()> {
    let b2 = CoxeterGroup::parse("B2")?;
    let w0 = b2.element(&[1, 2, 1, 2])?;
    let g = MomentGraph::build(&b2, &ParabolicType::empty(), Sign::Plus, &w0, Ambient::Coroots)?;
    let top = g.index_of(&w0).unwrap();
    let b = bm_sheaf(&g, top, default_span(&g))?;
    println!("B({w0}) on B2:");
    for y in 0..g.len() {
        println!("  {:>8}: stalk {}  defect {}", g.vertices[y].to_string(), b.stalk(y), b.defect(&g, y)?);
    }
    println!("  self-dual: {}", b.is_self_dual(&g)?);

    // every sheaf against the KL tables
    let a1t = CoxeterGroup::parse("A1~")?;
    let mu = ParabolicType::new([1]);
    let w = a1t.element(&[1, 0, 1, 0])?;
    let plus = MomentGraph::build(&a1t, &mu, Sign::Plus, &w, Ambient::Coroots)?;
    let minus = MomentGraph::build(&a1t, &mu, Sign::Minus, &w, Ambient::Roots)?;
    let tq = KlTable::new(&a1t, mu.clone(), ModuleType::Q)?;
    let tm = KlTable::new(&a1t, mu.clone(), ModuleType::MinusOne)?;
    for x in 0..plus.len() {
        let p = plus_stalks_vs_p(&plus, x, &tq, default_span(&plus))?;
        let m = minus_stalks_vs_q(&minus, minus.index_of(&plus.vertices[x]).unwrap(), &tm, default_span(&minus))?;
        println!("A1~ mu={mu} x={}: plus {}  minus {}", plus.vertices[x], p.as_deref().unwrap_or("ok"), m.as_deref().unwrap_or("ok"));
    }

    // minus-side sheaves need not be self-dual
    let a1 = CoxeterGroup::parse("A1")?;
    let s = a1.element(&[1])?;
    let g = MomentGraph::build(&a1, &ParabolicType::empty(), Sign::Minus, &s, Ambient::Roots)?;
    let b = bm_sheaf(&g, 0, default_span(&g))?;
    println!("A1 minus B(e): {}", serde_json::to_string(&b.to_json(&g)?).unwrap());
    println!("  self-dual: {}", b.is_self_dual(&g)?);
    Ok(())
}
