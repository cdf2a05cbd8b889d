//! Parabolic KL polynomials of type q and -1, their inverses, and the
//! alternating inversion identity on a truncation.
//!
//! cargo run --example parabolic_inversion

use affkl::hecke::{KlTable, ModuleType};
use affkl::weyl::{CoxeterGroup, ParabolicType};

fn main() -> affkl::Result<()> {
    let g = CoxeterGroup::parse("A1~")?;
    let mu = ParabolicType::new([1]);
    for kind in [ModuleType::Q, ModuleType::MinusOne] {
        let t = KlTable::new(&g, mu.clone(), kind)?;
        let w = g.element(&[1, 0, 1, 0])?;
        let idx = t.truncation(&w)?;
        println!("{} on {{<= {w}}}: {} minimal representatives", t.family(), idx.len());
        let p = t.p_matrix(&idx)?;
        let q = t.q_matrix(&idx)?;
        println!("P(t):\n{}", p.to_csv());
        println!("Q(t):\n{}", q.to_csv());
        let (ok, _) = t.verify_inversion(&w)?;
        println!("sum_y Q_xy P_yx' = delta: {ok}\n");
    }

    let a2 = CoxeterGroup::parse("A2")?;
    let t = KlTable::new(&a2, ParabolicType::new([1]), ModuleType::Q)?;
    let top = a2.element(&[1, 2])?;
    print!("{}", t.export_jsonl(&top, false)?);
    Ok(())
}
