//! Hilbert matrices of the truncated algebras and the Koszul matrix identity.
//!
//! cargo run --example koszul_identity

use affkl::hecke::KlTable;
use affkl::koszul::{hilbert_from_bm, hilbert_plus, koszul_identity_check};
use affkl::weyl::{CoxeterGroup, ParabolicType, Sign};

fn main() -> affkl::Result<()> {
    let a1 = CoxeterGroup::parse("A1")?;
    let r = koszul_identity_check(&a1, &a1.element(&[1])?)?;
    println!("A1 minus:\n{}", r.minus.matrix.to_latex());
    println!("A1 plus:\n{}", r.plus.matrix.to_latex());
    println!("identity: {}\n", r.holds());

    for (ty, word) in [("A2", vec![1, 2, 1]), ("A1~", vec![0, 1, 0, 1, 0, 1]), ("A2~", vec![0, 1, 2, 0])] {
        let g = CoxeterGroup::parse(ty)?;
        let w = g.element(&word)?;
        let r = koszul_identity_check(&g, &w)?;
        println!(
            "{ty} w={w}: {}x{} identity {} basic {}/{}",
            r.product.len(),
            r.product.len(),
            r.holds(),
            r.minus.is_basic(),
            r.plus.is_basic()
        );
    }

    // second computation path through BM sheaves
    let a2 = CoxeterGroup::parse("A2")?;
    let w = a2.element(&[1, 2, 1])?;
    let kl = hilbert_plus(&KlTable::ordinary(&a2), &w)?;
    let bm = hilbert_from_bm(&a2, &ParabolicType::empty(), Sign::Plus, &w)?;
    println!("A2 KL formula = BM Hom filtration: {}", kl.matrix == bm.matrix);
    println!("{}", kl.matrix.to_csv());
    Ok(())
}
