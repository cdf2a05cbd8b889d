//! Ordinary Kazhdan-Lusztig polynomials in finite and affine type.
//!
//! cargo run --example kl_polynomials

use affkl::hecke::{kl, mu_coefficient, KlTable};
use affkl::weyl::{CoxeterGroup, ParabolicType};

fn main() -> affkl::Result<()> {
    let a3 = CoxeterGroup::parse("A3")?;
    let x = a3.element(&[2])?;
    let y = a3.element(&[2, 1, 3, 2])?;
    println!("A3: P_{{{x},{y}}}(q) = {}", kl(&a3, &x, &y));

    // non-trivial polynomials in A3
    let table = KlTable::ordinary(&a3);
    let all = a3.all_elements(100)?;
    let mut count = 0;
    for y in &all {
        for x in all.iter().filter(|x| a3.bruhat_leq(x, y)) {
            let p = table.p_q(x, y)?;
            if !p.is_one() {
                count += 1;
                let m = mu_coefficient(&p, y.len() - x.len());
                println!("  P_{{{x},{y}}} = {p}   mu = {m}");
            }
        }
    }
    println!("{count} pairs with P != 1 out of {} elements", all.len());

    let b2 = CoxeterGroup::parse("B2")?;
    let w0 = b2.longest_element(&ParabolicType::new([1, 2]))?;
    println!("B2: w0 = {w0}, |W| = {}", b2.all_elements(100)?.len());

    let a1t = CoxeterGroup::parse("A1~")?;
    let t = KlTable::ordinary(&a1t);
    let top = a1t.element(&[0, 1, 0, 1, 0])?;
    for x in a1t.ideal(&top) {
        println!("A1~: P_{{{x},{top}}} = {}", t.p_q(&x, &top)?);
    }
    Ok(())
}
