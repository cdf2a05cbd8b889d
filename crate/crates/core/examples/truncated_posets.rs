//! Truncation posets for pairs of parabolic types, the plus/minus
//! bijection, and the coset membership lemma checked exhaustively.
//!
//! cargo run --example truncated_posets

use affkl::weyl::{CoxeterGroup, LemmaC, ParabolicType, Sign};

fn main() -> affkl::Result<()> {
    let g = CoxeterGroup::parse("A2~")?;
    let mu = ParabolicType::new([1]);
    let nu = ParabolicType::new([0]);
    let w = g.ball(5).into_iter().rev().find(|x| g.in_i(x, &mu, &nu, Sign::Minus).unwrap_or(false)).unwrap();
    for sign in [Sign::Minus, Sign::Plus] {
        let w = if sign == Sign::Minus { w.clone() } else { g.bijection_pm(&w, &mu, &nu, Sign::Minus)? };
        match g.truncated_poset(&mu, &nu, sign, &w) {
            Ok(p) => {
                let v: Vec<String> = p.vertices.iter().map(|x| x.to_string()).collect();
                println!("I^nu_(mu,{}) below {w}: {}", sign.symbol(), v.join(" "));
            }
            Err(e) => println!("{}: {e}", sign.symbol()),
        }
    }

    for (ty, len) in [("A1~", 8), ("A2~", 6)] {
        let g = CoxeterGroup::parse(ty)?;
        let labels = g.labels().to_vec();
        let n = labels.len();
        let subsets: Vec<ParabolicType> = (0..(1u32 << n) - 1)
            .map(|m| ParabolicType::new(labels.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &s)| s)))
            .collect();
        let ball = g.ball(len);
        let mut checked = 0;
        let mut bad = 0;
        for mu in &subsets {
            for nu in &subsets {
                for x in &ball {
                    for v in LemmaC::ALL {
                        let (a, b) = g.coset_lemma_membership(x, mu, nu, v)?;
                        checked += 1;
                        bad += usize::from(a != b);
                    }
                }
            }
        }
        println!("{ty}, length <= {len}: {checked} equivalences evaluated, {bad} disagreements");
    }
    Ok(())
}
