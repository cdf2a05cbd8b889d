//! Residue counts, block keys and linkage invariants of multipartitions.
//!
//! cargo run --example crdaha_blocks

use std::collections::BTreeMap;

use affkl::crdaha::{block_of, dot_stabilizer, k_invariants_of, lambda_set, parabolic_order, Multipartition};

fn main() -> affkl::Result<()> {
    let (e, nu) = (3, vec![2, 1]);
    let n = 4;
    let mut blocks: BTreeMap<Vec<i64>, Vec<String>> = BTreeMap::new();
    for l in Multipartition::all(nu.len(), n).into_iter().filter(|l| l.fits(&nu)) {
        let key = block_of(&l, &nu, e)?;
        blocks.entry(key.weight.clone()).or_default().push(l.to_string());
    }
    println!("P(nu={nu:?}, {n}) for e={e} splits into {} blocks:", blocks.len());
    for (wt, members) in &blocks {
        let via_set = lambda_set(&nu, wt, n, e)?;
        println!("  weight {wt:?}: {} ({} from lambda_set)", members.join("  "), via_set.len());
    }

    let l: Multipartition = "2,1|1".parse()?;
    let k = k_invariants_of(&l, &nu, e)?;
    println!("lambda = {l}: m_i = {:?}, k_i = {:?}, stabilizer type {:?}", k.m, k.k, k.composition);

    // compare with a brute-force stabilizer for m = 2, e = 2
    let nu2 = vec![1, 1];
    for s in ["|", "1|", "1|1", "2|", "2|1", "3|1"] {
        let l: Multipartition = s.parse()?;
        let k = k_invariants_of(&l, &nu2, 2)?;
        let stab = dot_stabilizer(&l.embed(&nu2)?, &nu2, 2, 10)?;
        println!("  {s:>4}: k = {:?}, |W_k| = {}, brute force {}", k.composition, parabolic_order(&k.composition), stab.len());
    }
    Ok(())
}
