//! Multipartition combinatorics for blocks of cyclotomic rational DAHA
//! category O: residue counts, block keys and the linkage invariants.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::cartan::AffineWeight;
use crate::error::{Error, Result};
use crate::weyl::{CoxeterGroup, WeylElement};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Parse { what: "partition", input: format!("{parts:?}") });
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                go(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multipartition(Vec<Partition>);

impl Multipartition {
    pub fn new(parts: Vec<Partition>) -> Self {
        Multipartition(parts)
    }

    pub fn empty(level: usize) -> Self {
        Multipartition(vec![Partition::default(); level])
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    /// Whether `l(lambda_p) <= nu_p` for all `p`.
    pub fn fits(&self, nu: &[usize]) -> bool {
        self.level() == nu.len() && self.0.iter().zip(nu).all(|(l, &n)| l.len() <= n)
    }

    /// The tuple in `N^m` obtained by padding each component with zeros to length `nu_p`.
    pub fn embed(&self, nu: &[usize]) -> Result<Vec<i64>> {
        if !self.fits(nu) {
            return Err(Error::Domain(format!("{self} does not fit nu = {nu:?}")));
        }
        let mut out = Vec::with_capacity(nu.iter().sum());
        for (l, &n) in self.0.iter().zip(nu) {
            out.extend(l.parts().iter().map(|&p| p as i64));
            out.extend(std::iter::repeat(0).take(n - l.len()));
        }
        Ok(out)
    }

    /// `P(l, n)`.
    pub fn all(level: usize, n: usize) -> Vec<Multipartition> {
        if level == 0 {
            return if n == 0 { vec![Multipartition(Vec::new())] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for k in 0..=n {
            for head in Partition::all(k) {
                for tail in Multipartition::all(level - 1, n - k) {
                    let mut v = vec![head.clone()];
                    v.extend(tail.0);
                    out.push(Multipartition(v));
                }
            }
        }
        out
    }
}

impl FromStr for Multipartition {
    type Err = Error;

    /// `"2,1|1|"` is `((2,1),(1),())`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "multipartition", input: s.to_string() };
        let mut comps = Vec::new();
        for c in s.trim().split('|') {
            let c = c.trim();
            let parts = if c.is_empty() {
                Vec::new()
            } else {
                c.split(',').map(|p| p.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?
            };
            comps.push(Partition::new(parts).map_err(|_| bad())?);
        }
        Ok(Multipartition(comps))
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> =
            self.0.iter().map(|p| p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}", comps.join("|"))
    }
}

pub fn parse_nu(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse { what: "nu", input: s.to_string() }))
        .collect()
}

fn check_e(e: usize) -> Result<()> {
    if e == 0 {
        return Err(Error::Domain("e must be positive".into()));
    }
    Ok(())
}

/// Counts cells `(x, y)`, `y <= lambda_x`, by the class of `y - x + pi_x - 1` mod `e`.
pub fn node_count(lambda: &[i64], pi: &[i64], e: usize) -> Vec<usize> {
    let mut n = vec![0; e];
    for (x, (&row, &p)) in lambda.iter().zip(pi).enumerate() {
        for y in 1..=row {
            let r = (y - (x as i64 + 1) + p - 1).rem_euclid(e as i64);
            n[r as usize] += 1;
        }
    }
    n
}

/// Residue counts `y - x + nu_p mod e` for a tuple cut into consecutive blocks of sizes `nu`.
pub fn tuple_node_count_nu(tuple: &[i64], nu: &[usize], e: usize) -> Vec<usize> {
    let mut n = vec![0; e];
    let mut start = 0;
    for &np in nu {
        for (x, &row) in tuple[start..start + np].iter().enumerate() {
            for y in 1..=row {
                let r = (y - (x as i64 + 1) + np as i64).rem_euclid(e as i64);
                n[r as usize] += 1;
            }
        }
        start += np;
    }
    n
}

/// `n_i^nu(lambda)`.
pub fn node_count_nu(lambda: &Multipartition, nu: &[usize], e: usize) -> Result<Vec<usize>> {
    check_e(e)?;
    if lambda.level() != nu.len() {
        return Err(Error::Mismatch(format!("level {} vs nu {nu:?}", lambda.level())));
    }
    let mut n = vec![0; e];
    for (l, &np) in lambda.components().iter().zip(nu) {
        for (x, &row) in l.parts().iter().enumerate() {
            for y in 1..=row {
                let r = (y as i64 - (x as i64 + 1) + np as i64).rem_euclid(e as i64);
                n[r as usize] += 1;
            }
        }
    }
    Ok(n)
}

/// `(nu_1, ..., 1, nu_2, ..., 1, ...)`.
pub fn rho_nu(nu: &[usize]) -> Vec<i64> {
    nu.iter().flat_map(|&n| (1..=n as i64).rev()).collect()
}

/// `-rho = (1, 2, ..., m)`.
pub fn neg_rho(m: usize) -> Vec<i64> {
    (1..=m as i64).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockKey {
    pub e: usize,
    pub nu: Vec<usize>,
    /// `n_i^nu` for `i` in `Z/e`.
    pub n: Vec<usize>,
    pub a: usize,
    /// `sum_p omega_{nu_p} - sum_i (n_i - a) alpha_i` as an `e`-tuple with minimum 0.
    pub weight: Vec<i64>,
}

impl BlockKey {
    pub fn to_json(&self) -> Value {
        json!({"e": self.e, "nu": self.nu, "n": self.n, "a": self.a, "weight": self.weight})
    }
}

/// The block weight of residue counts `n`, as an `e`-tuple modulo `Z 1^e`.
pub fn block_weight(nu: &[usize], n: &[usize], e: usize) -> Vec<i64> {
    let mut w = vec![0i64; e];
    for &np in nu {
        for c in w.iter_mut().take(np % e) {
            *c += 1;
        }
    }
    let a = n[0] as i64;
    for i in 1..e {
        let c = n[i] as i64 - a;
        w[i - 1] -= c;
        w[i] += c;
    }
    let lo = *w.iter().min().unwrap();
    w.iter().map(|x| x - lo).collect()
}

pub fn block_of(lambda: &Multipartition, nu: &[usize], e: usize) -> Result<BlockKey> {
    let n = node_count_nu(lambda, nu, e)?;
    Ok(BlockKey { e, nu: nu.to_vec(), a: n[0], weight: block_weight(nu, &n, e), n })
}

/// Multipartitions in `P(nu, n)` whose block weight is `weight`.
pub fn lambda_set(nu: &[usize], weight: &[i64], n: usize, e: usize) -> Result<Vec<Multipartition>> {
    check_e(e)?;
    if n > 20 {
        return Err(Error::Bound(n));
    }
    let lo = weight.iter().copied().min().unwrap_or(0);
    let weight: Vec<i64> = weight.iter().map(|x| x - lo).collect();
    let mut out = Vec::new();
    for l in Multipartition::all(nu.len(), n) {
        if l.fits(nu) && block_of(&l, nu, e)?.weight == weight {
            out.push(l);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KInvariants {
    pub m: Vec<usize>,
    pub k: Vec<usize>,
    /// `(k_0 - k_1, ..., k_{e-1} - k_0 + m)`.
    pub composition: Vec<i64>,
}

impl KInvariants {
    pub fn to_json(&self) -> Value {
        json!({"m_i": self.m, "k_i": self.k, "k": self.composition})
    }
}

/// Linkage invariants of a tuple in `N^m`; fails if `k_i = m_i + n_i^nu` does not hold.
pub fn k_invariants(tuple: &[i64], nu: &[usize], e: usize) -> Result<KInvariants> {
    check_e(e)?;
    let m = nu.iter().sum::<usize>();
    if tuple.len() != m || tuple.iter().any(|&x| x < 0) {
        return Err(Error::Mismatch(format!("{tuple:?} is not in N^{m}")));
    }
    let rn = rho_nu(nu);
    let pi = neg_rho(m);
    let mi = node_count(&rn, &pi, e);
    let shifted: Vec<i64> = tuple.iter().zip(&rn).map(|(a, b)| a + b).collect();
    let k = node_count(&shifted, &pi, e);
    let nn = tuple_node_count_nu(tuple, nu, e);
    if (0..e).any(|i| k[i] != mi[i] + nn[i]) {
        return Err(Error::Mismatch(format!("k = {k:?}, m = {mi:?}, n^nu = {nn:?}")));
    }
    let mut composition: Vec<i64> = (0..e).map(|i| k[i] as i64 - k[(i + 1) % e] as i64).collect();
    composition[e - 1] += m as i64;
    Ok(KInvariants { m: mi, k, composition })
}

pub fn k_invariants_of(lambda: &Multipartition, nu: &[usize], e: usize) -> Result<KInvariants> {
    k_invariants(&lambda.embed(nu)?, nu, e)
}

/// The composition naming the parabolic type of the stabilizer.
pub fn stabilizer_type(lambda: &Multipartition, nu: &[usize], e: usize) -> Result<Vec<i64>> {
    Ok(k_invariants_of(lambda, nu, e)?.composition)
}

/// `prod_j k_j!`.
pub fn parabolic_order(composition: &[i64]) -> u64 {
    composition.iter().map(|&k| (1..=k.max(0) as u64).product::<u64>()).product()
}

/// `lambda + rho^nu - rho` at level `-e-m`, for the affine group of type `A_{m-1}`.
pub fn shifted_weight(tuple: &[i64], nu: &[usize], e: usize) -> AffineWeight {
    let m = tuple.len();
    let g: Vec<i64> = tuple.iter().zip(rho_nu(nu)).zip(neg_rho(m)).map(|((a, b), c)| a + b + c).collect();
    let fin: Vec<i64> = (0..m - 1).map(|i| g[i] - g[i + 1]).collect();
    AffineWeight::from_ints(0, &fin, -((e + m) as i64))
}

fn same_mod_delta(a: &AffineWeight, b: &AffineWeight) -> bool {
    a.fin == b.fin && a.lambda0 == b.lambda0
}

/// Elements of length `<= radius` fixing the shifted weight under the dot action, modulo `delta`.
pub fn dot_stabilizer(tuple: &[i64], nu: &[usize], e: usize, radius: usize) -> Result<Vec<WeylElement>> {
    let m = tuple.len();
    if m < 2 {
        return Err(Error::Domain("needs m >= 2".into()));
    }
    let g = CoxeterGroup::parse(&format!("A{}~", m - 1))?;
    let lam = shifted_weight(tuple, nu, e);
    let mut out = Vec::new();
    for w in g.ball(radius) {
        if same_mod_delta(&g.datum().dot_action(&w, &lam)?, &lam) {
            out.push(w);
        }
    }
    Ok(out)
}

/// Whether the shifted weights of two tuples lie in one dot orbit, searching up to `radius`.
pub fn dot_linked(a: &[i64], b: &[i64], nu: &[usize], e: usize, radius: usize) -> Result<bool> {
    let m = a.len();
    let g = CoxeterGroup::parse(&format!("A{}~", m - 1))?;
    let la = shifted_weight(a, nu, e);
    let lb = shifted_weight(b, nu, e);
    for w in g.ball(radius) {
        if same_mod_delta(&g.datum().dot_action(&w, &la)?, &lb) {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn block_report(lambda: &Multipartition, nu: &[usize], e: usize) -> Result<Value> {
    let key = block_of(lambda, nu, e)?;
    let k = k_invariants_of(lambda, nu, e)?;
    Ok(json!({
        "lambda": lambda.to_string(),
        "a": key.a,
        "n": key.n,
        "weight": key.weight,
        "k": k.k,
        "m_i": k.m,
        "stabilizer": k.composition,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let l = mp("2,1|1|");
        assert_eq!(l.level(), 3);
        assert_eq!(l.size(), 4);
        assert_eq!(l.to_string(), "2,1|1|");
        assert!("1,2|".parse::<Multipartition>().is_err());
    }

    #[test]
    fn cell_residues() {
        assert_eq!(node_count(&[2, 1], &[0, 0], 2), vec![2, 1]);
        assert_eq!(node_count(&[0, 0], &[3, 1], 3), vec![0, 0, 0]);
    }

    #[test]
    fn embedding() {
        assert_eq!(mp("2,1|1").embed(&[3, 2]).unwrap(), vec![2, 1, 0, 1, 0]);
        assert!(mp("1,1,1|").embed(&[2, 2]).is_err());
    }

    #[test]
    fn empty_block() {
        let k = block_of(&Multipartition::empty(2), &[1, 2], 3).unwrap();
        assert_eq!(k.a, 0);
        assert_eq!(k.n, vec![0, 0, 0]);
        // omega_1 + omega_2 = (2, 1, 0)
        assert_eq!(k.weight, vec![2, 1, 0]);
    }

    #[test]
    fn zero_lambda_gives_m() {
        let k = k_invariants(&[0, 0, 0], &[3], 2).unwrap();
        assert_eq!(k.k, k.m);
        assert_eq!(k.m, vec![4, 2]);
        assert_eq!(k.composition, vec![2, 1]);
    }

    #[test]
    fn partition_counts() {
        let c: Vec<usize> = (0..8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(c, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(Multipartition::all(2, 2).len(), 5);
    }
}
