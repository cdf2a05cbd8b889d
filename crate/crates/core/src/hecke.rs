//! Kazhdan-Lusztig polynomials through the parabolic Hecke modules.
//!
//! The module `M` has basis `m_x` for minimal coset representatives `x` and
//!
//! ```text
//! H_s m_x = m_{sx}                        if sx > x, sx minimal
//!         = m_{sx} + (v^-1 - v) m_x       if sx < x
//!         = u m_x                         if sx is not minimal
//! ```
//!
//! with `u = v^-1` for the type-q family and `u = -v` for the type-(-1)
//! family. The canonical basis element is `m_x + sum p_{y,x} m_y` with
//! `p_{y,x}` in `vZ[v]`, and `p_{y,x}(v) = v^{l(x)-l(y)} P_{y,x}(v^-2)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::poly::{IntLaurentPoly, PolyMatrix};
use crate::weyl::{CoxeterGroup, ParabolicType, WeylElement};

pub const CONVENTION: &str = "soergel-v: H_s m_x = u m_x when sx leaves the minimal representatives; \
type q is u=v^-1, type -1 is u=-v; p(v)=v^(l(x)-l(y)) P(v^-2); Q is the signed inverse of P of the same type";

/// Which eigenvalue `H_s` takes on `m_x` when `sx` is not a minimal representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleType {
    /// `u = v^-1`; canonical basis gives the type-q polynomials.
    Q,
    /// `u = -v`; canonical basis gives the type-(-1) polynomials.
    MinusOne,
}

impl ModuleType {
    pub fn tag(self) -> &'static str {
        match self {
            ModuleType::Q => "q",
            ModuleType::MinusOne => "-1",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(ModuleType::Q),
            "-1" | "m1" | "minus-one" => Ok(ModuleType::MinusOne),
            _ => Err(Error::Parse { what: "family", input: s.into() }),
        }
    }

    fn u(self) -> IntLaurentPoly {
        match self {
            ModuleType::Q => IntLaurentPoly::monomial(-1, 1),
            ModuleType::MinusOne => IntLaurentPoly::monomial(1, -1),
        }
    }
}

/// Family tag carried by serialized tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Ordinary,
    Parabolic(ModuleType),
    Inverse(ModuleType),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Ordinary => write!(f, "ordinary"),
            Family::Parabolic(t) => write!(f, "parabolic-{}", t.tag()),
            Family::Inverse(t) => write!(f, "inverse-parabolic-{}", t.tag()),
        }
    }
}

/// A module element: coefficients in `Z[v, v^-1]` on the standard basis.
pub type Elem = BTreeMap<WeylElement, IntLaurentPoly>;

fn add_to(e: &mut Elem, x: WeylElement, p: &IntLaurentPoly) {
    if p.is_zero() {
        return;
    }
    let slot = e.entry(x.clone()).or_default();
    *slot += p;
    if slot.is_zero() {
        e.remove(&x);
    }
}

/// Converts `p(v) = v^{ldiff} P(v^-2)` back to `P(q)`.
pub fn v_to_q(p: &IntLaurentPoly, ldiff: i32) -> IntLaurentPoly {
    let mut out = IntLaurentPoly::zero();
    for (e, c) in p.terms() {
        let k = ldiff - e;
        assert!(k >= 0 && k % 2 == 0, "exponent {e} incompatible with length difference {ldiff}");
        out.add_term(k / 2, c.clone());
    }
    out
}

/// `P(q) -> v^{ldiff} P(v^-2)`.
pub fn q_to_v(p: &IntLaurentPoly, ldiff: i32) -> IntLaurentPoly {
    p.subs_pow(-2).shift(ldiff)
}

/// Memoized canonical basis and bar matrix of one parabolic module.
pub struct KlTable<'g> {
    group: &'g CoxeterGroup,
    mu: ParabolicType,
    kind: ModuleType,
    canon: RwLock<HashMap<WeylElement, Elem>>,
    bars: RwLock<HashMap<WeylElement, Elem>>,
}

impl<'g> KlTable<'g> {
    pub fn new(group: &'g CoxeterGroup, mu: ParabolicType, kind: ModuleType) -> Result<Self> {
        group.validate(&mu)?;
        Ok(KlTable { group, mu, kind, canon: RwLock::new(HashMap::new()), bars: RwLock::new(HashMap::new()) })
    }

    /// Ordinary Kazhdan-Lusztig table.
    pub fn ordinary(group: &'g CoxeterGroup) -> Self {
        Self::new(group, ParabolicType::empty(), ModuleType::Q).expect("empty parabolic")
    }

    pub fn group(&self) -> &'g CoxeterGroup {
        self.group
    }

    pub fn mu(&self) -> &ParabolicType {
        &self.mu
    }

    pub fn kind(&self) -> ModuleType {
        self.kind
    }

    pub fn family(&self) -> Family {
        if self.mu.is_empty() {
            Family::Ordinary
        } else {
            Family::Parabolic(self.kind)
        }
    }

    pub fn in_domain(&self, x: &WeylElement) -> bool {
        self.group.is_min_rep(x, &self.mu)
    }

    fn require(&self, x: &WeylElement) -> Result<()> {
        if self.in_domain(x) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{x} is not a minimal representative for {}", self.mu)))
        }
    }

    /// `(sy, relation)`: `Some(true)` if `sy > y` stays minimal, `Some(false)` if `sy < y`, `None` if it leaves.
    fn step(&self, s: u8, y: &WeylElement) -> (WeylElement, Option<bool>) {
        let sy = self.group.lmul(s, y);
        if sy.len() < y.len() {
            (sy, Some(false))
        } else if self.in_domain(&sy) {
            (sy, Some(true))
        } else {
            (sy, None)
        }
    }

    /// `C_s = H_s + v` applied to `e`.
    fn apply_c(&self, s: u8, e: &Elem) -> Elem {
        let v = IntLaurentPoly::monomial(1, 1);
        let vinv = IntLaurentPoly::monomial(-1, 1);
        let upv = &self.kind.u() + &v;
        let mut out = Elem::new();
        for (y, c) in e {
            match self.step(s, y) {
                (sy, Some(true)) => {
                    add_to(&mut out, sy, c);
                    add_to(&mut out, y.clone(), &(c * &v));
                }
                (sy, Some(false)) => {
                    add_to(&mut out, sy, c);
                    add_to(&mut out, y.clone(), &(c * &vinv));
                }
                (_, None) => add_to(&mut out, y.clone(), &(c * &upv)),
            }
        }
        out
    }

    /// `H_s^{-1} = H_s + v - v^-1` applied to `e`.
    fn apply_h_inv(&self, s: u8, e: &Elem) -> Elem {
        let d = IntLaurentPoly::from_terms(&[(1, 1), (-1, -1)]);
        let fixed = &self.kind.u() + &d;
        let mut out = Elem::new();
        for (y, c) in e {
            match self.step(s, y) {
                (sy, Some(true)) => {
                    add_to(&mut out, sy, c);
                    add_to(&mut out, y.clone(), &(c * &d));
                }
                (sy, Some(false)) => add_to(&mut out, sy, c),
                (_, None) => add_to(&mut out, y.clone(), &(c * &fixed)),
            }
        }
        out
    }

    /// Canonical basis element at `x` in the standard basis.
    pub fn canonical(&self, x: &WeylElement) -> Result<Elem> {
        self.require(x)?;
        Ok(self.canonical_unchecked(x))
    }

    fn canonical_unchecked(&self, x: &WeylElement) -> Elem {
        if let Some(e) = self.canon.read().unwrap().get(x) {
            return e.clone();
        }
        let e = if x.is_identity() {
            Elem::from([(x.clone(), IntLaurentPoly::one())])
        } else {
            let s = x.word()[0];
            let tail = WeylElement::from_word(x.word()[1..].to_vec());
            let mut e = self.apply_c(s, &self.canonical_unchecked(&tail));
            // strip constant terms below the top, largest first
            let below: Vec<WeylElement> = e.keys().filter(|z| *z != x).cloned().collect();
            for z in below.into_iter().rev() {
                let c = e.get(&z).map(|p| p.coeff(0)).unwrap_or_default();
                if !c.is_zero() {
                    let cz = self.canonical_unchecked(&z);
                    for (y, p) in &cz {
                        add_to(&mut e, y.clone(), &p.scale(&-&c));
                    }
                }
            }
            e
        };
        self.canon.write().unwrap().insert(x.clone(), e.clone());
        e
    }

    /// `p_{y,x}` in the `v` normalization.
    pub fn p_v(&self, y: &WeylElement, x: &WeylElement) -> Result<IntLaurentPoly> {
        self.require(y)?;
        Ok(self.canonical(x)?.get(y).cloned().unwrap_or_default())
    }

    /// `P_{y,x}(q)`.
    pub fn p_q(&self, y: &WeylElement, x: &WeylElement) -> Result<IntLaurentPoly> {
        let p = self.p_v(y, x)?;
        Ok(v_to_q(&p, x.len() as i32 - y.len() as i32))
    }

    /// `bar(m_x)` in the standard basis.
    pub fn bar_standard(&self, x: &WeylElement) -> Result<Elem> {
        self.require(x)?;
        Ok(self.bar_unchecked(x))
    }

    fn bar_unchecked(&self, x: &WeylElement) -> Elem {
        if let Some(e) = self.bars.read().unwrap().get(x) {
            return e.clone();
        }
        let e = if x.is_identity() {
            Elem::from([(x.clone(), IntLaurentPoly::one())])
        } else {
            let s = x.word()[0];
            let tail = WeylElement::from_word(x.word()[1..].to_vec());
            self.apply_h_inv(s, &self.bar_unchecked(&tail))
        };
        self.bars.write().unwrap().insert(x.clone(), e.clone());
        e
    }

    /// `r_{y,x}`: coefficient of `m_y` in `bar(m_x)`.
    pub fn r_v(&self, y: &WeylElement, x: &WeylElement) -> Result<IntLaurentPoly> {
        Ok(self.bar_standard(x)?.get(y).cloned().unwrap_or_default())
    }

    /// Canonical basis element at `x` by a triangular solve against the bar matrix.
    pub fn bar_solve(&self, x: &WeylElement) -> Result<Elem> {
        self.require(x)?;
        let mut below: Vec<WeylElement> = self.group.ideal(x).into_iter().filter(|y| self.in_domain(y)).collect();
        below.reverse();
        let mut p: Elem = Elem::new();
        p.insert(x.clone(), IntLaurentPoly::one());
        for z in below.iter().skip(1) {
            // p_z - bar(p_z) = sum_{z < y <= x} r_{z,y} bar(p_y)
            let mut rhs = IntLaurentPoly::zero();
            for (y, py) in &p {
                let r = self.r_v(z, y)?;
                if !r.is_zero() {
                    rhs += &(&r * &py.bar());
                }
            }
            let pz = rhs.positive_part();
            if !pz.is_zero() {
                p.insert(z.clone(), pz);
            }
        }
        Ok(p)
    }

    /// Domain elements below `w`, in (length, word) order.
    pub fn truncation(&self, w: &WeylElement) -> Result<Vec<WeylElement>> {
        self.require(w)?;
        Ok(self.group.ideal(w).into_iter().filter(|y| self.in_domain(y)).collect())
    }

    /// `P(t)_{y,x} = p_{y,x}(t)` on the given index.
    pub fn p_matrix(&self, index: &[WeylElement]) -> Result<PolyMatrix> {
        let mut m = PolyMatrix::zeros(index.to_vec());
        for (j, x) in index.iter().enumerate() {
            let cx = self.canonical(x)?;
            for (i, y) in index.iter().enumerate() {
                if let Some(p) = cx.get(y) {
                    m.set(i, j, p.clone());
                }
            }
        }
        Ok(m)
    }

    /// `Q(t)_{x,y} = t^{l(y)-l(x)} Q_{x,y}(t^-2)` on the given index, which must be
    /// a Bruhat ideal listed in a linear extension. Computed from the bar matrix
    /// without inverting `P`.
    pub fn q_matrix(&self, index: &[WeylElement]) -> Result<PolyMatrix> {
        let n = index.len();
        let mut r = vec![vec![IntLaurentPoly::zero(); n]; n];
        for (j, y) in index.iter().enumerate() {
            let b = self.bar_standard(y)?;
            for (i, z) in index.iter().enumerate() {
                if let Some(p) = b.get(z) {
                    r[i][j] = p.clone();
                }
            }
        }
        let mut qp = vec![vec![IntLaurentPoly::zero(); n]; n];
        for a in 0..n {
            qp[a][a] = IntLaurentPoly::one();
            for b in a + 1..n {
                let mut s = IntLaurentPoly::zero();
                for z in a..b {
                    if !qp[a][z].is_zero() && !r[z][b].is_zero() {
                        s += &(&qp[a][z] * &r[z][b]);
                    }
                }
                qp[a][b] = -s.positive_part();
            }
        }
        let mut m = PolyMatrix::zeros(index.to_vec());
        for a in 0..n {
            for b in a..n {
                let sign = (index[b].len() as i64 - index[a].len() as i64).rem_euclid(2);
                let e = if sign == 0 { qp[a][b].clone() } else { -qp[a][b].clone() };
                m.set(a, b, e);
            }
        }
        Ok(m)
    }

    /// `Q_{x,y}(q)` computed on the truncation below `y`.
    pub fn q_q(&self, x: &WeylElement, y: &WeylElement) -> Result<IntLaurentPoly> {
        self.require(x)?;
        let idx = self.truncation(y)?;
        let Some(i) = idx.iter().position(|z| z == x) else { return Ok(IntLaurentPoly::zero()) };
        let m = self.q_matrix(&idx)?;
        Ok(v_to_q(m.get(i, idx.len() - 1), y.len() as i32 - x.len() as i32))
    }

    /// `sum_y (-1)^{l(y)-l(x)} Q_{x,y} P_{y,x'}` over the truncation below `w`, in `q`.
    pub fn verify_inversion(&self, w: &WeylElement) -> Result<(bool, PolyMatrix)> {
        let idx = self.truncation(w)?;
        let p = self.p_matrix(&idx)?;
        let q = self.q_matrix(&idx)?;
        let n = idx.len();
        let l = |i: usize| idx[i].len() as i32;
        let mut out = PolyMatrix::zeros(idx.clone());
        for a in 0..n {
            for b in 0..n {
                let mut s = IntLaurentPoly::zero();
                for y in 0..n {
                    let (qe, pe) = (q.get(a, y), p.get(y, b));
                    if qe.is_zero() || pe.is_zero() {
                        continue;
                    }
                    let term = &v_to_q(qe, l(y) - l(a)) * &v_to_q(pe, l(b) - l(y));
                    if (l(y) - l(a)) % 2 == 0 {
                        s += &term;
                    } else {
                        s -= &term;
                    }
                }
                out.set(a, b, s);
            }
        }
        Ok((out.identity_defect().is_none(), out))
    }

    /// JSON lines `{type, mu, family, x, y, coeffs}` for every pair below `w`.
    pub fn export_jsonl(&self, w: &WeylElement, inverse: bool) -> Result<String> {
        let idx = self.truncation(w)?;
        let family = if inverse { Family::Inverse(self.kind) } else { self.family() };
        let mat = if inverse { self.q_matrix(&idx)? } else { self.p_matrix(&idx)? };
        let mut out = String::new();
        for (i, a) in idx.iter().enumerate() {
            for (j, b) in idx.iter().enumerate() {
                let e = mat.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let ldiff = (a.len() as i32 - b.len() as i32).abs();
                let rec = json!({
                    "type": self.group.cartan_type().to_string(),
                    "mu": self.mu.key(),
                    "family": family.to_string(),
                    "convention": CONVENTION,
                    "x": a.key("."),
                    "y": b.key("."),
                    "coeffs": v_to_q(e, ldiff).to_json()["coeffs"].clone(),
                });
                out.push_str(&rec.to_string());
                out.push('\n');
            }
        }
        Ok(out)
    }
}

/// `mu(y, x)`: coefficient of `q^{(l(x)-l(y)-1)/2}` in `P_{y,x}`.
pub fn mu_coefficient(p: &IntLaurentPoly, ldiff: usize) -> BigInt {
    if ldiff % 2 == 0 {
        return BigInt::zero();
    }
    p.coeff(((ldiff - 1) / 2) as i32)
}

/// Ordinary `P_{x,y}(q)`; zero unless `x <= y`.
pub fn kl(group: &CoxeterGroup, x: &WeylElement, y: &WeylElement) -> IntLaurentPoly {
    KlTable::ordinary(group).p_q(x, y).expect("ordinary table has full domain")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> CoxeterGroup {
        CoxeterGroup::parse(s).unwrap()
    }

    #[test]
    fn a3_singular_pair() {
        let a3 = g("A3");
        let x = a3.element(&[2]).unwrap();
        let y = a3.element(&[2, 1, 3, 2]).unwrap();
        assert_eq!(kl(&a3, &x, &y), IntLaurentPoly::from_coeffs(&[1, 1]));
        assert_eq!(kl(&a3, &x, &x), IntLaurentPoly::one());
        let s1 = a3.element(&[1]).unwrap();
        assert!(kl(&a3, &y, &s1).is_zero());
    }

    #[test]
    fn grassmannian_a2() {
        let a2 = g("A2");
        let mu = ParabolicType::new([1]);
        let e = WeylElement::identity();
        let x = a2.element(&[1, 2]).unwrap();
        let tq = KlTable::new(&a2, mu.clone(), ModuleType::Q).unwrap();
        let tm = KlTable::new(&a2, mu, ModuleType::MinusOne).unwrap();
        assert_eq!(tq.p_q(&e, &x).unwrap(), IntLaurentPoly::one());
        assert!(tm.p_q(&e, &x).unwrap().is_zero());
        for y in tm.truncation(&x).unwrap() {
            assert_eq!(tm.q_q(&y, &x).unwrap(), IntLaurentPoly::one());
        }
    }

    #[test]
    fn bar_solver_matches_recursion_b2() {
        let b2 = g("B2");
        let t = KlTable::ordinary(&b2);
        for x in b2.all_elements(10).unwrap() {
            assert_eq!(t.canonical(&x).unwrap(), t.bar_solve(&x).unwrap(), "{x}");
        }
    }

    #[test]
    fn inversion_a2_full() {
        let a2 = g("A2");
        let w0 = a2.element(&[1, 2, 1]).unwrap();
        for k in [ModuleType::Q, ModuleType::MinusOne] {
            assert!(KlTable::new(&a2, ParabolicType::empty(), k).unwrap().verify_inversion(&w0).unwrap().0);
        }
    }

    #[test]
    fn non_representative_rejected() {
        let a2 = g("A2");
        let t = KlTable::new(&a2, ParabolicType::new([1]), ModuleType::Q).unwrap();
        assert!(t.canonical(&a2.element(&[1]).unwrap()).is_err());
    }
}
