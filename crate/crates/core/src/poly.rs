//! Exact polynomial types: one-variable integer Laurent polynomials, graded
//! ranks, linear forms, multivariate rational polynomials and matrices of
//! Laurent polynomials indexed by group elements.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::weyl::WeylElement;

pub type Q = BigRational;

/// Sparse integer Laurent polynomial in one variable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntLaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl IntLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms(pairs: &[(i32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in pairs {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    /// `c_0 + c_1 t + c_2 t^2 + ...`
    pub fn from_coeffs(cs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in cs.iter().enumerate() {
            p.add_term(i as i32, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        IntLaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// `t -> t^k`; `k = -1` is the bar involution, `k = -2` the usual `q -> t^{-2}`.
    pub fn subs_pow(&self, k: i32) -> Self {
        let mut p = Self::zero();
        for (&e, c) in &self.terms {
            p.add_term(e * k, c.clone());
        }
        p
    }

    pub fn bar(&self) -> Self {
        self.subs_pow(-1)
    }

    /// `t -> -t`.
    pub fn subs_neg(&self) -> Self {
        IntLaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, if e % 2 == 0 { c.clone() } else { -c })).collect(),
        }
    }

    /// Terms with exponent strictly positive.
    pub fn positive_part(&self) -> Self {
        IntLaurentPoly { terms: self.terms.range(1..).map(|(&e, c)| (e, c.clone())).collect() }
    }

    pub fn has_nonneg_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntLaurentPoly { terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect() }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (e, c) in &self.terms {
            m.insert(e.to_string(), bigint_json(c));
        }
        json!({ "coeffs": Value::Object(m) })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse { what: "polynomial", input: v.to_string() };
        let obj = v.get("coeffs").and_then(Value::as_object).ok_or_else(bad)?;
        let mut p = Self::zero();
        for (k, c) in obj {
            let e: i32 = k.parse().map_err(|_| bad())?;
            let c: BigInt = match c {
                Value::Number(n) => n.to_string().parse().map_err(|_| bad())?,
                Value::String(s) => s.parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            };
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}{mono}"));
            }
        }
        out
    }

    pub fn to_latex(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{{{e}}}"),
            };
            if mono.is_empty() || !a.is_one() {
                out.push_str(&a.to_string());
            }
            out.push_str(&mono);
        }
        out
    }
}

pub(crate) fn bigint_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => json!(x),
        None => json!(c.to_string()),
    }
}

impl fmt::Debug for IntLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

impl fmt::Display for IntLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

impl AddAssign<&IntLaurentPoly> for IntLaurentPoly {
    fn add_assign(&mut self, o: &IntLaurentPoly) {
        for (&e, c) in &o.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&IntLaurentPoly> for IntLaurentPoly {
    fn sub_assign(&mut self, o: &IntLaurentPoly) {
        for (&e, c) in &o.terms {
            self.add_term(e, -c);
        }
    }
}

impl Add for &IntLaurentPoly {
    type Output = IntLaurentPoly;
    fn add(self, o: &IntLaurentPoly) -> IntLaurentPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Sub for &IntLaurentPoly {
    type Output = IntLaurentPoly;
    fn sub(self, o: &IntLaurentPoly) -> IntLaurentPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Mul for &IntLaurentPoly {
    type Output = IntLaurentPoly;
    fn mul(self, o: &IntLaurentPoly) -> IntLaurentPoly {
        let mut r = IntLaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &o.terms {
                r.add_term(a + b, x * y);
            }
        }
        r
    }
}

impl Neg for &IntLaurentPoly {
    type Output = IntLaurentPoly;
    fn neg(self) -> IntLaurentPoly {
        IntLaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntLaurentPoly {
            type Output = IntLaurentPoly;
            fn $m(self, o: IntLaurentPoly) -> IntLaurentPoly { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for IntLaurentPoly {
    type Output = IntLaurentPoly;
    fn neg(self) -> IntLaurentPoly {
        -&self
    }
}

/// A graded free module `A{j_1} + ... + A{j_k}`, stored as the sorted shifts.
/// The generator of `A{j}` sits in degree `-j`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GradedRank(Vec<i64>);

impl GradedRank {
    pub fn new(mut shifts: Vec<i64>) -> Self {
        shifts.sort_unstable();
        GradedRank(shifts)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn shifts(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Generator degrees, i.e. the negated shifts.
    pub fn generator_degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.0.iter().map(|j| -j).collect();
        d.sort_unstable();
        d
    }

    pub fn from_generator_degrees(degs: &[i64]) -> Self {
        Self::new(degs.iter().map(|d| -d).collect())
    }

    /// `M{k}`.
    pub fn shifted(&self, k: i64) -> Self {
        Self::new(self.0.iter().map(|j| j + k).collect())
    }

    pub fn negated(&self) -> Self {
        Self::new(self.0.iter().map(|j| -j).collect())
    }

    pub fn union(&self, o: &GradedRank) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Self::new(v)
    }

    /// Removes `o` as a sub-multiset; `None` if it is not contained.
    pub fn minus(&self, o: &GradedRank) -> Option<Self> {
        let mut v = self.0.clone();
        for j in &o.0 {
            let i = v.iter().position(|x| x == j)?;
            v.remove(i);
        }
        Some(GradedRank(v))
    }

    /// Sum of `t^{-j}`: the generators' degrees as exponents.
    pub fn to_poly(&self) -> IntLaurentPoly {
        let mut p = IntLaurentPoly::zero();
        for &j in &self.0 {
            p.add_term(-j as i32, BigInt::one());
        }
        p
    }

    pub fn from_poly(p: &IntLaurentPoly) -> Result<Self> {
        let mut v = Vec::new();
        for (e, c) in p.terms() {
            if c.is_negative() {
                return Err(Error::NegativeRank);
            }
            let n = c.to_usize().ok_or(Error::NegativeRank)?;
            v.extend(std::iter::repeat(-(e as i64)).take(n));
        }
        Ok(Self::new(v))
    }
}

impl fmt::Debug for GradedRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|j| j.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// Coordinates of a vector of `V` in a fixed basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearForm(pub Vec<Q>);

impl LinearForm {
    pub fn from_ints(v: &[i64]) -> Self {
        LinearForm(v.iter().map(|&x| Q::from_integer(x.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coordinate.
    pub fn pivot(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    /// Same line through the origin.
    pub fn proportional(&self, o: &LinearForm) -> bool {
        let (Some(i), Some(j)) = (self.pivot(), o.pivot()) else {
            return self.is_zero() && o.is_zero();
        };
        if i != j {
            return false;
        }
        let r = &o.0[j] / &self.0[i];
        self.0.iter().zip(&o.0).all(|(a, b)| &(a * &r) == b)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|c| if c.is_integer() { bigint_json(c.numer()) } else { json!(c.to_string()) }).collect())
    }
}

/// Exponent vector of a monomial.
pub type Monomial = Vec<u16>;

/// All monomials in `nvars` variables of total degree `k`, lexicographically decreasing.
pub fn monomials(nvars: usize, k: usize) -> Vec<Monomial> {
    fn rec(nvars: usize, k: usize, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(k as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=k).rev() {
            prefix.push(a as u16);
            rec(nvars, k - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, k, &mut Vec::new(), &mut out);
    out
}

/// Sparse polynomial over `Q` in the coordinates of `V`; each variable has degree 2.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::from_monomial(m, Q::one())
    }

    pub fn from_monomial(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero(m.len());
        p.add_term(m, c);
        p
    }

    pub fn from_linear(l: &LinearForm) -> Self {
        let n = l.dim();
        let mut p = Self::zero(n);
        for (i, c) in l.0.iter().enumerate() {
            let mut m = vec![0; n];
            m[i] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// Degree in the grading where `V` sits in degree 2; `None` for zero or inhomogeneous input.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| 2 * m.iter().map(|&a| a as usize).sum::<usize>());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MultiPoly) -> MultiPoly {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let m: Monomial = a.iter().zip(b).map(|(i, j)| i + j).collect();
                r.add_term(m, x * y);
            }
        }
        r
    }

    /// Normal form modulo the linear form `l`: its pivot variable is eliminated.
    pub fn reduce_mod(&self, l: &LinearForm) -> MultiPoly {
        let Some(j) = l.pivot() else { return self.clone() };
        // x_j = -(1/c_j) sum_{k != j} c_k x_k
        let cj = &l.0[j];
        let mut sub = Self::zero(self.nvars);
        for (k, c) in l.0.iter().enumerate() {
            if k != j && !c.is_zero() {
                let mut m = vec![0; self.nvars];
                m[k] = 1;
                sub.add_term(m, -(c / cj));
            }
        }
        let mut powers = vec![Self::one(self.nvars)];
        let mut r = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let a = m[j] as usize;
            while powers.len() <= a {
                let next = powers.last().unwrap().mul(&sub);
                powers.push(next);
            }
            let mut rest = m.clone();
            rest[j] = 0;
            r = r.add(&Self::from_monomial(rest, c.clone()).mul(&powers[a]));
        }
        r
    }
}

/// Square matrix of Laurent polynomials with rows and columns indexed by group elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    index: Vec<WeylElement>,
    entries: Vec<Vec<IntLaurentPoly>>,
}

impl PolyMatrix {
    pub fn zeros(index: Vec<WeylElement>) -> Self {
        let n = index.len();
        PolyMatrix { index, entries: vec![vec![IntLaurentPoly::zero(); n]; n] }
    }

    pub fn identity(index: Vec<WeylElement>) -> Self {
        let mut m = Self::zeros(index);
        for i in 0..m.len() {
            m.entries[i][i] = IntLaurentPoly::one();
        }
        m
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn index(&self) -> &[WeylElement] {
        &self.index
    }

    pub fn position(&self, x: &WeylElement) -> Option<usize> {
        self.index.iter().position(|y| y == x)
    }

    pub fn get(&self, i: usize, j: usize) -> &IntLaurentPoly {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: IntLaurentPoly) {
        self.entries[i][j] = p;
    }

    pub fn entry(&self, x: &WeylElement, y: &WeylElement) -> Option<&IntLaurentPoly> {
        Some(&self.entries[self.position(x)?][self.position(y)?])
    }

    pub fn map(&self, f: impl Fn(&IntLaurentPoly) -> IntLaurentPoly) -> Self {
        PolyMatrix { index: self.index.clone(), entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn transpose(&self) -> Self {
        let n = self.len();
        let mut t = Self::zeros(self.index.clone());
        for i in 0..n {
            for j in 0..n {
                t.entries[j][i] = self.entries[i][j].clone();
            }
        }
        t
    }

    /// Product where the column index `x` of `self` is matched with the row
    /// index `bij(x)` of `rhs`. The result is indexed by `self`'s rows and
    /// `rhs`'s columns, which must be the same list after the bijection is
    /// applied to `rhs`'s index; the product keeps `self`'s index.
    pub fn product_with(&self, rhs: &PolyMatrix, bij: impl Fn(&WeylElement) -> WeylElement) -> Result<PolyMatrix> {
        let n = self.len();
        if rhs.len() != n {
            return Err(Error::Mismatch(format!("{n} vs {} indices", rhs.len())));
        }
        let mut perm = Vec::with_capacity(n);
        for x in &self.index {
            let y = bij(x);
            perm.push(rhs.position(&y).ok_or_else(|| Error::Mismatch(format!("no index {y}")))?);
        }
        let mut out = Self::zeros(self.index.clone());
        for i in 0..n {
            for j in 0..n {
                let mut s = IntLaurentPoly::zero();
                for k in 0..n {
                    let a = &self.entries[i][k];
                    if a.is_zero() {
                        continue;
                    }
                    s += &(a * &rhs.entries[perm[k]][perm[j]]);
                }
                out.entries[i][j] = s;
            }
        }
        Ok(out)
    }

    pub fn product(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.product_with(rhs, |x| x.clone())
    }

    /// First entry that differs from the identity matrix.
    pub fn identity_defect(&self) -> Option<(WeylElement, WeylElement, IntLaurentPoly)> {
        for i in 0..self.len() {
            for j in 0..self.len() {
                let e = &self.entries[i][j];
                let ok = if i == j { e.is_one() } else { e.is_zero() };
                if !ok {
                    return Some((self.index[i].clone(), self.index[j].clone(), e.clone()));
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        let mut rows = Map::new();
        for (i, x) in self.index.iter().enumerate() {
            let mut row = Map::new();
            for (j, y) in self.index.iter().enumerate() {
                row.insert(y.key("."), self.entries[i][j].to_json());
            }
            rows.insert(x.key("."), Value::Object(row));
        }
        json!({
            "index": self.index.iter().map(|x| x.key(".")).collect::<Vec<_>>(),
            "rows": Value::Object(rows),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("row");
        for y in &self.index {
            s.push(',');
            s.push_str(&y.key("."));
        }
        s.push('\n');
        for (i, x) in self.index.iter().enumerate() {
            s.push_str(&x.key("."));
            for e in &self.entries[i] {
                s.push(',');
                s.push_str(&e.fmt_var("t"));
            }
            s.push('\n');
        }
        s
    }

    pub fn to_latex(&self) -> String {
        let n = self.len();
        let name = |x: &WeylElement| -> String {
            if x.is_identity() {
                "e".into()
            } else {
                x.word().iter().map(|s| format!("s_{{{s}}}")).collect()
            }
        };
        let mut s = format!("\\begin{{tabular}}{{c|{}}}\n", "c".repeat(n));
        let head: Vec<String> = self.index.iter().map(|y| format!("${}$", name(y))).collect();
        s.push_str(&format!(" & {} \\\\\n\\hline\n", head.join(" & ")));
        for (i, x) in self.index.iter().enumerate() {
            let row: Vec<String> = self.entries[i].iter().map(|e| format!("${}$", e.to_latex("t"))).collect();
            s.push_str(&format!("${}$ & {} \\\\\n", name(x), row.join(" & ")));
        }
        s.push_str("\\end{tabular}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_to_t_substitution() {
        // (1 + q) with q -> t^{-2} and prefactor t^3
        let p = IntLaurentPoly::from_coeffs(&[1, 1]).subs_pow(-2).shift(3);
        assert_eq!(p, IntLaurentPoly::from_terms(&[(3, 1), (1, 1)]));
        assert_eq!(p.subs_neg(), IntLaurentPoly::from_terms(&[(3, -1), (1, -1)]));
        assert!((&IntLaurentPoly::zero() * &p).is_zero());
    }

    #[test]
    fn graded_rank_conventions() {
        assert!(GradedRank::empty().to_poly().is_zero());
        let r = GradedRank::new(vec![1, -1]);
        assert_eq!(r.to_poly(), IntLaurentPoly::from_terms(&[(-1, 1), (1, 1)]));
        assert_eq!(GradedRank::from_poly(&r.to_poly()).unwrap(), r);
        assert!(GradedRank::from_poly(&IntLaurentPoly::monomial(0, -1)).is_err());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 3).len(), 4);
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(1, 0), vec![vec![0]]);
    }

    #[test]
    fn reduction_kills_the_form() {
        let l = LinearForm::from_ints(&[2, -1, 3]);
        let p = MultiPoly::from_linear(&l).mul(&MultiPoly::var(3, 1));
        assert!(p.reduce_mod(&l).is_zero());
        let x0 = MultiPoly::var(3, 0);
        let r = x0.reduce_mod(&l);
        assert_eq!(r.coeff(&vec![1, 0, 0]), Q::zero());
        assert!(r.sub(&x0).reduce_mod(&l).is_zero());
    }

    #[test]
    fn proportional_forms() {
        let a = LinearForm::from_ints(&[1, 2]);
        assert!(a.proportional(&LinearForm::from_ints(&[-2, -4])));
        assert!(!a.proportional(&LinearForm::from_ints(&[1, 1])));
    }
}
