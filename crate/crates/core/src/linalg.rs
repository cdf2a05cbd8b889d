//! Fraction-free linear algebra over the integers, used for all rational
//! computations after clearing denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Q;

pub type IntVec = Vec<BigInt>;

/// Divides by the content and makes the leading entry positive.
pub fn primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let lead_neg = v.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
    if lead_neg {
        g = -g;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Scales a rational vector to a primitive integer vector on the same line.
pub fn clear_denominators(v: &[Q]) -> IntVec {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: IntVec = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive(&mut out);
    out
}

/// `v <- a*v - b*w` with `a = w[c]`, `b = v[c]`, then made primitive.
fn eliminate(v: &mut IntVec, w: &IntVec, c: usize) {
    if v[c].is_zero() {
        return;
    }
    let a = w[c].clone();
    let b = v[c].clone();
    let g = a.gcd(&b);
    let (a, b) = (&a / &g, &b / &g);
    for (x, y) in v.iter_mut().zip(w) {
        *x = &*x * &a - y * &b;
    }
    primitive(v);
}

/// Incrementally built row space in semi-echelon form.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    rows: Vec<(usize, IntVec)>,
}

impl RowSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: IntVec) -> IntVec {
        for (c, r) in &self.rows {
            eliminate(&mut v, r, *c);
        }
        v
    }

    /// Adds `v`; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, v: IntVec) -> bool {
        let v = self.reduce(v);
        match v.iter().position(|x| !x.is_zero()) {
            Some(c) => {
                self.rows.push((c, v));
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &IntVec) -> bool {
        self.reduce(v.clone()).iter().all(Zero::is_zero)
    }
}

/// Rank of a list of rows.
pub fn rank(rows: &[IntVec]) -> usize {
    let mut s = RowSpace::new();
    rows.iter().filter(|r| s.insert((*r).clone())).count()
}

/// Basis of `{x : M x = 0}` for `M` given by rows of length `ncols`.
pub fn kernel(rows: &[IntVec], ncols: usize) -> Vec<IntVec> {
    // reduced echelon form with integer pivots
    let mut m: Vec<IntVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for (k, &c) in pivots.iter().enumerate() {
            eliminate(&mut v, &m[k], c);
        }
        let Some(c) = v.iter().position(|x| !x.is_zero()) else { continue };
        for k in 0..m.len() {
            eliminate(&mut m[k], &v, c);
        }
        m.push(v);
        pivots.push(c);
    }
    let is_pivot: Vec<bool> = (0..ncols).map(|c| pivots.contains(&c)).collect();
    let mut out = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        // x_f = L, x_{p_k} = -m_k[f] L / m_k[p_k]
        let l = pivots.iter().enumerate().fold(BigInt::one(), |acc, (k, &c)| {
            if m[k][f].is_zero() {
                acc
            } else {
                acc.lcm(&m[k][c])
            }
        });
        let mut x = vec![BigInt::zero(); ncols];
        x[f] = l.clone();
        for (k, &c) in pivots.iter().enumerate() {
            if !m[k][f].is_zero() {
                x[c] = -(&m[k][f] * &l) / &m[k][c];
            }
        }
        primitive(&mut x);
        out.push(x);
    }
    out
}

/// `M x` for a matrix given by rows.
pub fn apply(rows: &[IntVec], x: &IntVec) -> IntVec {
    rows.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}
