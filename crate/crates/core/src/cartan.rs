//! Root data of finite and untwisted affine Cartan types.
//!
//! Weights of the affine algebra are written in coordinates
//! `(c_delta, finite part, c_lambda0)` where the finite part is expressed in
//! the fundamental weight basis. The invariant form pairs `delta` with
//! `Lambda0` to 1 and both are isotropic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::weyl::WeylElement;

pub type Q = BigRational;

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub letter: char,
    pub rank: usize,
    pub affine: bool,
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "Cartan type", input: s.to_string() };
        let t = s.trim();
        let (body, affine) = match t.strip_suffix('~') {
            Some(b) => (b, true),
            None => (t, false),
        };
        let mut chars = body.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        let ok = match letter {
            'A' => rank >= 1,
            'B' => rank >= 2,
            'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if !ok {
            return Err(bad());
        }
        Ok(CartanType { letter, rank, affine })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.letter, self.rank, if self.affine { "~" } else { "" })
    }
}

/// Standard table of dual Coxeter numbers.
pub fn dual_coxeter_table(letter: char, n: usize) -> usize {
    match letter {
        'A' => n + 1,
        'B' => 2 * n - 1,
        'C' => n + 1,
        'D' => 2 * n - 2,
        'E' => match n {
            6 => 12,
            7 => 18,
            _ => 30,
        },
        'F' => 9,
        'G' => 4,
        _ => unreachable!(),
    }
}

/// Gram matrix of the finite simple roots, long roots of squared length 2.
fn finite_gram(letter: char, n: usize) -> Vec<Vec<Q>> {
    let mut g = vec![vec![Q::zero(); n]; n];
    let link = |g: &mut Vec<Vec<Q>>, i: usize, j: usize, v: Q| {
        g[i][j] = v.clone();
        g[j][i] = v;
    };
    match letter {
        'A' | 'D' | 'E' => {
            for i in 0..n {
                g[i][i] = q(2);
            }
            match letter {
                'A' => (0..n.saturating_sub(1)).for_each(|i| link(&mut g, i, i + 1, q(-1))),
                'D' => {
                    (0..n - 2).for_each(|i| link(&mut g, i, i + 1, q(-1)));
                    link(&mut g, n - 3, n - 1, q(-1));
                }
                _ => {
                    // Bourbaki labels 1-3-4-5-6-7-8 with 2 attached to 4.
                    link(&mut g, 0, 2, q(-1));
                    link(&mut g, 1, 3, q(-1));
                    (2..n - 1).for_each(|i| link(&mut g, i, i + 1, q(-1)));
                }
            }
        }
        'B' => {
            for i in 0..n - 1 {
                g[i][i] = q(2);
            }
            g[n - 1][n - 1] = q(1);
            (0..n - 1).for_each(|i| link(&mut g, i, i + 1, q(-1)));
        }
        'C' => {
            for i in 0..n - 1 {
                g[i][i] = q(1);
            }
            g[n - 1][n - 1] = q(2);
            (0..n - 2).for_each(|i| link(&mut g, i, i + 1, qf(-1, 2)));
            link(&mut g, n - 2, n - 1, q(-1));
        }
        'F' => {
            g[0][0] = q(2);
            g[1][1] = q(2);
            g[2][2] = q(1);
            g[3][3] = q(1);
            link(&mut g, 0, 1, q(-1));
            link(&mut g, 1, 2, q(-1));
            link(&mut g, 2, 3, qf(-1, 2));
        }
        'G' => {
            g[0][0] = qf(2, 3);
            g[1][1] = q(2);
            link(&mut g, 0, 1, q(-1));
        }
        _ => unreachable!(),
    }
    g
}

fn to_int(x: &Q) -> i64 {
    assert!(x.is_integer(), "expected an integer, got {x}");
    i64::try_from(x.to_integer()).expect("small integer")
}

/// Cartan datum of a finite or untwisted affine type.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    pub ctype: CartanType,
    /// Finite Cartan matrix, `a[i][j] = <alpha_i^vee, alpha_j>`, indices 0-based for labels 1..n.
    pub finite_cartan: Vec<Vec<i64>>,
    /// Affine Cartan matrix indexed by labels 0..n.
    pub affine_cartan: Vec<Vec<i64>>,
    /// `(alpha_i, alpha_i)/2` for labels 0..n.
    pub symmetrizer: Vec<Q>,
    pub dual_coxeter: usize,
    /// Highest root in the simple root basis.
    pub theta: Vec<i64>,
    /// Coefficients of the highest coroot in the simple coroot basis.
    pub comarks: Vec<i64>,
    gram: Vec<Vec<Q>>,
    gram_inv_cartan: Vec<Vec<Q>>,
}

impl CartanDatum {
    pub fn new(ctype: CartanType) -> Self {
        let n = ctype.rank;
        let gram = finite_gram(ctype.letter, n);
        let finite_cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| to_int(&(q(2) * &gram[i][j] / &gram[i][i]))).collect())
            .collect();

        // Positive roots by closure under simple reflections.
        let mut roots: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
        let mut k = 0;
        while k < roots.len() {
            let beta = roots[k].clone();
            for i in 0..n {
                let p: i64 = (0..n).map(|j| beta[j] * finite_cartan[i][j]).sum();
                let mut r = beta.clone();
                r[i] -= p;
                if r.iter().all(|&c| c >= 0) && r.iter().any(|&c| c > 0) && !roots.contains(&r) {
                    roots.push(r);
                }
            }
            k += 1;
        }
        let theta = roots.iter().max_by_key(|r| r.iter().sum::<i64>()).unwrap().clone();
        let comarks: Vec<i64> = (0..n).map(|i| to_int(&(q(theta[i]) * &gram[i][i] / q(2)))).collect();
        let dual_coxeter = 1 + comarks.iter().sum::<i64>() as usize;
        assert_eq!(dual_coxeter, dual_coxeter_table(ctype.letter, n));

        // (theta, alpha_j) and the affine matrix with alpha_0 = delta - theta.
        let theta_dot: Vec<Q> = (0..n)
            .map(|j| (0..n).fold(Q::zero(), |acc, i| acc + q(theta[i]) * &gram[i][j]))
            .collect();
        let mut sym = vec![q(1)];
        sym.extend((0..n).map(|i| &gram[i][i] / q(2)));
        let mut aff = vec![vec![0i64; n + 1]; n + 1];
        aff[0][0] = 2;
        for j in 0..n {
            // alpha_0 has squared length 2.
            aff[0][j + 1] = to_int(&-theta_dot[j].clone());
            aff[j + 1][0] = to_int(&(q(-2) * &theta_dot[j] / &gram[j][j]));
            for i in 0..n {
                aff[i + 1][j + 1] = finite_cartan[i][j];
            }
        }
        if n == 1 && ctype.letter == 'A' {
            aff[0][1] = -2;
            aff[1][0] = -2;
        }

        // Gram matrix of fundamental weights: <omega_i, omega_j>.
        let a_inv = invert(&finite_cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<Vec<Q>>>());
        let gram_inv_cartan = (0..n)
            .map(|i| (0..n).map(|j| &a_inv[j][i] * &gram[j][j] / q(2)).collect())
            .collect();

        CartanDatum {
            ctype,
            finite_cartan,
            affine_cartan: aff,
            symmetrizer: sym,
            dual_coxeter,
            theta,
            comarks,
            gram,
            gram_inv_cartan,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::new(s.parse()?))
    }

    pub fn rank(&self) -> usize {
        self.ctype.rank
    }

    /// Generator labels of the Coxeter group attached to the datum.
    pub fn labels(&self) -> Vec<u8> {
        let n = self.rank() as u8;
        if self.ctype.affine {
            (0..=n).collect()
        } else {
            (1..=n).collect()
        }
    }

    /// Cartan matrix restricted to the Coxeter generators, ordered as `labels()`.
    pub fn coxeter_cartan(&self) -> Vec<Vec<i64>> {
        if self.ctype.affine {
            self.affine_cartan.clone()
        } else {
            self.finite_cartan.clone()
        }
    }

    /// Gram matrix of the finite simple roots.
    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    /// `<omega_i, omega_j>` for finite labels i, j in 1..=n (0-based storage).
    fn omega_form(&self, i: usize, j: usize) -> Q {
        self.gram_inv_cartan[i][j].clone()
    }

    /// The invariant form on affine weights.
    pub fn form(&self, a: &AffineWeight, b: &AffineWeight) -> Q {
        let n = self.rank();
        let mut s = &a.delta * &b.lambda0 + &a.lambda0 * &b.delta;
        for i in 0..n {
            for j in 0..n {
                if !a.fin[i].is_zero() && !b.fin[j].is_zero() {
                    s += &a.fin[i] * &b.fin[j] * self.omega_form(i, j);
                }
            }
        }
        s
    }

    fn check(&self, w: &AffineWeight) -> Result<()> {
        if w.fin.len() != self.rank() {
            return Err(Error::Mismatch(format!("weight of rank {} for {}", w.fin.len(), self.ctype)));
        }
        Ok(())
    }

    /// Simple root `alpha_i` for labels 0..=n; `alpha_0 = delta - theta`.
    pub fn simple_root(&self, i: usize) -> Result<AffineWeight> {
        let n = self.rank();
        if i > n {
            return Err(Error::Index(i));
        }
        if i == 0 {
            let mut fin = vec![Q::zero(); n];
            for (j, f) in fin.iter_mut().enumerate() {
                let c: i64 = (0..n).map(|k| self.theta[k] * self.finite_cartan[j][k]).sum();
                *f = q(-c);
            }
            return Ok(AffineWeight { delta: q(1), fin, lambda0: Q::zero() });
        }
        let fin = (0..n).map(|j| q(self.finite_cartan[j][i - 1])).collect();
        Ok(AffineWeight { delta: Q::zero(), fin, lambda0: Q::zero() })
    }

    /// `(lambda : alpha_i^vee) = 2 <lambda, alpha_i> / <alpha_i, alpha_i>`.
    pub fn pairing(&self, lambda: &AffineWeight, i: usize) -> Result<Q> {
        self.check(lambda)?;
        let a = self.simple_root(i)?;
        Ok(q(2) * self.form(lambda, &a) / self.form(&a, &a))
    }

    pub fn reflect(&self, i: usize, lambda: &AffineWeight) -> Result<AffineWeight> {
        let p = self.pairing(lambda, i)?;
        let a = self.simple_root(i)?;
        Ok(lambda.sub(&a.scale(&p)))
    }

    pub fn rho_hat(&self) -> AffineWeight {
        AffineWeight {
            delta: Q::zero(),
            fin: vec![q(1); self.rank()],
            lambda0: q(self.dual_coxeter as i64),
        }
    }

    /// Linear action `w(lambda)`.
    pub fn act(&self, w: &WeylElement, lambda: &AffineWeight) -> Result<AffineWeight> {
        self.check(lambda)?;
        let mut out = lambda.clone();
        for &s in w.word().iter().rev() {
            let s = s as usize;
            if !self.ctype.affine && s == 0 {
                return Err(Error::Mismatch(format!("label 0 in finite type {}", self.ctype)));
            }
            out = self.reflect(s, &out)?;
        }
        Ok(out)
    }

    /// `w . lambda = w(lambda + rho_hat) - rho_hat`.
    pub fn dot_action(&self, w: &WeylElement, lambda: &AffineWeight) -> Result<AffineWeight> {
        let rho = self.rho_hat();
        Ok(self.act(w, &lambda.add(&rho))?.sub(&rho))
    }

    /// Level `(lambda : K)` where `K` is the canonical central element.
    pub fn level(&self, lambda: &AffineWeight) -> Q {
        lambda.lambda0.clone()
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("invertible");
        a.swap(c, p);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = &*x / &piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(row.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// An element of the affine weight space in `(c_delta, finite, c_lambda0)` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineWeight {
    pub delta: Q,
    pub fin: Vec<Q>,
    pub lambda0: Q,
}

impl AffineWeight {
    pub fn zero(rank: usize) -> Self {
        AffineWeight { delta: Q::zero(), fin: vec![Q::zero(); rank], lambda0: Q::zero() }
    }

    pub fn delta(rank: usize) -> Self {
        AffineWeight { delta: Q::one(), ..Self::zero(rank) }
    }

    pub fn lambda0(rank: usize) -> Self {
        AffineWeight { lambda0: Q::one(), ..Self::zero(rank) }
    }

    pub fn from_ints(delta: i64, fin: &[i64], lambda0: i64) -> Self {
        AffineWeight { delta: q(delta), fin: fin.iter().map(|&x| q(x)).collect(), lambda0: q(lambda0) }
    }

    pub fn add(&self, o: &Self) -> Self {
        AffineWeight {
            delta: &self.delta + &o.delta,
            fin: self.fin.iter().zip(&o.fin).map(|(a, b)| a + b).collect(),
            lambda0: &self.lambda0 + &o.lambda0,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        AffineWeight {
            delta: &self.delta * c,
            fin: self.fin.iter().map(|a| a * c).collect(),
            lambda0: &self.lambda0 * c,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.fin.iter().all(|x| x.is_integer()) && self.lambda0.is_integer()
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fin: Vec<String> = self.fin.iter().map(|x| x.to_string()).collect();
        write!(f, "({}; {}; {})", self.delta, fin.join(","), self.lambda0)
    }
}
