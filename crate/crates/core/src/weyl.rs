//! Coxeter groups of finite and affine Weyl type.
//!
//! Elements are stored as their ShortLex-minimal reduced word. Words are
//! normalized by peeling off the smallest left descent, which is detected on
//! the Tits representation on the root lattice.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::RwLock;

use crate::cartan::{CartanDatum, CartanType};
use crate::error::{Error, Result};

/// Hard cap for enumerating parabolic subgroups.
pub const PARABOLIC_CAP: usize = 50_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<u8>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { word: Vec::new() }
    }

    /// Wraps a word that is already canonical. Use `CoxeterGroup::element` for arbitrary words.
    pub fn from_word(word: Vec<u8>) -> Self {
        WeylElement { word }
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Canonical word joined with `sep`; the identity is `e`.
    pub fn key(&self, sep: &str) -> String {
        if self.word.is_empty() {
            return "e".to_string();
        }
        self.word.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(sep)
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.word.len(), &self.word).cmp(&(other.word.len(), &other.word))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.key(","))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key("."))
    }
}

/// Parses `"0,1,0"`; the empty string and `"e"` give the empty word.
pub fn parse_word(s: &str) -> Result<Vec<u8>> {
    let t = s.trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    t.split(|c| c == ',' || c == '.')
        .map(|p| p.trim().parse::<u8>().map_err(|_| Error::Parse { what: "word", input: s.to_string() }))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetEnd {
    Min,
    Max,
}

/// A proper subset of the generator labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParabolicType {
    labels: BTreeSet<u8>,
}

impl ParabolicType {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = u8>>(labels: I) -> Self {
        ParabolicType { labels: labels.into_iter().collect() }
    }

    /// `"1,2"`, `"{1,2}"`; `""`, `"e"` and `"{}"` are empty.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('{').trim_end_matches('}');
        Ok(Self::new(parse_word(t)?))
    }

    pub fn contains(&self, s: u8) -> bool {
        self.labels.contains(&s)
    }

    pub fn labels(&self) -> impl Iterator<Item = u8> + '_ {
        self.labels.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn key(&self) -> String {
        if self.labels.is_empty() {
            return "{}".into();
        }
        let v: Vec<String> = self.labels.iter().map(|s| s.to_string()).collect();
        format!("{{{}}}", v.join(","))
    }
}

impl fmt::Display for ParabolicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

type Mat = Vec<Vec<i64>>;

pub struct CoxeterGroup {
    datum: CartanDatum,
    labels: Vec<u8>,
    cartan: Mat,
    bruhat_memo: RwLock<HashMap<(WeylElement, WeylElement), bool>>,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGroup({})", self.datum.ctype)
    }
}

impl CoxeterGroup {
    pub fn new(datum: CartanDatum) -> Self {
        let labels = datum.labels();
        let cartan = datum.coxeter_cartan();
        CoxeterGroup { datum, labels, cartan, bruhat_memo: RwLock::new(HashMap::new()) }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::new(CartanDatum::parse(s)?))
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn cartan_type(&self) -> CartanType {
        self.datum.ctype
    }

    pub fn is_affine(&self) -> bool {
        self.datum.ctype.affine
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Number of generators, also the dimension of the reflection representations.
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Cartan matrix indexed by generator positions.
    pub fn cartan(&self) -> &Mat {
        &self.cartan
    }

    pub fn pos(&self, label: u8) -> Result<usize> {
        self.labels.iter().position(|&l| l == label).ok_or(Error::Index(label as usize))
    }

    fn check_word(&self, w: &[u8]) -> Result<()> {
        for &s in w {
            self.pos(s)?;
        }
        Ok(())
    }

    fn identity_mat(&self) -> Mat {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
    }

    /// `m * s_i` on the root representation `s_i(alpha_j) = alpha_j - a_ij alpha_i`.
    fn right_mul(&self, m: &mut Mat, i: usize) {
        let a = &self.cartan[i];
        for row in m.iter_mut() {
            let ri = row[i];
            if ri != 0 {
                for (c, x) in row.iter_mut().enumerate() {
                    *x -= ri * a[c];
                }
            }
        }
    }

    /// `m * s_i` on the coroot representation `s_i(h_j) = h_j - a_ji h_i`.
    fn right_mul_dual(&self, m: &mut Mat, i: usize) {
        for row in m.iter_mut() {
            let ri = row[i];
            if ri != 0 {
                for (c, x) in row.iter_mut().enumerate() {
                    *x -= ri * self.cartan[c][i];
                }
            }
        }
    }

    /// Matrix of `w` on the root lattice in the simple root basis (columns are `w(alpha_j)`).
    pub fn root_matrix(&self, w: &[u8]) -> Mat {
        let mut m = self.identity_mat();
        for &s in w {
            let i = self.pos(s).expect("valid label");
            self.right_mul(&mut m, i);
        }
        m
    }

    /// Matrix of `w` on the coroot lattice in the simple coroot basis.
    pub fn coroot_matrix(&self, w: &[u8]) -> Mat {
        let mut m = self.identity_mat();
        for &s in w {
            let i = self.pos(s).expect("valid label");
            self.right_mul_dual(&mut m, i);
        }
        m
    }

    fn column_negative(m: &Mat, c: usize) -> bool {
        m.iter().all(|r| r[c] <= 0)
    }

    /// Canonical form of the product of an arbitrary word.
    pub fn element(&self, word: &[u8]) -> Result<WeylElement> {
        self.check_word(word)?;
        Ok(self.canon(word))
    }

    fn canon(&self, word: &[u8]) -> WeylElement {
        let mut inv = self.identity_mat();
        for &s in word.iter().rev() {
            let i = self.pos(s).unwrap();
            self.right_mul(&mut inv, i);
        }
        let mut out = Vec::with_capacity(word.len());
        loop {
            // smallest left descent: w^{-1}(alpha_i) < 0
            match (0..self.dim()).find(|&c| Self::column_negative(&inv, c)) {
                Some(c) => {
                    out.push(self.labels[c]);
                    self.right_mul(&mut inv, c);
                }
                None => break,
            }
        }
        WeylElement { word: out }
    }

    pub fn generator(&self, s: u8) -> Result<WeylElement> {
        self.element(&[s])
    }

    pub fn multiply(&self, x: &WeylElement, y: &WeylElement) -> WeylElement {
        let mut w = x.word.clone();
        w.extend_from_slice(&y.word);
        self.canon(&w)
    }

    pub fn lmul(&self, s: u8, x: &WeylElement) -> WeylElement {
        let mut w = Vec::with_capacity(x.len() + 1);
        w.push(s);
        w.extend_from_slice(&x.word);
        self.canon(&w)
    }

    pub fn rmul(&self, x: &WeylElement, s: u8) -> WeylElement {
        let mut w = x.word.clone();
        w.push(s);
        self.canon(&w)
    }

    pub fn inverse(&self, x: &WeylElement) -> WeylElement {
        let w: Vec<u8> = x.word.iter().rev().copied().collect();
        self.canon(&w)
    }

    pub fn is_left_descent(&self, s: u8, x: &WeylElement) -> bool {
        let inv: Vec<u8> = x.word.iter().rev().copied().collect();
        let m = self.root_matrix(&inv);
        Self::column_negative(&m, self.pos(s).unwrap())
    }

    pub fn is_right_descent(&self, x: &WeylElement, s: u8) -> bool {
        let m = self.root_matrix(&x.word);
        Self::column_negative(&m, self.pos(s).unwrap())
    }

    pub fn right_descents(&self, x: &WeylElement) -> Vec<u8> {
        let m = self.root_matrix(&x.word);
        (0..self.dim()).filter(|&c| Self::column_negative(&m, c)).map(|c| self.labels[c]).collect()
    }

    pub fn left_descents(&self, x: &WeylElement) -> Vec<u8> {
        let inv: Vec<u8> = x.word.iter().rev().copied().collect();
        let m = self.root_matrix(&inv);
        (0..self.dim()).filter(|&c| Self::column_negative(&m, c)).map(|c| self.labels[c]).collect()
    }

    /// Bruhat order by the lifting property, memoized.
    pub fn bruhat_leq(&self, x: &WeylElement, y: &WeylElement) -> bool {
        if x.len() > y.len() {
            return false;
        }
        if x.len() == y.len() {
            return x == y;
        }
        if x.is_identity() {
            return true;
        }
        let key = (x.clone(), y.clone());
        if let Some(&b) = self.bruhat_memo.read().unwrap().get(&key) {
            return b;
        }
        // The first letter of a canonical word is a left descent.
        let s = y.word[0];
        let ys = WeylElement { word: y.word[1..].to_vec() };
        let r = if self.is_left_descent(s, x) {
            let xs = self.lmul(s, x);
            self.bruhat_leq(&xs, &ys)
        } else {
            self.bruhat_leq(x, &ys)
        };
        self.bruhat_memo.write().unwrap().insert(key, r);
        r
    }

    /// All elements of length at most `max_len`, sorted by (length, word).
    pub fn ball(&self, max_len: usize) -> Vec<WeylElement> {
        let mut out = vec![WeylElement::identity()];
        let mut layer = vec![WeylElement::identity()];
        for _ in 0..max_len {
            let mut next = BTreeSet::new();
            for x in &layer {
                for &s in &self.labels {
                    if !self.is_right_descent(x, s) {
                        next.insert(self.rmul(x, s));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next.into_iter().collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    /// The whole group; errors past `cap` elements.
    pub fn all_elements(&self, cap: usize) -> Result<Vec<WeylElement>> {
        self.closure(&self.labels.clone(), cap)
    }

    /// Bruhat ideal `{x <= w}`, sorted.
    pub fn ideal(&self, w: &WeylElement) -> Vec<WeylElement> {
        self.ball(w.len()).into_iter().filter(|x| self.bruhat_leq(x, w)).collect()
    }

    fn closure(&self, gens: &[u8], cap: usize) -> Result<Vec<WeylElement>> {
        let mut seen = BTreeSet::new();
        seen.insert(WeylElement::identity());
        let mut queue = VecDeque::from([WeylElement::identity()]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.rmul(&x, s);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::Bound(cap));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Checks that `mu` is proper, uses valid labels and generates a finite group.
    pub fn validate(&self, mu: &ParabolicType) -> Result<()> {
        let gens: Vec<u8> = mu.labels().collect();
        self.check_word(&gens)?;
        if self.is_affine() && gens.len() == self.labels.len() {
            return Err(Error::Parabolic(mu.key()));
        }
        self.closure(&gens, PARABOLIC_CAP).map_err(|_| Error::Parabolic(mu.key()))?;
        Ok(())
    }

    pub fn parabolic_elements(&self, mu: &ParabolicType) -> Result<Vec<WeylElement>> {
        self.validate(mu)?;
        let gens: Vec<u8> = mu.labels().collect();
        self.closure(&gens, PARABOLIC_CAP)
    }

    pub fn is_min_rep(&self, x: &WeylElement, mu: &ParabolicType) -> bool {
        let m = self.root_matrix(&x.word);
        mu.labels().all(|s| !Self::column_negative(&m, self.pos(s).unwrap()))
    }

    pub fn is_max_rep(&self, x: &WeylElement, mu: &ParabolicType) -> bool {
        let m = self.root_matrix(&x.word);
        mu.labels().all(|s| Self::column_negative(&m, self.pos(s).unwrap()))
    }

    /// Shortest or longest element of `x W_mu`.
    pub fn coset_rep(&self, x: &WeylElement, mu: &ParabolicType, which: CosetEnd) -> Result<WeylElement> {
        self.validate(mu)?;
        let mut y = x.clone();
        loop {
            let step = mu.labels().find(|&s| match which {
                CosetEnd::Min => self.is_right_descent(&y, s),
                CosetEnd::Max => !self.is_right_descent(&y, s),
            });
            match step {
                Some(s) => y = self.rmul(&y, s),
                None => return Ok(y),
            }
        }
    }

    pub fn longest_element(&self, mu: &ParabolicType) -> Result<WeylElement> {
        self.coset_rep(&WeylElement::identity(), mu, CosetEnd::Max)
    }

    /// Tests whether `t` is a reflection: a nontrivial involution whose
    /// (-1)-eigenspace on the root lattice is a line.
    pub fn is_reflection(&self, t: &WeylElement) -> bool {
        if t.is_identity() || t.len() % 2 == 0 {
            return false;
        }
        let m = self.root_matrix(&t.word);
        let n = self.dim();
        let sq = matmul(&m, &m);
        if sq != self.identity_mat() {
            return false;
        }
        let plus: Mat = (0..n).map(|i| (0..n).map(|j| m[i][j] + i64::from(i == j)).collect()).collect();
        int_rank(&plus) + 1 == n
    }

    /// Primitive generator of the (-1)-eigenline of a reflection, on coroots
    /// (`dual = false`) or on roots (`dual = true`), sign normalized to be positive.
    pub fn reflection_line(&self, t: &WeylElement, on_roots: bool) -> Vec<i64> {
        let m = if on_roots { self.root_matrix(&t.word) } else { self.coroot_matrix(&t.word) };
        let n = self.dim();
        // for a reflection the image of 1 - m is the (-1)-eigenline
        let minus: Mat = (0..n).map(|i| (0..n).map(|j| i64::from(i == j) - m[i][j]).collect()).collect();
        let col = (0..n).find(|&j| minus.iter().any(|r| r[j] != 0)).expect("reflection");
        let mut v: Vec<i64> = minus.iter().map(|r| r[col]).collect();
        let g = v.iter().fold(0i64, |a, &b| gcd(a, b.abs()));
        for x in v.iter_mut() {
            *x /= g;
        }
        if v.iter().find(|&&x| x != 0).copied().unwrap_or(0) < 0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
        v
    }

    // ---- truncation posets ----

    /// `u` lies in `I^nu_{mu,-} = { x w_mu : x in (I_nu^max)^{-1} cap I_mu^min }`.
    pub fn in_i_minus(&self, u: &WeylElement, mu: &ParabolicType, nu: &ParabolicType) -> Result<bool> {
        let wmu = self.longest_element(mu)?;
        self.validate(nu)?;
        let x = self.multiply(u, &wmu);
        Ok(self.is_min_rep(&x, mu) && self.is_max_rep(&self.inverse(&x), nu))
    }

    /// `u` lies in `I^nu_{mu,+} = { x w_mu : x in (I_nu^min)^{-1} cap I_mu^max }`.
    pub fn in_i_plus(&self, u: &WeylElement, mu: &ParabolicType, nu: &ParabolicType) -> Result<bool> {
        let wmu = self.longest_element(mu)?;
        self.validate(nu)?;
        let x = self.multiply(u, &wmu);
        Ok(self.is_max_rep(&x, mu) && self.is_min_rep(&self.inverse(&x), nu))
    }

    pub fn in_i(&self, u: &WeylElement, mu: &ParabolicType, nu: &ParabolicType, sign: Sign) -> Result<bool> {
        match sign {
            Sign::Plus => self.in_i_plus(u, mu, nu),
            Sign::Minus => self.in_i_minus(u, mu, nu),
        }
    }

    /// `{x in I^nu_{mu,sign} : x <= w}` with the Bruhat order for `-` and its opposite for `+`.
    pub fn truncated_poset(
        &self,
        mu: &ParabolicType,
        nu: &ParabolicType,
        sign: Sign,
        w: &WeylElement,
    ) -> Result<TruncatedPoset> {
        if !self.in_i(w, mu, nu, sign)? {
            return Err(Error::Domain(format!("{} in I^{}_{{{},{}}}", w, nu, mu, sign.symbol())));
        }
        let mut vertices = Vec::new();
        for x in self.ideal(w) {
            if self.in_i(&x, mu, nu, sign)? {
                vertices.push(x);
            }
        }
        let n = vertices.len();
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                let b = self.bruhat_leq(&vertices[i], &vertices[j]);
                match sign {
                    Sign::Minus => leq[i][j] = b,
                    Sign::Plus => leq[j][i] = b,
                }
            }
        }
        Ok(TruncatedPoset { mu: mu.clone(), nu: nu.clone(), sign, w: w.clone(), vertices, leq })
    }

    /// `x -> w_nu x w_mu`, mapping `I^nu_{mu,from}` onto `I^nu_{mu,-from}`.
    pub fn bijection_pm(&self, x: &WeylElement, mu: &ParabolicType, nu: &ParabolicType, from: Sign) -> Result<WeylElement> {
        if !self.in_i(x, mu, nu, from)? {
            return Err(Error::Domain(format!("{x}")));
        }
        let wmu = self.longest_element(mu)?;
        let wnu = self.longest_element(nu)?;
        Ok(self.multiply(&self.multiply(&wnu, x), &wmu))
    }

    /// `x^{-1}(alpha_i)` has the requested sign for every `i` in `mu`.
    fn inverse_root_signs(&self, x: &WeylElement, mu: &ParabolicType, positive: bool) -> bool {
        let inv: Vec<u8> = x.word.iter().rev().copied().collect();
        let m = self.root_matrix(&inv);
        mu.labels().all(|s| {
            let c = self.pos(s).unwrap();
            let neg = Self::column_negative(&m, c);
            neg != positive
        })
    }

    /// Membership in `I^mu_{phi,+}` read off from `x^{-1}(Pi_mu^+)` being positive.
    pub fn dominant_plus(&self, x: &WeylElement, mu: &ParabolicType) -> bool {
        self.inverse_root_signs(x, mu, true)
    }

    /// Membership in `I^mu_{phi,-}` read off from `x^{-1}(Pi_mu^+)` being negative.
    pub fn dominant_minus(&self, x: &WeylElement, mu: &ParabolicType) -> bool {
        self.inverse_root_signs(x, mu, false)
    }

    /// Evaluates both sides of one of the four equivalences relating the
    /// truncation posets for different parabolic types.
    pub fn coset_lemma_membership(
        &self,
        x: &WeylElement,
        mu: &ParabolicType,
        nu: &ParabolicType,
        variant: LemmaC,
    ) -> Result<(bool, bool)> {
        let wnu = self.longest_element(nu)?;
        let wmu = self.longest_element(mu)?;
        Ok(match variant {
            LemmaC::A => {
                let xi = self.inverse(x);
                (self.dominant_plus(x, mu), self.coset_rep(&xi, mu, CosetEnd::Min)? == xi)
            }
            LemmaC::B => {
                let xi = self.inverse(x);
                (self.dominant_minus(x, mu), self.coset_rep(&xi, mu, CosetEnd::Max)? == xi)
            }
            LemmaC::C(Sign::Plus) => {
                let lhs = self.dominant_plus(x, mu) && self.coset_rep(x, nu, CosetEnd::Max)? == *x;
                let rhs = self.in_i_plus(&self.multiply(x, &wnu), nu, mu)?;
                (lhs, rhs)
            }
            LemmaC::C(Sign::Minus) => {
                let lhs = self.dominant_minus(x, mu) && self.coset_rep(x, nu, CosetEnd::Min)? == *x;
                let rhs = self.in_i_minus(&self.multiply(x, &wnu), nu, mu)?;
                (lhs, rhs)
            }
            LemmaC::D => {
                // left side through (c): x w_nu in I^mu_{phi,-} cap I_{nu,+}
                let y = self.multiply(x, &wnu);
                let lhs = self.dominant_minus(&y, mu) && self.coset_rep(&y, nu, CosetEnd::Min)? == y;
                let z = self.multiply(&self.multiply(&wmu, x), &wnu);
                (lhs, self.in_i_plus(&z, nu, mu)?)
            }
        })
    }

    /// The inclusions `I^mu_{nu,+} in I^min_{mu,nu}` and `I^mu_{nu,-} in I^max_{mu,nu}` at `x`.
    pub fn remark_inclusions(&self, x: &WeylElement, mu: &ParabolicType, nu: &ParabolicType) -> Result<bool> {
        let xi = self.inverse(x);
        let plus_ok = !self.in_i_plus(x, nu, mu)? || (self.is_min_rep(&xi, mu) && self.is_min_rep(x, nu));
        let minus_ok = !self.in_i_minus(x, nu, mu)? || (self.is_max_rep(&xi, mu) && self.is_max_rep(x, nu));
        Ok(plus_ok && minus_ok)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaC {
    A,
    B,
    C(Sign),
    D,
}

impl LemmaC {
    pub const ALL: [LemmaC; 5] = [LemmaC::A, LemmaC::B, LemmaC::C(Sign::Plus), LemmaC::C(Sign::Minus), LemmaC::D];
}

#[derive(Clone, Debug)]
pub struct TruncatedPoset {
    pub mu: ParabolicType,
    pub nu: ParabolicType,
    pub sign: Sign,
    pub w: WeylElement,
    pub vertices: Vec<WeylElement>,
    /// `leq[i][j]` iff `vertices[i] <= vertices[j]` in the poset order.
    pub leq: Vec<Vec<bool>>,
}

impl TruncatedPoset {
    pub fn index_of(&self, x: &WeylElement) -> Option<usize> {
        self.vertices.iter().position(|v| v == x)
    }
}

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Rank over the rationals by fraction-free elimination.
fn int_rank(m: &Mat) -> usize {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let (f, g) = (a[r][c], a[rank][c]);
                for k in 0..cols {
                    a[r][k] = a[r][k] * g - a[rank][k] * f;
                }
                let d = a[r].iter().fold(0i128, |x, &y| gcd128(x, y.abs()));
                if d > 1 {
                    a[r].iter_mut().for_each(|v| *v /= d);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd128(b, a % b)
    }
}
