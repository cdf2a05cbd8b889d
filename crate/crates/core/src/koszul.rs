//! Hilbert-polynomial matrices of the truncated algebras, the Koszul
//! matrix identity, and the rank-level checks of the translation functors.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::bm::{bm_sheaf, default_span};
use crate::error::{Error, Result};
use crate::hecke::{KlTable, ModuleType};
use crate::moment::{free_generators, Ambient, GradedSheaf, MomentGraph};
use crate::poly::{GradedRank, IntLaurentPoly, PolyMatrix};
use crate::weyl::{CoxeterGroup, ParabolicType, Sign, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    KlFormula,
    BmHom,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::KlFormula => "from-KL-formula",
            Provenance::BmHom => "from-BM-Hom-filtration",
        }
    }
}

#[derive(Clone, Debug)]
pub struct HilbertMatrix {
    pub matrix: PolyMatrix,
    pub mu: ParabolicType,
    pub sign: Sign,
    pub w: WeylElement,
    pub provenance: Provenance,
}

impl HilbertMatrix {
    /// First entry outside `delta + t N[t]`.
    pub fn basic_defect(&self) -> Option<(WeylElement, WeylElement, IntLaurentPoly)> {
        let m = &self.matrix;
        for i in 0..m.len() {
            for j in 0..m.len() {
                let mut e = m.get(i, j).clone();
                if i == j {
                    e -= &IntLaurentPoly::one();
                }
                let ok = e.has_nonneg_coeffs() && e.min_exp().map_or(true, |k| k >= 1);
                if !ok {
                    return Some((m.index()[i].clone(), m.index()[j].clone(), m.get(i, j).clone()));
                }
            }
        }
        None
    }

    pub fn is_basic(&self) -> bool {
        self.basic_defect().is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        let m = &self.matrix;
        (0..m.len()).all(|i| (0..i).all(|j| m.get(i, j) == m.get(j, i)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "mu": self.mu.key(),
            "sign": self.sign.symbol(),
            "w": self.w.key("."),
            "provenance": self.provenance.tag(),
            "matrix": self.matrix.to_json(),
        })
    }
}

fn require_kind(table: &KlTable, kind: ModuleType) -> Result<()> {
    if table.kind() != kind {
        return Err(Error::Mismatch(format!("expected a {} table, got {}", kind.tag(), table.kind().tag())));
    }
    Ok(())
}

/// `P^T P` for the type-q matrix `P` on `{x <= w}`.
pub fn hilbert_plus(table: &KlTable, w: &WeylElement) -> Result<HilbertMatrix> {
    require_kind(table, ModuleType::Q)?;
    let index = table.truncation(w)?;
    let p = table.p_matrix(&index)?;
    Ok(HilbertMatrix {
        matrix: p.transpose().product(&p)?,
        mu: table.mu().clone(),
        sign: Sign::Plus,
        w: w.clone(),
        provenance: Provenance::KlFormula,
    })
}

/// `Q Q^T` for the type-(-1) inverse matrix `Q` on `{x <= w}`.
pub fn hilbert_minus(table: &KlTable, w: &WeylElement) -> Result<HilbertMatrix> {
    require_kind(table, ModuleType::MinusOne)?;
    let index = table.truncation(w)?;
    let q = table.q_matrix(&index)?;
    Ok(HilbertMatrix {
        matrix: q.product(&q.transpose())?,
        mu: table.mu().clone(),
        sign: Sign::Minus,
        w: w.clone(),
        provenance: Provenance::KlFormula,
    })
}

/// The same matrix from BM sheaves: `dim Hom(B(x), B(x'))` read off a Verma
/// flag of `B(x')` against the defects of `B(x)`.
pub fn hilbert_from_bm(group: &CoxeterGroup, mu: &ParabolicType, sign: Sign, w: &WeylElement) -> Result<HilbertMatrix> {
    let ambient = match sign {
        Sign::Plus => Ambient::Coroots,
        Sign::Minus => Ambient::Roots,
    };
    let g = MomentGraph::build(group, mu, sign, w, ambient)?;
    let span = default_span(&g);
    let n = g.len();
    let sheaves = (0..n).map(|x| bm_sheaf(&g, x, span)).collect::<Result<Vec<_>>>()?;
    let mut defects = Vec::with_capacity(n);
    for b in &sheaves {
        defects.push((0..n).map(|y| b.defect(&g, y)).collect::<Result<Vec<_>>>()?);
    }
    let mut m = PolyMatrix::zeros(g.vertices.clone());
    for x in 0..n {
        for x2 in 0..n {
            let mut e = IntLaurentPoly::zero();
            for y in 0..n {
                for &s in sheaves[x2].stalk(y).shifts() {
                    for &d in defects[x][y].shifts() {
                        e.add_term((s - d) as i32, 1.into());
                    }
                }
            }
            m.set(x, x2, e);
        }
    }
    Ok(HilbertMatrix { matrix: m, mu: mu.clone(), sign, w: w.clone(), provenance: Provenance::BmHom })
}

#[derive(Clone, Debug)]
pub struct KoszulReport {
    pub minus: HilbertMatrix,
    pub plus: HilbertMatrix,
    pub product: PolyMatrix,
    pub witness: Option<(WeylElement, WeylElement, IntLaurentPoly)>,
}

impl KoszulReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.holds(),
            "witness": self.witness.as_ref().map(|(x, y, p)| json!({
                "x": x.key("."), "x'": y.key("."), "entry": p.to_json(),
            })),
            "minus": self.minus.to_json(),
            "plus": self.plus.to_json(),
            "product": self.product.to_json(),
        })
    }
}

/// `P(A_-^w, t) P(A_+^{w^-1}, -t)` with the columns of the first factor
/// matched to rows of the second through `x -> x^-1`.
pub fn koszul_identity_check(group: &CoxeterGroup, w: &WeylElement) -> Result<KoszulReport> {
    let minus = hilbert_minus(&KlTable::new(group, ParabolicType::empty(), ModuleType::MinusOne)?, w)?;
    let plus = hilbert_plus(&KlTable::ordinary(group), &group.inverse(w))?;
    let product = minus.matrix.product_with(&plus.matrix.map(|p| p.subs_neg()), |x| group.inverse(x))?;
    let witness = product.identity_defect();
    Ok(KoszulReport { minus, plus, product, witness })
}

fn series(h: &BTreeMap<i64, usize>) -> IntLaurentPoly {
    let mut p = IntLaurentPoly::zero();
    for (&d, &k) in h {
        p.add_term(d as i32, k.into());
    }
    p
}

fn truncated(p: &IntLaurentPoly, dmax: i64) -> IntLaurentPoly {
    let mut out = IntLaurentPoly::zero();
    for (e, c) in p.terms() {
        if e as i64 <= dmax {
            out.add_term(e, c.clone());
        }
    }
    out
}

/// Degreewise comparison of two Hilbert series, each known up to its own bound.
#[derive(Clone, Debug)]
pub struct SeriesCheck {
    pub lhs: IntLaurentPoly,
    pub rhs: IntLaurentPoly,
    pub up_to: i64,
}

impl SeriesCheck {
    fn new(lhs: IntLaurentPoly, lhs_max: i64, rhs: IntLaurentPoly, rhs_max: i64) -> Self {
        let up_to = lhs_max.min(rhs_max);
        SeriesCheck { lhs: truncated(&lhs, up_to), rhs: truncated(&rhs, up_to), up_to }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    fn to_json(&self) -> Value {
        json!({"holds": self.holds(), "up_to": self.up_to, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json()})
    }
}

#[derive(Clone, Debug)]
pub struct ThetaCase {
    pub x: WeylElement,
    /// Summands `(t, j)` with `B_mu(t){j}`, in peeling order.
    pub summands: Vec<(WeylElement, i64)>,
    pub at_root: GradedRank,
    pub expected: GradedRank,
    pub minus: SeriesCheck,
    pub plus: SeriesCheck,
}

impl ThetaCase {
    pub fn holds(&self) -> bool {
        self.at_root == self.expected && self.minus.holds() && self.plus.holds()
    }
}

#[derive(Clone, Debug)]
pub struct ThetaReport {
    pub mu: ParabolicType,
    pub w: WeylElement,
    pub z: WeylElement,
    pub cases: Vec<ThetaCase>,
    pub structure: SeriesCheck,
}

impl ThetaReport {
    pub fn holds(&self) -> bool {
        self.structure.holds() && self.cases.iter().all(ThetaCase::holds)
    }

    pub fn to_json(&self) -> Value {
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|c| {
                json!({
                    "x": c.x.key("."),
                    "summands": c.summands.iter().map(|(t, j)| json!([t.key("."), j])).collect::<Vec<_>>(),
                    "at_root": c.at_root.shifts(),
                    "expected": c.expected.shifts(),
                    "minus": c.minus.to_json(),
                    "plus": c.plus.to_json(),
                })
            })
            .collect();
        json!({
            "holds": self.holds(),
            "mu": self.mu.key(),
            "w": self.w.key("."),
            "z": self.z.key("."),
            "structure": self.structure.to_json(),
            "cases": cases,
        })
    }
}

/// `sum_{y in W_mu} t^{2 l(y)}`.
fn poincare(group: &CoxeterGroup, mu: &ParabolicType) -> Result<IntLaurentPoly> {
    let mut p = IntLaurentPoly::zero();
    for y in group.parabolic_elements(mu)? {
        p.add_term(2 * y.len() as i32, 1.into());
    }
    Ok(p)
}

fn global_hilbert(g: &MomentGraph, s: &GradedSheaf) -> Result<(IntLaurentPoly, i64)> {
    let all: Vec<usize> = (0..g.len()).collect();
    Ok((series(&s.section_hilbert(g, &all)?), s.dmax))
}

/// Rank-level check of the translation functors between the regular graph
/// `{<= w w_mu}` and the `mu`-graph `{<= w}`, for every vertex `x`.
pub fn theta_decomposition_check(group: &CoxeterGroup, mu: &ParabolicType, w: &WeylElement) -> Result<ThetaReport> {
    let wmu = group.longest_element(mu)?;
    let lmu = wmu.len() as i64;
    if !group.is_min_rep(w, mu) {
        return Err(Error::Domain(format!("{w} is not a minimal representative for {mu}")));
    }
    let z = group.multiply(w, &wmu);
    let phi = ParabolicType::empty();
    let pc = poincare(group, mu)?;
    let wmu_elems = group.parabolic_elements(mu)?;

    let gp = MomentGraph::build(group, &phi, Sign::Plus, &z, Ambient::Coroots)?;
    let gm = MomentGraph::build(group, &phi, Sign::Minus, &z, Ambient::Coroots)?;
    let hp = MomentGraph::build(group, mu, Sign::Plus, w, Ambient::Coroots)?;
    let hm = MomentGraph::build(group, mu, Sign::Minus, w, Ambient::Coroots)?;
    let span_phi = default_span(&gp);
    let span_mu = default_span(&hp);

    // isom1
    let zp = GradedSheaf::structure(&gp, span_phi);
    let zm = GradedSheaf::structure(&hp, span_mu);
    let (lhs, lmax) = global_hilbert(&gp, &zp)?;
    let (rhs, rmax) = global_hilbert(&hp, &zm)?;
    let structure = SeriesCheck::new(lhs, lmax, &pc * &rhs, rmax);

    // cosets v W_mu as vertex groups of the regular graph
    let groups: Vec<Vec<usize>> = hp
        .vertices
        .iter()
        .map(|v| wmu_elems.iter().map(|u| gp.index_of(&group.multiply(v, u)).expect("coset inside the ideal")).collect())
        .collect();
    let patterns = (0..hp.len()).map(|t| bm_sheaf(&hp, t, span_mu)).collect::<Result<Vec<_>>>()?;
    let expected = GradedRank::new(wmu_elems.iter().map(|y| lmu - 2 * y.len() as i64).collect());

    let mut cases = Vec::new();
    for (xi, x) in hp.vertices.iter().enumerate() {
        let xz = gp.index_of(&group.multiply(x, &wmu)).expect("x w_mu below z");
        let b = bm_sheaf(&gp, xz, span_phi)?;
        let images = b.sheaf.image_hilbert(&gp, &groups)?;
        let mut residual = Vec::with_capacity(hp.len());
        for (v, h) in images.iter().enumerate() {
            let want: usize = groups[v].iter().map(|&y| b.sheaf.stalks[y].len()).sum();
            let gens = free_generators(h, b.sheaf.nvars)?;
            if gens.len() != want {
                return Err(Error::DegreeOverflow(b.sheaf.dmax));
            }
            residual.push(GradedRank::from_generator_degrees(&gens));
        }
        let summands = peel(&hp, &patterns, residual)?;
        let at_root = GradedRank::new(summands.iter().filter(|(t, _)| *t == xi).map(|&(_, j)| j).collect());
        let summands = summands.into_iter().map(|(t, j)| (hp.vertices[t].clone(), j)).collect();

        let bm_phi = bm_sheaf(&gm, gm.index_of(x).expect("x below z"), span_phi)?;
        let bm_mu = bm_sheaf(&hm, xi, span_mu)?;
        let (l, lm) = global_hilbert(&gm, &bm_phi.sheaf)?;
        let (r, rm) = global_hilbert(&hm, &bm_mu.sheaf)?;
        let minus = SeriesCheck::new(l, lm, &pc * &r, rm);

        let bp_mu = &patterns[xi];
        let (l, lm) = global_hilbert(&gp, &b.sheaf)?;
        let (r, rm) = global_hilbert(&hp, &bp_mu.sheaf)?;
        let plus = SeriesCheck::new(l.shift(lmu as i32), lm + lmu, &pc * &r, rm);

        cases.push(ThetaCase { x: x.clone(), summands, at_root, expected: expected.clone(), minus, plus });
    }
    Ok(ThetaReport { mu: mu.clone(), w: w.clone(), z, cases, structure })
}

/// Removes shifted stalk patterns of the `mu`-sheaves from `residual`,
/// starting at a Bruhat-maximal vertex with something left.
fn peel(
    hp: &MomentGraph,
    patterns: &[crate::bm::BmSheaf],
    mut residual: Vec<GradedRank>,
) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    loop {
        let live: Vec<usize> = (0..hp.len()).filter(|&v| !residual[v].is_empty()).collect();
        let Some(&t) = live.iter().filter(|&&v| !live.iter().any(|&u| u != v && hp.bruhat_leq(v, u))).min() else {
            return Ok(out);
        };
        let root = patterns[t].stalk(t);
        if root.rank() != 1 {
            return Err(Error::Peel(format!("stalk of B({}) at its root is {root}", hp.vertices[t])));
        }
        let r0 = root.shifts()[0];
        for s in residual[t].shifts().to_vec() {
            let j = s - r0;
            for u in 0..hp.len() {
                let pat = patterns[t].stalk(u).shifted(j);
                residual[u] = residual[u].minus(&pat).ok_or_else(|| {
                    let left: Vec<String> = residual.iter().zip(&hp.vertices).map(|(r, v)| format!("{v}:{r}")).collect();
                    Error::Peel(format!("B({}){{{j}}} does not fit; residual {}", hp.vertices[t], left.join(" ")))
                })?;
            }
            out.push((t, j));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> CoxeterGroup {
        CoxeterGroup::parse(s).unwrap()
    }

    fn poly(cs: &[i64]) -> IntLaurentPoly {
        IntLaurentPoly::from_coeffs(cs)
    }

    #[test]
    fn a1_matrices() {
        let g = grp("A1");
        let s = g.element(&[1]).unwrap();
        let hp = hilbert_plus(&KlTable::ordinary(&g), &s).unwrap();
        assert_eq!(hp.matrix.get(0, 0), &poly(&[1]));
        assert_eq!(hp.matrix.get(0, 1), &poly(&[0, 1]));
        assert_eq!(hp.matrix.get(1, 1), &poly(&[1, 0, 1]));
        let t = KlTable::new(&g, ParabolicType::empty(), ModuleType::MinusOne).unwrap();
        let hm = hilbert_minus(&t, &s).unwrap();
        assert_eq!(hm.matrix.get(0, 0), &poly(&[1, 0, 1]));
        assert_eq!(hm.matrix.get(1, 0), &poly(&[0, 1]));
        assert_eq!(hm.matrix.get(1, 1), &poly(&[1]));
        assert!(hp.is_basic() && hm.is_basic() && hp.is_symmetric());
        assert!(koszul_identity_check(&g, &s).unwrap().holds());
    }

    #[test]
    fn singleton() {
        let g = grp("A2");
        let e = WeylElement::identity();
        let h = hilbert_plus(&KlTable::ordinary(&g), &e).unwrap();
        assert_eq!(h.matrix.len(), 1);
        assert!(h.matrix.get(0, 0).is_one());
    }

    #[test]
    fn bm_path_matches_a2() {
        let g = grp("A2");
        let w0 = g.element(&[1, 2, 1]).unwrap();
        let kl = hilbert_plus(&KlTable::ordinary(&g), &w0).unwrap();
        let bm = hilbert_from_bm(&g, &ParabolicType::empty(), Sign::Plus, &w0).unwrap();
        assert_eq!(kl.matrix, bm.matrix);
        let t = KlTable::new(&g, ParabolicType::empty(), ModuleType::MinusOne).unwrap();
        let kl = hilbert_minus(&t, &w0).unwrap();
        let bm = hilbert_from_bm(&g, &ParabolicType::empty(), Sign::Minus, &w0).unwrap();
        assert_eq!(kl.matrix, bm.matrix);
    }

    #[test]
    fn theta_trivial_mu() {
        let g = grp("A2");
        let w = g.element(&[1, 2]).unwrap();
        let r = theta_decomposition_check(&g, &ParabolicType::empty(), &w).unwrap();
        assert!(r.holds());
        for c in &r.cases {
            assert_eq!(c.at_root.shifts(), &[0]);
        }
    }

    #[test]
    fn theta_a2_mu1() {
        let g = grp("A2");
        let mu = ParabolicType::new([1]);
        let w = g.element(&[1, 2]).unwrap();
        let r = theta_decomposition_check(&g, &mu, &w).unwrap();
        assert!(r.holds(), "{}", r.to_json());
        assert_eq!(r.cases[0].at_root.shifts(), &[-1, 1]);
    }
}
