//! The Braden-MacPherson construction on ordered moment graphs, and the
//! graded ranks read off from the resulting sheaves.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hecke::{KlTable, ModuleType};
use crate::linalg::{self, clear_denominators, IntVec, RowSpace};
use crate::moment::{free_generators, Coords, EdgeData, GradedSheaf, MomentGraph};
use crate::poly::{GradedRank, IntLaurentPoly, MultiPoly, Q};
use crate::weyl::{Sign, WeylElement};

/// Default degree window above the root generator.
pub fn default_span(g: &MomentGraph) -> i64 {
    2 * (0..g.len()).map(|i| g.length(i)).max().unwrap_or(0) as i64 + 2
}

#[derive(Clone, Debug)]
pub struct BmSheaf {
    pub root: usize,
    pub sheaf: GradedSheaf,
    /// Whether each vertex was reached from the root.
    pub above_root: Vec<bool>,
}

/// Element of `⊕_{h in d_y} M_h`: one polynomial per generator of each `h'`.
type EdgeVec = Vec<Vec<MultiPoly>>;

struct Layout {
    coords: Vec<Coords>,
    offsets: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(coords: Vec<Coords>) -> Self {
        let mut offsets = Vec::new();
        let mut total = 0;
        for c in &coords {
            offsets.push(total);
            total += c.len();
        }
        Layout { coords, offsets, total }
    }

    fn encode(&self, e: &EdgeVec) -> IntVec {
        let mut v = vec![Q::zero(); self.total];
        for (k, comps) in e.iter().enumerate() {
            for (g, p) in comps.iter().enumerate() {
                for (m, c) in p.terms() {
                    v[self.offsets[k] + self.coords[k].index[&(g, m.clone())]] += c;
                }
            }
        }
        clear_denominators(&v)
    }

    fn decode(&self, v: &IntVec, ranks: &[usize], nvars: usize) -> EdgeVec {
        let mut out: EdgeVec = ranks.iter().map(|&r| vec![MultiPoly::zero(nvars); r]).collect();
        for (k, c) in self.coords.iter().enumerate() {
            for (i, (g, m)) in c.list.iter().enumerate() {
                let x = &v[self.offsets[k] + i];
                if !x.is_zero() {
                    out[k][*g].add_term(m.clone(), Q::from_integer(x.clone()));
                }
            }
        }
        out
    }
}

/// Runs the staged construction for the sheaf with root `x`. The root
/// generator sits in degree `-l(x)` on a `Plus` graph and `l(x)` on a `Minus`
/// graph; degrees up to `span` above it are computed.
pub fn bm_sheaf(g: &MomentGraph, x: usize, span: i64) -> Result<BmSheaf> {
    if !g.gkm_check() {
        return Err(Error::NotGkm(g.vertices[x].to_string()));
    }
    let nvars = g.dim();
    let lx = g.length(x) as i64;
    let d0 = match g.sign {
        Sign::Plus => -lx,
        Sign::Minus => lx,
    };
    let dmax = d0 + span;
    let n = g.len();
    let mut sheaf = GradedSheaf { nvars, stalks: vec![Vec::new(); n], edges: vec![None; g.edges.len()], dmax };
    sheaf.stalks[x] = vec![d0];
    let above: Vec<bool> = (0..n).map(|y| g.preceq(x, y)).collect();
    let mut done = vec![x];
    for y in g.linear_extension() {
        if y == x || !above[y] {
            continue;
        }
        let dy: Vec<usize> = g.down_edges(y).into_iter().filter(|&h| above[g.origin(h)]).collect();
        for &h in &dy {
            sheaf.edges[h] = Some(EdgeData { src: g.origin(h), rho: Vec::new() });
        }
        let j: Vec<usize> = done.iter().copied().filter(|&z| g.preceq(z, y)).collect();
        let ranks: Vec<usize> = dy.iter().map(|&h| sheaf.stalks[g.origin(h)].len()).collect();
        let mut gens: Vec<(i64, EdgeVec)> = Vec::new();
        if ranks.iter().any(|&r| r > 0) {
            let mut prev: Vec<EdgeVec> = Vec::new();
            let mut d = d0;
            while d <= dmax {
                let layout = Layout::new(dy.iter().map(|&h| sheaf.edge_coords(g, h, d)).collect());
                let mut space = RowSpace::new();
                let mut basis: Vec<EdgeVec> = Vec::new();
                for e in &prev {
                    for i in 0..nvars {
                        let xi = MultiPoly::var(nvars, i);
                        let prod: EdgeVec = e
                            .iter()
                            .zip(&dy)
                            .map(|(c, &h)| c.iter().map(|p| p.mul(&xi).reduce_mod(&g.edges[h].label)).collect())
                            .collect();
                        let v = layout.encode(&prod);
                        if space.insert(v.clone()) {
                            basis.push(layout.decode(&v, &ranks, nvars));
                        }
                    }
                }
                let secs = sheaf.sections(g, &j, d)?;
                let off = secs.offsets();
                for b in &secs.basis {
                    let mut img = vec![Q::zero(); layout.total];
                    for (k, &h) in dy.iter().enumerate() {
                        let src = g.origin(h);
                        let Some(pos) = j.iter().position(|&z| z == src) else { continue };
                        for (ci, (gen, mono)) in secs.layout[pos].list.iter().enumerate() {
                            let a = &b[off[pos] + ci];
                            if a.is_zero() {
                                continue;
                            }
                            for (r, c) in sheaf.restrict(g, h, src, *gen, mono, &layout.coords[k]) {
                                img[layout.offsets[k] + r] += c * Q::from_integer(a.clone());
                            }
                        }
                    }
                    let v = clear_denominators(&img);
                    if space.insert(v.clone()) {
                        let e = layout.decode(&v, &ranks, nvars);
                        basis.push(e.clone());
                        gens.push((d, e));
                    }
                }
                prev = basis;
                d += 2;
            }
        }
        if gens.iter().any(|(d, _)| *d > dmax - 2) {
            return Err(Error::DegreeOverflow(span));
        }
        sheaf.stalks[y] = gens.iter().map(|(d, _)| *d).collect();
        for (k, &h) in dy.iter().enumerate() {
            let rho: Vec<Vec<MultiPoly>> = gens.iter().map(|(_, e)| e[k].clone()).collect();
            sheaf.edges[h].as_mut().unwrap().rho = rho;
        }
        done.push(y);
    }
    Ok(BmSheaf { root: x, sheaf, above_root: above })
}

impl BmSheaf {
    pub fn stalk(&self, y: usize) -> GradedRank {
        GradedRank::from_generator_degrees(&self.sheaf.stalks[y])
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.sheaf.stalks.len()).filter(|&y| !self.sheaf.stalks[y].is_empty()).collect()
    }

    /// Graded rank of the kernel of the restriction from the stalk at `y` to the edges `hs`.
    fn kernel_rank(&self, g: &MomentGraph, y: usize, hs: &[usize]) -> Result<GradedRank> {
        let degs = &self.sheaf.stalks[y];
        let Some(&lo) = degs.iter().min() else { return Ok(GradedRank::empty()) };
        let rank = degs.len();
        let cap = self.sheaf.dmax + 2 * hs.len() as i64 + 4;
        let mut hilbert = BTreeMap::new();
        let mut d = lo;
        loop {
            let cols = self.sheaf.stalk_coords(y, d);
            let mut rows: Vec<Vec<Q>> = Vec::new();
            for &h in hs {
                let target = self.sheaf.edge_coords(g, h, d);
                if target.is_empty() {
                    continue;
                }
                let mut block = vec![vec![Q::zero(); cols.len()]; target.len()];
                for (ci, (gen, mono)) in cols.list.iter().enumerate() {
                    for (r, c) in self.sheaf.restrict(g, h, y, *gen, mono, &target) {
                        block[r][ci] += c;
                    }
                }
                rows.extend(block);
            }
            let int_rows: Vec<IntVec> = rows.iter().map(|r| clear_denominators(r)).collect();
            hilbert.insert(d, cols.len() - linalg::rank(&int_rows));
            let gens = free_generators(&hilbert, self.sheaf.nvars)?;
            if gens.len() == rank {
                return Ok(GradedRank::from_generator_degrees(&gens));
            }
            if gens.len() > rank || d >= cap {
                return Err(Error::DegreeOverflow(cap));
            }
            d += 2;
        }
    }

    /// `M_[y] = ker(rho_{y, d_y})`.
    pub fn defect(&self, g: &MomentGraph, y: usize) -> Result<GradedRank> {
        let hs: Vec<usize> = g.down_edges(y).into_iter().filter(|&h| self.sheaf.edges[h].is_some()).collect();
        self.kernel_rank(g, y, &hs)
    }

    /// `M^y = ker(rho_{y, e_y})`.
    pub fn costalk(&self, g: &MomentGraph, y: usize) -> Result<GradedRank> {
        let hs: Vec<usize> = g.edges_at(y).into_iter().filter(|&h| self.sheaf.edges[h].is_some()).collect();
        self.kernel_rank(g, y, &hs)
    }

    /// Subquotients `(vertex, shift)`, the root first, then along the order.
    pub fn verma_flag(&self, g: &MomentGraph) -> Result<Vec<(WeylElement, i64)>> {
        let mut out = Vec::new();
        let mut order = vec![self.root];
        order.extend(g.linear_extension().into_iter().filter(|&y| y != self.root));
        for y in order {
            for &j in self.defect(g, y)?.shifts() {
                out.push((g.vertices[y].clone(), j));
            }
        }
        Ok(out)
    }

    /// Stalk and costalk ranks of the dual sheaf.
    pub fn dual_ranks(&self, g: &MomentGraph) -> Result<Vec<(GradedRank, GradedRank)>> {
        (0..g.len()).map(|y| Ok((self.costalk(g, y)?.negated(), self.stalk(y).negated()))).collect()
    }

    /// Whether the dual has the same stalks, vertex by vertex.
    pub fn is_self_dual(&self, g: &MomentGraph) -> Result<bool> {
        for (y, (ds, _)) in self.dual_ranks(g)?.into_iter().enumerate() {
            if ds != self.stalk(y) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self, g: &MomentGraph) -> Result<Value> {
        let mut verts = serde_json::Map::new();
        for y in self.support() {
            verts.insert(
                g.vertices[y].key("."),
                json!({
                    "stalk": self.stalk(y).shifts(),
                    "defect": self.defect(g, y)?.shifts(),
                }),
            );
        }
        let flag: Vec<Value> = self.verma_flag(g)?.into_iter().map(|(v, j)| json!([v.key("."), j])).collect();
        Ok(json!({
            "root": g.vertices[self.root].key("."),
            "vertices": Value::Object(verts),
            "flag": flag,
            "dmax": self.sheaf.dmax,
        }))
    }
}

/// Multiset `{base + sign*2i : multiplicity coeff_i}` of a polynomial in `q`.
fn shifts_from(p: &IntLaurentPoly, base: i64, step: i64) -> Result<GradedRank> {
    let mut v = Vec::new();
    for (i, c) in p.terms() {
        let k: usize = c.try_into().map_err(|_| Error::NegativeRank)?;
        v.extend(std::iter::repeat(base + step * i as i64).take(k));
    }
    Ok(GradedRank::new(v))
}

/// Prediction for the stalk of the plus-side sheaf at `y`: `{l(x) - 2i}` with multiplicity `P_{y,x,i}`.
pub fn predicted_plus_stalk(table: &KlTable, y: &WeylElement, x: &WeylElement) -> Result<GradedRank> {
    let p = table.p_q(y, x)?;
    shifts_from(&p, x.len() as i64, -2)
}

/// Prediction for the defect of the plus-side sheaf at `y`: `{2l(y) - l(x) + 2i}`.
pub fn predicted_plus_defect(table: &KlTable, y: &WeylElement, x: &WeylElement) -> Result<GradedRank> {
    let p = table.p_q(y, x)?;
    shifts_from(&p, 2 * y.len() as i64 - x.len() as i64, 2)
}

/// Prediction for the stalk of the minus-side sheaf at `y`: `{-l(x) - 2i}` with multiplicity `Q_{x,y,i}`.
pub fn predicted_minus_stalk(table: &KlTable, x: &WeylElement, y: &WeylElement) -> Result<GradedRank> {
    let q = table.q_q(x, y)?;
    shifts_from(&q, -(x.len() as i64), -2)
}

/// Compares every stalk of the plus-side sheaf at `x` with the type-q polynomials.
pub fn plus_stalks_vs_p(g: &MomentGraph, x: usize, table: &KlTable, span: i64) -> Result<Option<String>> {
    let b = bm_sheaf(g, x, span)?;
    for y in 0..g.len() {
        let want = if g.bruhat_leq(y, x) {
            predicted_plus_stalk(table, &g.vertices[y], &g.vertices[x])?
        } else {
            GradedRank::empty()
        };
        if b.stalk(y) != want {
            return Ok(Some(format!("B({})_{}: {} vs {}", g.vertices[x], g.vertices[y], b.stalk(y), want)));
        }
    }
    Ok(None)
}

/// Compares every stalk of the minus-side sheaf at `x` with the type-(-1) inverse polynomials.
pub fn minus_stalks_vs_q(g: &MomentGraph, x: usize, table: &KlTable, span: i64) -> Result<Option<String>> {
    if table.kind() != ModuleType::MinusOne {
        return Err(Error::Mismatch("minus-side stalks use the type -1 table".into()));
    }
    let b = bm_sheaf(g, x, span)?;
    for y in 0..g.len() {
        let want = if g.bruhat_leq(x, y) {
            predicted_minus_stalk(table, &g.vertices[x], &g.vertices[y])?
        } else {
            GradedRank::empty()
        };
        if b.stalk(y) != want {
            return Ok(Some(format!("B({})_{}: {} vs {}", g.vertices[x], g.vertices[y], b.stalk(y), want)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moment::Ambient;
    use crate::weyl::{CoxeterGroup, ParabolicType};

    fn graph(t: &str, w: &[u8], sign: Sign) -> (CoxeterGroup, MomentGraph) {
        let gr = CoxeterGroup::parse(t).unwrap();
        let w = gr.element(w).unwrap();
        let g = MomentGraph::build(&gr, &ParabolicType::empty(), sign, &w, Ambient::Coroots).unwrap();
        (gr, g)
    }

    #[test]
    fn a1_plus_sheaf() {
        let (_, g) = graph("A1", &[1], Sign::Plus);
        let s = 1;
        let e = 0;
        let b = bm_sheaf(&g, s, default_span(&g)).unwrap();
        assert_eq!(b.stalk(s), GradedRank::new(vec![1]));
        assert_eq!(b.stalk(e), GradedRank::new(vec![1]));
        assert_eq!(b.defect(&g, e).unwrap(), GradedRank::new(vec![-1]));
        assert_eq!(b.costalk(&g, s).unwrap(), GradedRank::new(vec![-1]));
        assert!(b.is_self_dual(&g).unwrap());
        let flag = b.verma_flag(&g).unwrap();
        assert_eq!(flag, vec![(g.vertices[s].clone(), 1), (g.vertices[e].clone(), -1)]);
    }

    #[test]
    fn verma_sheaf_at_the_top() {
        let (_, g) = graph("A1", &[1], Sign::Plus);
        let b = bm_sheaf(&g, 0, default_span(&g)).unwrap();
        assert_eq!(b.support(), vec![0]);
        assert!(b.is_self_dual(&g).unwrap());
    }

    #[test]
    fn a1_minus_not_self_dual() {
        let (_, g) = graph("A1", &[1], Sign::Minus);
        let b = bm_sheaf(&g, 0, default_span(&g)).unwrap();
        assert_eq!(b.stalk(0), GradedRank::new(vec![0]));
        assert_eq!(b.costalk(&g, 0).unwrap(), GradedRank::new(vec![-2]));
        assert!(!b.is_self_dual(&g).unwrap());
    }

    #[test]
    fn a2_longest_element() {
        let (gr, g) = graph("A2", &[1, 2, 1], Sign::Plus);
        let t = KlTable::ordinary(&gr);
        assert_eq!(plus_stalks_vs_p(&g, 5, &t, default_span(&g)).unwrap(), None);
        let b = bm_sheaf(&g, 5, default_span(&g)).unwrap();
        for y in 0..6 {
            assert_eq!(b.stalk(y), GradedRank::new(vec![3]));
        }
    }
}
