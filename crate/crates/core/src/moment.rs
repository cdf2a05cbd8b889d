//! Moment graphs of truncated parabolic flag data, graded sheaves on them and
//! their spaces of sections, computed degree by degree.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{self, clear_denominators, IntVec};
use crate::poly::{monomials, LinearForm, Monomial, MultiPoly, Q};
use crate::weyl::{CoxeterGroup, ParabolicType, Sign, WeylElement};

/// Space containing the edge labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// Labels are coroots.
    Coroots,
    /// Labels are roots (the dual graphs).
    Roots,
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub label: LinearForm,
}

#[derive(Clone, Debug)]
pub struct MomentGraph {
    pub mu: ParabolicType,
    pub vertices: Vec<WeylElement>,
    pub edges: Vec<Edge>,
    /// `Plus` carries the opposite Bruhat order, `Minus` the Bruhat order.
    pub sign: Sign,
    pub ambient: Ambient,
    dim: usize,
    bruhat: Vec<Vec<bool>>,
    lengths: Vec<usize>,
}

impl MomentGraph {
    /// Graph on `{x minimal for mu : x <= w}` with an edge `x - y` whenever
    /// `x` lies in `t y W_mu` for a reflection `t`.
    pub fn build(group: &CoxeterGroup, mu: &ParabolicType, sign: Sign, w: &WeylElement, ambient: Ambient) -> Result<Self> {
        let wmu = group.parabolic_elements(mu)?;
        if !group.is_min_rep(w, mu) {
            return Err(Error::Domain(format!("{w} is not a minimal representative for {mu}")));
        }
        let vertices: Vec<WeylElement> = group.ideal(w).into_iter().filter(|x| group.is_min_rep(x, mu)).collect();
        let n = vertices.len();
        let bruhat: Vec<Vec<bool>> =
            (0..n).map(|i| (0..n).map(|j| group.bruhat_leq(&vertices[i], &vertices[j])).collect()).collect();
        let inverses: Vec<WeylElement> = vertices.iter().map(|y| group.inverse(y)).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut label: Option<LinearForm> = None;
                for z in &wmu {
                    let t = group.multiply(&group.multiply(&vertices[i], z), &inverses[j]);
                    if !group.is_reflection(&t) {
                        continue;
                    }
                    let l = LinearForm::from_ints(&group.reflection_line(&t, ambient == Ambient::Roots));
                    match &label {
                        None => label = Some(l),
                        Some(prev) if prev.proportional(&l) => {}
                        Some(_) => {
                            return Err(Error::NotGkm(format!("{} - {}", vertices[i], vertices[j])));
                        }
                    }
                }
                if let Some(label) = label {
                    if !bruhat[i][j] && !bruhat[j][i] {
                        return Err(Error::Domain(format!("edge between incomparable {} and {}", vertices[i], vertices[j])));
                    }
                    edges.push(Edge { a: i, b: j, label });
                }
            }
        }
        let lengths = vertices.iter().map(|v| v.len()).collect();
        Ok(MomentGraph { mu: mu.clone(), vertices, edges, sign, ambient, dim: group.dim(), bruhat, lengths })
    }

    /// A graph from explicit data, with the Bruhat relation given by `leq`.
    pub fn from_parts(
        vertices: Vec<WeylElement>,
        edges: Vec<Edge>,
        leq: Vec<Vec<bool>>,
        sign: Sign,
        ambient: Ambient,
        dim: usize,
    ) -> Self {
        let lengths = vertices.iter().map(|v| v.len()).collect();
        MomentGraph { mu: ParabolicType::empty(), vertices, edges, sign, ambient, dim, bruhat: leq, lengths }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Enlarges `V` by `extra` coordinates on which no label depends.
    pub fn pad_ambient(&mut self, extra: usize) {
        for e in &mut self.edges {
            e.label.0.extend(std::iter::repeat(Q::zero()).take(extra));
        }
        self.dim += extra;
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, x: &WeylElement) -> Option<usize> {
        self.vertices.iter().position(|v| v == x)
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn bruhat_leq(&self, i: usize, j: usize) -> bool {
        self.bruhat[i][j]
    }

    /// `i ⪯ j` in the graph's order.
    pub fn preceq(&self, i: usize, j: usize) -> bool {
        match self.sign {
            Sign::Minus => self.bruhat[i][j],
            Sign::Plus => self.bruhat[j][i],
        }
    }

    /// `h'`, the smaller endpoint.
    pub fn origin(&self, h: usize) -> usize {
        let e = &self.edges[h];
        if self.preceq(e.a, e.b) {
            e.a
        } else {
            e.b
        }
    }

    /// `h''`, the larger endpoint.
    pub fn goal(&self, h: usize) -> usize {
        let e = &self.edges[h];
        if self.preceq(e.a, e.b) {
            e.b
        } else {
            e.a
        }
    }

    pub fn edges_at(&self, i: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&h| self.edges[h].a == i || self.edges[h].b == i).collect()
    }

    /// `d_i`: edges whose larger endpoint is `i`.
    pub fn down_edges(&self, i: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&h| self.goal(h) == i).collect()
    }

    /// `u_i`: edges whose smaller endpoint is `i`.
    pub fn up_edges(&self, i: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&h| self.origin(h) == i).collect()
    }

    /// Vertex indices in a linear extension of the order: by length, then
    /// word, reversed for the opposite order.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.len()).collect();
        match self.sign {
            Sign::Minus => v,
            Sign::Plus => {
                v.reverse();
                v
            }
        }
    }

    /// Labels at each vertex are pairwise non-proportional.
    pub fn gkm_check(&self) -> bool {
        (0..self.len()).all(|i| {
            let hs = self.edges_at(i);
            hs.iter().enumerate().all(|(k, &a)| {
                hs[k + 1..].iter().all(|&b| !self.edges[a].label.proportional(&self.edges[b].label))
            })
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices.iter().map(|v| v.key(".")).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "a": self.vertices[e.a].key("."),
                "b": self.vertices[e.b].key("."),
                "label": e.label.to_json(),
            })).collect::<Vec<_>>(),
            "order": match self.sign { Sign::Minus => "bruhat", Sign::Plus => "opposite" },
            "ambient": match self.ambient { Ambient::Coroots => "coroots", Ambient::Roots => "roots" },
        })
    }
}

/// Per-edge data of a sheaf: `M_h = M_src / alpha_h M_src`, `rho_{src,h}` canonical,
/// and the other endpoint's restriction given on its generators.
#[derive(Clone, Debug)]
pub struct EdgeData {
    pub src: usize,
    /// `rho[g]` is the image of generator `g` of the other endpoint, one reduced
    /// polynomial per generator of `src`.
    pub rho: Vec<Vec<MultiPoly>>,
}

/// A sheaf whose stalks are graded free with the listed generator degrees and
/// whose edge modules are quotients of one endpoint's stalk.
#[derive(Clone, Debug)]
pub struct GradedSheaf {
    pub nvars: usize,
    /// Generator degrees at each vertex.
    pub stalks: Vec<Vec<i64>>,
    pub edges: Vec<Option<EdgeData>>,
    /// Degrees up to which the data is trusted.
    pub dmax: i64,
}

/// Coordinates of a graded piece: `(generator, monomial)` pairs.
#[derive(Clone, Debug, Default)]
pub struct Coords {
    pub list: Vec<(usize, Monomial)>,
    pub index: HashMap<(usize, Monomial), usize>,
}

impl Coords {
    fn push(&mut self, g: usize, m: Monomial) {
        self.index.insert((g, m.clone()), self.list.len());
        self.list.push((g, m));
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }
}

/// Coordinates of `(free module with generator degrees degs)^d`, optionally modulo a form.
pub fn free_coords(nvars: usize, degs: &[i64], d: i64, modulo: Option<&LinearForm>) -> Coords {
    let skip = modulo.and_then(|l| l.pivot());
    let mut c = Coords::default();
    for (g, &dg) in degs.iter().enumerate() {
        let k = d - dg;
        if k < 0 || k % 2 != 0 {
            continue;
        }
        for m in monomials(nvars, (k / 2) as usize) {
            if skip.map_or(true, |j| m[j] == 0) {
                c.push(g, m);
            }
        }
    }
    c
}

/// Writes `p * (generator g)` into `out` at the coordinates of `target`.
fn scatter(p: &MultiPoly, g: usize, target: &Coords, out: &mut BTreeMap<usize, Q>) {
    for (m, c) in p.terms() {
        let k = target.index[&(g, m.clone())];
        let e = out.entry(k).or_insert_with(Q::zero);
        *e += c;
    }
}

/// Solution space in one degree: a basis over the coordinates `layout`.
#[derive(Clone, Debug)]
pub struct Sections {
    pub vertices: Vec<usize>,
    pub layout: Vec<Coords>,
    pub basis: Vec<IntVec>,
}

impl Sections {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Offsets of each vertex block in a basis vector.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.layout.len());
        let mut acc = 0;
        for c in &self.layout {
            off.push(acc);
            acc += c.len();
        }
        off
    }
}

impl GradedSheaf {
    /// The structural algebra: `A` at every vertex, canonical maps on every edge.
    pub fn structure(g: &MomentGraph, dmax: i64) -> Self {
        let n = g.dim();
        GradedSheaf {
            nvars: n,
            stalks: vec![vec![0]; g.len()],
            edges: (0..g.edges.len())
                .map(|h| Some(EdgeData { src: g.origin(h), rho: vec![vec![MultiPoly::one(n)]] }))
                .collect(),
            dmax,
        }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.stalks.iter().flatten().copied().min()
    }

    /// Image of the basis coordinate `(gen, mono)` of vertex `v` in `M_h^d`.
    pub fn restrict(&self, g: &MomentGraph, h: usize, v: usize, gen: usize, mono: &Monomial, target: &Coords) -> BTreeMap<usize, Q> {
        let mut out = BTreeMap::new();
        let Some(ed) = &self.edges[h] else { return out };
        let label = &g.edges[h].label;
        let m = MultiPoly::from_monomial(mono.clone(), Q::from_integer(1.into()));
        if v == ed.src {
            scatter(&m.reduce_mod(label), gen, target, &mut out);
        } else {
            for (k, p) in ed.rho[gen].iter().enumerate() {
                if !p.is_zero() {
                    scatter(&m.mul(p).reduce_mod(label), k, target, &mut out);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn edge_coords(&self, g: &MomentGraph, h: usize, d: i64) -> Coords {
        match &self.edges[h] {
            Some(ed) => free_coords(self.nvars, &self.stalks[ed.src], d, Some(&g.edges[h].label)),
            None => Coords::default(),
        }
    }

    pub fn stalk_coords(&self, v: usize, d: i64) -> Coords {
        free_coords(self.nvars, &self.stalks[v], d, None)
    }

    /// `M(J)^d`.
    pub fn sections(&self, g: &MomentGraph, j: &[usize], d: i64) -> Result<Sections> {
        if d > self.dmax {
            return Err(Error::DegreeOverflow(self.dmax));
        }
        let layout: Vec<Coords> = j.iter().map(|&v| self.stalk_coords(v, d)).collect();
        let mut off = Vec::new();
        let mut ncols = 0;
        for c in &layout {
            off.push(ncols);
            ncols += c.len();
        }
        let pos: HashMap<usize, usize> = j.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut rows: Vec<IntVec> = Vec::new();
        for (h, e) in g.edges.iter().enumerate() {
            let (Some(&ka), Some(&kb)) = (pos.get(&e.a), pos.get(&e.b)) else { continue };
            if self.edges[h].is_none() {
                continue;
            }
            let target = self.edge_coords(g, h, d);
            if target.is_empty() {
                continue;
            }
            let mut cols: Vec<Vec<Q>> = vec![vec![Q::zero(); ncols]; target.len()];
            for (k, sign) in [(ka, 1i64), (kb, -1i64)] {
                let v = j[k];
                for (ci, (gen, mono)) in layout[k].list.iter().enumerate() {
                    for (r, c) in self.restrict(g, h, v, *gen, mono, &target) {
                        cols[r][off[k] + ci] += c * Q::from_integer(sign.into());
                    }
                }
            }
            rows.extend(cols.iter().filter(|r| r.iter().any(|c| !c.is_zero())).map(|r| clear_denominators(r)));
        }
        let basis = if rows.is_empty() {
            (0..ncols)
                .map(|i| {
                    let mut v = vec![0.into(); ncols];
                    v[i] = 1.into();
                    v
                })
                .collect()
        } else {
            linalg::kernel(&rows, ncols)
        };
        Ok(Sections { vertices: j.to_vec(), layout, basis })
    }

    /// Dimensions of `M(J)^d` for `d` from the lowest generator degree up to `dmax`.
    pub fn section_hilbert(&self, g: &MomentGraph, j: &[usize]) -> Result<BTreeMap<i64, usize>> {
        let mut out = BTreeMap::new();
        let Some(d0) = j.iter().flat_map(|&v| self.stalks[v].iter().copied()).min() else { return Ok(out) };
        let mut d = d0;
        while d <= self.dmax {
            out.insert(d, self.sections(g, j, d)?.dim());
            d += 2;
        }
        Ok(out)
    }

    /// Dimensions of the image of `M(I)^d` in the stalks over each vertex group.
    pub fn image_hilbert(&self, g: &MomentGraph, groups: &[Vec<usize>]) -> Result<Vec<BTreeMap<i64, usize>>> {
        let all: Vec<usize> = (0..g.len()).collect();
        let mut out = vec![BTreeMap::new(); groups.len()];
        let Some(d0) = self.min_degree() else { return Ok(out) };
        let mut d = d0;
        while d <= self.dmax {
            let s = self.sections(g, &all, d)?;
            let off = s.offsets();
            for (k, j) in groups.iter().enumerate() {
                let proj: Vec<IntVec> = s
                    .basis
                    .iter()
                    .map(|b| j.iter().flat_map(|&v| b[off[v]..off[v] + s.layout[v].len()].iter().cloned()).collect())
                    .collect();
                out[k].insert(d, linalg::rank(&proj));
            }
            d += 2;
        }
        Ok(out)
    }
}

/// Generator degrees of a free graded module over a polynomial ring in
/// `nvars` degree-2 variables, given its Hilbert function on an initial
/// segment of degrees.
pub fn free_generators(hilbert: &BTreeMap<i64, usize>, nvars: usize) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let binom = |n: usize, k: usize| -> i64 {
        let mut r: i64 = 1;
        for i in 0..k {
            r = r * (n - i) as i64 / (i + 1) as i64;
        }
        r
    };
    for (&d, _) in hilbert {
        let mut gd: i64 = 0;
        for j in 0..=nvars {
            if let Some(&k) = hilbert.get(&(d - 2 * j as i64)) {
                let s = if j % 2 == 0 { 1 } else { -1 };
                gd += s * binom(nvars, j) * k as i64;
            }
        }
        if gd < 0 {
            return Err(Error::NegativeRank);
        }
        out.extend(std::iter::repeat(d).take(gd as usize));
    }
    Ok(out)
}
