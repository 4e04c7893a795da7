//! Simplicial complexes with vertex values, finite-field cohomology ranks,
//! the lower-star order, and a direct interlevel-pair oracle for graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fp, Mat};
use crate::strip::ExtRat;

/// A simplex as a sorted list of vertex indices.
pub type Simplex = Vec<usize>;

/// A finite abstract simplicial complex on vertices `0..n`, closed under faces.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Complex {
    simplices: BTreeSet<Simplex>,
}

impl Complex {
    /// The face closure of the given simplices.
    pub fn closure<I: IntoIterator<Item = Simplex>>(gens: I) -> Self {
        let mut simplices = BTreeSet::new();
        for mut s in gens {
            s.sort_unstable();
            s.dedup();
            add_faces(&s, &mut simplices);
        }
        Complex { simplices }
    }

    /// The complex made of exactly the given simplices, which must be closed under faces.
    pub fn from_closed<I: IntoIterator<Item = Simplex>>(simplices: I) -> Result<Self> {
        let simplices: BTreeSet<Simplex> = simplices.into_iter().collect();
        let c = Complex { simplices };
        for s in &c.simplices {
            for f in facets(s) {
                if !f.is_empty() && !c.simplices.contains(&f) {
                    return Err(Error::InvalidPair(format!(
                        "face {f:?} of {s:?} is missing"
                    )));
                }
            }
        }
        Ok(c)
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// The largest simplex dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    /// The full subcomplex spanned by the vertices satisfying `keep`.
    pub fn full_subcomplex(&self, keep: impl Fn(usize) -> bool) -> Complex {
        Complex {
            simplices: self
                .simplices
                .iter()
                .filter(|s| s.iter().all(|&v| keep(v)))
                .cloned()
                .collect(),
        }
    }

    /// Euler characteristic of the simplices of `self` not in `sub`.
    pub fn relative_euler(&self, sub: &Complex) -> i64 {
        self.simplices
            .iter()
            .filter(|s| !sub.contains(s))
            .map(|s| if s.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }
}

fn add_faces(s: &Simplex, out: &mut BTreeSet<Simplex>) {
    if s.is_empty() || out.contains(s) {
        return;
    }
    for f in facets(s) {
        add_faces(&f, out);
    }
    out.insert(s.clone());
}

/// Codimension-one faces, in order of the removed position.
fn facets(s: &[usize]) -> Vec<Simplex> {
    if s.len() <= 1 {
        return Vec::new();
    }
    (0..s.len())
        .map(|i| {
            s.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// Dimensions of `H^n(K, A; F_p)` indexed by `n`, trailing zeros trimmed.
pub fn relative_cohomology_dims(k: &Complex, a: &Complex, fp: Fp) -> Result<Vec<usize>> {
    if !a.is_subcomplex_of(k) {
        return Err(Error::InvalidPair("A is not a subcomplex of K".into()));
    }
    let top = match k.dim() {
        Some(d) => d,
        None => return Ok(Vec::new()),
    };
    let mut by_dim: Vec<Vec<&Simplex>> = vec![Vec::new(); top + 1];
    for s in k.simplices().filter(|s| !a.contains(s)) {
        by_dim[s.len() - 1].push(s);
    }
    let index: Vec<HashMap<&Simplex, usize>> = by_dim
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, s)| (*s, i)).collect())
        .collect();
    // ranks[n] is the rank of the coboundary from degree n to degree n + 1.
    let mut ranks = vec![0usize; top + 1];
    for n in 0..top {
        let mut m = Mat::zeros(by_dim[n + 1].len(), by_dim[n].len());
        for (r, s) in by_dim[n + 1].iter().enumerate() {
            for (i, f) in facets(s).iter().enumerate() {
                if let Some(&c) = index[n].get(f) {
                    m.set(r, c, fp.from_i64(if i % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        ranks[n] = m.rank(fp);
    }
    let mut dims: Vec<usize> = (0..=top)
        .map(|n| by_dim[n].len() - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
        .collect();
    while dims.last() == Some(&0) {
        dims.pop();
    }
    Ok(dims)
}

/// A simplicial complex with a rational value on every vertex and a coefficient characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialFunction {
    labels: Vec<String>,
    values: Vec<BigRational>,
    complex: Complex,
    fp: Fp,
}

/// The JSON form `{"char":2,"values":{"v":"0/1"},"simplices":[["v"],...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    #[serde(default = "default_char")]
    pub char: u32,
    pub values: BTreeMap<String, ExtRat>,
    #[serde(default)]
    pub simplices: Vec<Vec<String>>,
}

fn default_char() -> u32 {
    2
}

impl SimplicialFunction {
    /// Builds the face closure of `simplices` over labeled vertices with finite values.
    pub fn new(
        values: BTreeMap<String, ExtRat>,
        simplices: &[Vec<String>],
        fp: Fp,
    ) -> Result<Self> {
        let labels: Vec<String> = values.keys().cloned().collect();
        let mut vals = Vec::with_capacity(labels.len());
        for (l, v) in &values {
            match v {
                ExtRat::Fin(r) => vals.push(r.clone()),
                _ => {
                    return Err(Error::InvalidPair(format!(
                        "vertex {l} has an infinite value"
                    )))
                }
            }
        }
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut gens = Vec::new();
        for s in simplices {
            let mut g = Vec::with_capacity(s.len());
            for l in s {
                let i = index
                    .get(l.as_str())
                    .ok_or_else(|| Error::InvalidPair(format!("vertex {l} has no value")))?;
                g.push(*i);
            }
            if g.is_empty() {
                return Err(Error::InvalidPair("empty simplex".into()));
            }
            gens.push(g);
        }
        for i in 0..labels.len() {
            gens.push(vec![i]);
        }
        Ok(SimplicialFunction {
            labels,
            values: vals,
            complex: Complex::closure(gens),
            fp,
        })
    }

    /// Convenience constructor from integer values and label lists.
    pub fn from_ints(values: &[(&str, i64)], simplices: &[&[&str]], fp: Fp) -> Result<Self> {
        let values = values
            .iter()
            .map(|(l, v)| (l.to_string(), ExtRat::int(*v)))
            .collect();
        let simplices: Vec<Vec<String>> = simplices
            .iter()
            .map(|s| s.iter().map(|l| l.to_string()).collect())
            .collect();
        SimplicialFunction::new(values, &simplices, fp)
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        SimplicialFunction::new(j.values.clone(), &j.simplices, Fp::new(j.char)?)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            char: self.fp.char(),
            values: self
                .labels
                .iter()
                .cloned()
                .zip(self.values.iter().map(|v| ExtRat::Fin(v.clone())))
                .collect(),
            simplices: self
                .complex
                .simplices()
                .map(|s| s.iter().map(|&v| self.labels[v].clone()).collect())
                .collect(),
        }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn field(&self) -> Fp {
        self.fp
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn value(&self, v: usize) -> &BigRational {
        &self.values[v]
    }

    /// The largest vertex value of a simplex.
    pub fn max_value(&self, s: &[usize]) -> &BigRational {
        s.iter()
            .map(|&v| &self.values[v])
            .max()
            .expect("nonempty simplex")
    }

    /// The smallest vertex value of a simplex.
    pub fn min_value(&self, s: &[usize]) -> &BigRational {
        s.iter()
            .map(|&v| &self.values[v])
            .min()
            .expect("nonempty simplex")
    }

    /// Sorted distinct vertex values.
    pub fn critical_values(&self) -> Vec<BigRational> {
        let set: BTreeSet<&BigRational> = self.values.iter().collect();
        set.into_iter().cloned().collect()
    }

    fn label_key(&self, s: &[usize]) -> Vec<&str> {
        s.iter().map(|&v| self.labels[v].as_str()).collect()
    }
}

/// Simplices ordered by maximal vertex value, then dimension, then vertex labels.
///
/// Every prefix of the order is a subcomplex.
pub fn lower_star_order(f: &SimplicialFunction) -> Vec<Simplex> {
    let mut all: Vec<Simplex> = f.complex.simplices().cloned().collect();
    all.sort_by(|a, b| {
        f.max_value(a)
            .cmp(f.max_value(b))
            .then(a.len().cmp(&b.len()))
            .then_with(|| f.label_key(a).cmp(&f.label_key(b)))
    });
    all
}

/// Simplices ordered by decreasing minimal vertex value, then dimension, then vertex labels.
///
/// Every prefix of the order is a subcomplex (a superlevel filtration).
pub fn upper_star_order(f: &SimplicialFunction) -> Vec<Simplex> {
    let mut all: Vec<Simplex> = f.complex.simplices().cloned().collect();
    all.sort_by(|a, b| {
        f.min_value(b)
            .cmp(f.min_value(a))
            .then(a.len().cmp(&b.len()))
            .then_with(|| f.label_key(a).cmp(&f.label_key(b)))
    });
    all
}

/// A finite union of open intervals of the real line with extended endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OpenSet {
    pub parts: Vec<(ExtRat, ExtRat)>,
}

impl OpenSet {
    pub fn empty() -> Self {
        OpenSet { parts: Vec::new() }
    }

    pub fn interval(lo: ExtRat, hi: ExtRat) -> Self {
        OpenSet {
            parts: vec![(lo, hi)],
        }
    }

    pub fn contains(&self, v: &ExtRat) -> bool {
        self.parts.iter().any(|(lo, hi)| lo < v && v < hi)
    }

    fn endpoints(&self) -> impl Iterator<Item = &BigRational> {
        self.parts
            .iter()
            .flat_map(|(a, b)| [a.finite(), b.finite()])
            .flatten()
    }
}

/// `dim H^n(f⁻¹(I), f⁻¹(C); F_p)` for a function on a graph, by explicit subdivision.
///
/// Every edge is subdivided at each endpoint level of `I` and `C` and then at
/// the midpoints of the resulting pieces; the open preimage of an open set is
/// then homotopy equivalent to the full subcomplex on the vertices whose value
/// lies in the set, and the relative groups come from coboundary ranks.
pub fn interlevel_pair_dims_subdivided(
    f: &SimplicialFunction,
    i: &OpenSet,
    c: &OpenSet,
    n: i64,
) -> Result<usize> {
    let dim = f.complex.dim().unwrap_or(0);
    if dim > 1 {
        return Err(Error::UnsupportedDimension(dim));
    }
    if !(0..=1).contains(&n) {
        return Ok(0);
    }
    let levels: BTreeSet<&BigRational> = i.endpoints().chain(c.endpoints()).collect();
    let (values, edges) = subdivide(f, &levels);
    let in_set = |set: &OpenSet, v: usize| set.contains(&ExtRat::Fin(values[v].clone()));
    let mut gens: Vec<Simplex> = (0..values.len()).map(|v| vec![v]).collect();
    gens.extend(edges.iter().map(|&(a, b)| vec![a, b]));
    let whole = Complex::closure(gens);
    let ki = whole.full_subcomplex(|v| in_set(i, v));
    let kc = whole.full_subcomplex(|v| in_set(c, v) && in_set(i, v));
    let dims = relative_cohomology_dims(&ki, &kc, f.fp)?;
    Ok(dims.get(n as usize).copied().unwrap_or(0))
}

/// Subdivides every edge at the given levels and at midpoints between consecutive breakpoints.
fn subdivide(
    f: &SimplicialFunction,
    levels: &BTreeSet<&BigRational>,
) -> (Vec<BigRational>, Vec<(usize, usize)>) {
    let mut values: Vec<BigRational> = f.values.clone();
    let mut edges = Vec::new();
    let two = BigRational::from_integer(2.into());
    for s in f.complex.simplices().filter(|s| s.len() == 2) {
        let (a, b) = (s[0], s[1]);
        let (va, vb) = (&f.values[a], &f.values[b]);
        let (lo, hi) = if va <= vb { (va, vb) } else { (vb, va) };
        let mut stops: Vec<BigRational> = levels
            .iter()
            .filter(|&&l| lo < l && l < hi)
            .map(|&l| l.clone())
            .collect();
        if va > vb {
            stops.reverse();
        }
        let mut chain = vec![a];
        let mut prev = va.clone();
        for l in stops.into_iter().chain(std::iter::once(vb.clone())) {
            values.push((&prev + &l) / &two);
            chain.push(values.len() - 1);
            if l != *vb {
                values.push(l.clone());
                chain.push(values.len() - 1);
            }
            prev = l;
        }
        chain.push(b);
        edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
    }
    (values, edges)
}

/// `dim H^n(f⁻¹(I), f⁻¹(C); F_p)` for a function on a graph, where `C ⊆ I`.
///
/// Builds a [`LevelGraph`] over the critical values and the endpoints of `I`
/// and `C`; see there for the model of the open preimages.
pub fn interlevel_pair_dims(
    f: &SimplicialFunction,
    i: &OpenSet,
    c: &OpenSet,
    n: i64,
) -> Result<usize> {
    let extra: Vec<BigRational> = i.endpoints().chain(c.endpoints()).cloned().collect();
    let g = LevelGraph::new(f, &extra)?;
    Ok(g.pair_dims(&g.snap_set(i), &g.snap_set(c), n))
}

/// A graph whose vertex values are replaced by their rank in a fixed finite
/// set of levels, so that interlevel queries reduce to integer comparisons.
///
/// Levels are numbered so that the `i`-th level sits at `2i + 1` and the open
/// gaps between levels at even positions; any value snaps to the position of
/// the level it equals or the gap it lies in. The open preimage of an open set
/// `U` is modeled by a graph with one node per vertex whose value lies in `U`
/// and one node per component of the part of each edge lying over `U`. Edge
/// pieces are attached to the end vertices they contain. This model is
/// homotopy equivalent to the preimage.
#[derive(Clone, Debug)]
pub struct LevelGraph {
    levels: Vec<BigRational>,
    values: Vec<i64>,
    edges: Vec<(usize, usize)>,
}

/// An open subset given by disjoint open intervals in level positions.
pub type SnappedSet = Vec<(i64, i64)>;

struct Model {
    nodes: usize,
    edges: usize,
    parent: Vec<usize>,
    /// For each node, the open range of values it carries (a single value for vertices).
    ranges: Vec<(i64, i64, bool)>,
}

impl Model {
    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn components(&mut self) -> usize {
        (0..self.nodes).filter(|&n| self.find(n) == n).count()
    }
}

impl LevelGraph {
    /// Levels are the vertex values together with `extra`.
    pub fn new(f: &SimplicialFunction, extra: &[BigRational]) -> Result<Self> {
        let dim = f.complex.dim().unwrap_or(0);
        if dim > 1 {
            return Err(Error::UnsupportedDimension(dim));
        }
        let set: BTreeSet<&BigRational> = f.values.iter().chain(extra).collect();
        let levels: Vec<BigRational> = set.into_iter().cloned().collect();
        let mut g = LevelGraph {
            levels,
            values: Vec::new(),
            edges: Vec::new(),
        };
        g.values = f
            .values
            .iter()
            .map(|v| g.snap(&ExtRat::Fin(v.clone())))
            .collect();
        g.edges = f
            .complex
            .simplices()
            .filter(|s| s.len() == 2)
            .map(|s| (s[0], s[1]))
            .collect();
        Ok(g)
    }

    /// Position of a value among the levels.
    pub fn snap(&self, v: &ExtRat) -> i64 {
        match v {
            ExtRat::NegInf => i64::MIN,
            ExtRat::PosInf => i64::MAX,
            ExtRat::Fin(r) => match self.levels.binary_search(r) {
                Ok(i) => 2 * i as i64 + 1,
                Err(i) => 2 * i as i64,
            },
        }
    }

    pub fn snap_set(&self, u: &OpenSet) -> SnappedSet {
        u.parts
            .iter()
            .map(|(a, b)| (self.snap(a), self.snap(b)))
            .filter(|(a, b)| a < b)
            .collect()
    }

    fn model(&self, u: &SnappedSet) -> Model {
        let inside = |v: i64| u.iter().any(|&(a, b)| a < v && v < b);
        let mut index = vec![usize::MAX; self.values.len()];
        let mut ranges = Vec::new();
        for (v, &val) in self.values.iter().enumerate() {
            if inside(val) {
                index[v] = ranges.len();
                ranges.push((val, val, true));
            }
        }
        let mut links = Vec::new();
        let mut model_edges = 0;
        for &(p, q) in &self.edges {
            let (vp, vq) = (self.values[p], self.values[q]);
            if vp == vq {
                if inside(vp) {
                    links.push((index[p], index[q]));
                    model_edges += 1;
                }
                continue;
            }
            let (lo, hi, vlo, vhi) = if vp < vq {
                (vp, vq, p, q)
            } else {
                (vq, vp, q, p)
            };
            for &(a, b) in u {
                if !(a < hi && b > lo) {
                    continue;
                }
                let node = ranges.len();
                ranges.push((a.max(lo), b.min(hi), false));
                if a < lo {
                    links.push((node, index[vlo]));
                    model_edges += 1;
                }
                if hi < b {
                    links.push((node, index[vhi]));
                    model_edges += 1;
                }
            }
        }
        let nodes = ranges.len();
        let mut m = Model {
            nodes,
            edges: model_edges,
            parent: (0..nodes).collect(),
            ranges,
        };
        for (a, b) in links {
            m.union(a, b);
        }
        m
    }

    /// `(dim H^0, dim H^1)` of the preimage of an open set.
    pub fn open_dims(&self, u: &SnappedSet) -> (usize, usize) {
        let mut m = self.model(u);
        let h0 = m.components();
        (h0, m.edges + h0 - m.nodes)
    }

    /// `dim H^n(f⁻¹(I), f⁻¹(C))` for snapped open sets with `C ⊆ I`.
    pub fn pair_dims(&self, i: &SnappedSet, c: &SnappedSet, n: i64) -> usize {
        if !(0..=1).contains(&n) {
            return 0;
        }
        let mut m = self.model(i);
        let touches = |r: &(i64, i64, bool)| {
            let (lo, hi, point) = *r;
            c.iter().any(|&(a, b)| {
                if point {
                    a < lo && lo < b
                } else {
                    a < hi && b > lo
                }
            })
        };
        let mut touched = BTreeSet::new();
        for node in 0..m.nodes {
            if touches(&m.ranges[node]) {
                let root = m.find(node);
                touched.insert(root);
            }
        }
        let h0_i = m.components();
        let rel0 = h0_i - touched.len();
        if n == 0 {
            return rel0;
        }
        let (h0_c, h1_c) = self.open_dims(c);
        let h1_i = m.edges + h0_i - m.nodes;
        (h0_c + rel0 + h1_i) - (h0_i + h1_c)
    }
}

/// Whether the relative interior of `s` meets `f⁻¹((lo, hi))`.
fn meets(f: &SimplicialFunction, s: &[usize], lo: &ExtRat, hi: &ExtRat) -> bool {
    let (m, big) = (
        ExtRat::Fin(f.min_value(s).clone()),
        ExtRat::Fin(f.max_value(s).clone()),
    );
    if lo >= hi {
        false
    } else if m == big {
        lo < &m && &m < hi
    } else {
        &m < hi && lo < &big
    }
}

/// Chains `σ₀ ⊊ … ⊊ σₖ` of simplices, grouped by length and indexed for lookup.
struct Flags {
    by_len: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Flags {
    /// All chains in the given up-set of simplices, as lists of positions in `cells`.
    fn new(cells: &[Simplex], keep: &[bool], top: usize) -> Flags {
        let is_face = |a: usize, b: usize| {
            cells[a].len() < cells[b].len() && cells[a].iter().all(|v| cells[b].contains(v))
        };
        let mut by_len: Vec<Vec<Vec<usize>>> = vec![(0..cells.len())
            .filter(|&c| keep[c])
            .map(|c| vec![c])
            .collect()];
        for _ in 0..top {
            let next: Vec<Vec<usize>> = by_len
                .last()
                .expect("nonempty")
                .iter()
                .flat_map(|chain| {
                    let last = *chain.last().expect("nonempty chain");
                    (0..cells.len())
                        .filter(move |&c| keep[c] && is_face(last, c))
                        .map(move |c| {
                            let mut longer = chain.clone();
                            longer.push(c);
                            longer
                        })
                })
                .collect();
            by_len.push(next);
        }
        let index = by_len
            .iter()
            .map(|v| v.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        Flags { by_len, index }
    }

    fn count(&self, n: i64) -> usize {
        if n < 0 {
            return 0;
        }
        self.by_len.get(n as usize).map_or(0, Vec::len)
    }

    /// Writes the coboundary from degree `n` into `m` at the given offsets, scaled by `sign`.
    fn coboundary(&self, fp: Fp, n: i64, m: &mut Mat, row0: usize, col0: usize, sign: i64) {
        if n < 0 {
            return;
        }
        let Some(rows) = self.by_len.get(n as usize + 1) else {
            return;
        };
        for (r, chain) in rows.iter().enumerate() {
            for drop in 0..chain.len() {
                let mut face = chain.clone();
                face.remove(drop);
                if let Some(&c) = self.index[n as usize].get(&face) {
                    let s = if drop % 2 == 0 { sign } else { -sign };
                    m.set(row0 + r, col0 + c, fp.from_i64(s));
                }
            }
        }
    }
}

/// `dim H^n(f⁻¹(I), f⁻¹(C); F_p)` for a function on a complex of any dimension,
/// where `I` is an open interval and `C ⊆ I` a disjoint union of open intervals.
///
/// The preimage of an open interval is homotopy equivalent to the order complex
/// of the simplices whose relative interior meets it, naturally in the interval.
/// The relative groups are the cohomology of the cone of the restriction from
/// the model of `f⁻¹(I)` to the models of the components of `f⁻¹(C)`.
pub fn interlevel_pair_dims_poset(
    f: &SimplicialFunction,
    i: &OpenSet,
    c: &OpenSet,
    n: i64,
) -> Result<usize> {
    let [(ilo, ihi)] = i.parts.as_slice() else {
        return Err(Error::InvalidPair(
            "the ambient set must be a single open interval".into(),
        ));
    };
    let top = f.complex.dim().unwrap_or(0);
    if n < 0 || n as usize > top {
        return Ok(0);
    }
    let cells: Vec<Simplex> = f.complex.simplices().cloned().collect();
    let pieces: Vec<(ExtRat, ExtRat)> = c
        .parts
        .iter()
        .map(|(a, b)| (a.max(ilo).clone(), b.min(ihi).clone()))
        .filter(|(a, b)| a < b)
        .collect();
    let model = |lo: &ExtRat, hi: &ExtRat| {
        let keep: Vec<bool> = cells.iter().map(|s| meets(f, s, lo, hi)).collect();
        Flags::new(&cells, &keep, top)
    };
    let whole = model(ilo, ihi);
    let parts: Vec<Flags> = pieces.iter().map(|(a, b)| model(a, b)).collect();
    // Cone degree k: C^k(whole) ⊕ ⨁ C^{k-1}(part).
    let size = |k: i64| whole.count(k) + parts.iter().map(|p| p.count(k - 1)).sum::<usize>();
    let differential = |k: i64| {
        let mut m = Mat::zeros(size(k + 1), size(k));
        whole.coboundary(f.fp, k, &mut m, 0, 0, 1);
        let (mut row0, mut col0) = (whole.count(k + 1), whole.count(k));
        for p in &parts {
            if k >= 0 {
                for (r, chain) in p.by_len[k as usize].iter().enumerate() {
                    let c = whole.index[k as usize][chain];
                    m.set(row0 + r, c, 1);
                }
            }
            p.coboundary(f.fp, k - 1, &mut m, row0, col0, -1);
            row0 += p.count(k);
            col0 += p.count(k - 1);
        }
        m.rank(f.fp)
    };
    Ok(size(n) - differential(n) - differential(n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> SimplicialFunction {
        SimplicialFunction::from_ints(
            &[("1", 0), ("2", 1), ("3", 0), ("4", 1)],
            &[&["1", "2"], &["2", "3"], &["3", "4"], &["4", "1"]],
            Fp::two(),
        )
        .unwrap()
    }

    #[test]
    fn point_and_circle() {
        let pt = Complex::closure([vec![0]]);
        assert_eq!(
            relative_cohomology_dims(&pt, &Complex::default(), Fp::two()).unwrap(),
            vec![1]
        );
        let c = circle();
        assert_eq!(
            relative_cohomology_dims(c.complex(), &Complex::default(), Fp::two()).unwrap(),
            vec![1, 1]
        );
    }

    #[test]
    fn cone_is_acyclic() {
        let y = Complex::closure([vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![0, 3, 4]]);
        assert_eq!(
            relative_cohomology_dims(&y, &Complex::default(), Fp::two()).unwrap(),
            vec![1]
        );
    }

    #[test]
    fn relative_pair_must_be_nested() {
        let k = Complex::closure([vec![0]]);
        let a = Complex::closure([vec![1]]);
        assert!(relative_cohomology_dims(&k, &a, Fp::two()).is_err());
    }

    #[test]
    fn interlevel_circle() {
        let c = circle();
        let all = OpenSet::interval(ExtRat::NegInf, ExtRat::PosInf);
        assert_eq!(
            interlevel_pair_dims(&c, &all, &OpenSet::empty(), 0).unwrap(),
            1
        );
        assert_eq!(
            interlevel_pair_dims(&c, &all, &OpenSet::empty(), 1).unwrap(),
            1
        );
        let mid = OpenSet::interval(ExtRat::ratio(1, 4), ExtRat::ratio(3, 4));
        assert_eq!(
            interlevel_pair_dims(&c, &mid, &OpenSet::empty(), 0).unwrap(),
            4
        );
        let below = OpenSet::interval(ExtRat::NegInf, ExtRat::ratio(1, 2));
        assert_eq!(interlevel_pair_dims(&c, &all, &below, 0).unwrap(), 0);
        assert_eq!(interlevel_pair_dims(&c, &all, &below, 1).unwrap(), 2);
        assert_eq!(
            interlevel_pair_dims_subdivided(&c, &all, &below, 1).unwrap(),
            2
        );
    }

    #[test]
    fn lower_star_respects_faces() {
        let c = circle();
        let order = lower_star_order(&c);
        let mut seen = BTreeSet::new();
        for s in &order {
            for f in facets(s) {
                assert!(seen.contains(&f));
            }
            seen.insert(s.clone());
        }
        assert_eq!(order[0], vec![0]);
    }
}
