//! Extended persistence of a function on a simplicial complex and its reading
//! as a multiset of points of the strip.
//!
//! Two independent routes produce a [`Diagram`]:
//!
//! * [`extended_persistence`] reduces the boundary matrix of the coned
//!   filtration (the ascending sublevel sweep followed by coning off the
//!   descending superlevel sets) and [`pairs_to_diagram`] translates the pairs;
//! * [`diagram_via_sampling`] evaluates the relative interlevel cohomology of a
//!   graph on a fine grid of the strip and inverts the block sum.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::grid::{invert_blocks, Grid};
use crate::homology::{
    interlevel_pair_dims, interlevel_pair_dims_poset, lower_star_order, upper_star_order, OpenSet,
    Simplex, SimplicialFunction,
};
use crate::strip::{hom_nonzero, CanonicalPoint, ExtRat, Kind, ProbePoint, StripPoint};

/// The three phases of extended persistence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Klass {
    /// Born and dying in the ascending sweep.
    Ord,
    /// Born and dying in the descending relative sweep.
    Rel,
    /// Born ascending, dying descending.
    Ext,
}

/// One persistence pair: class type, homological degree, birth and death values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RawPair {
    pub klass: Klass,
    pub k: i64,
    pub birth: ExtRat,
    pub death: ExtRat,
}

impl fmt::Display for RawPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}_{} ({}, {})",
            self.klass,
            self.k,
            self.birth.short(),
            self.death.short()
        )
    }
}

/// A finite multiset of canonical points, tagged with the coefficient characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub fp: Fp,
    pub points: BTreeMap<CanonicalPoint, usize>,
}

/// One entry of the JSON form of a diagram.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub kind: Kind,
    pub lo: ExtRat,
    pub hi: ExtRat,
    pub deg: i64,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

/// `{"char":2,"points":[{"kind":"CC","lo":"0/1","hi":"2/1","deg":0,"mult":1}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    #[serde(default = "two")]
    pub char: u32,
    #[serde(default)]
    pub points: Vec<PointJson>,
}

fn two() -> u32 {
    2
}

impl Diagram {
    pub fn empty(fp: Fp) -> Self {
        Diagram {
            fp,
            points: BTreeMap::new(),
        }
    }

    /// Builds a diagram from points with multiplicities, merging repeats and dropping zeros.
    pub fn from_points(fp: Fp, points: impl IntoIterator<Item = (CanonicalPoint, usize)>) -> Self {
        let mut d = Diagram::empty(fp);
        for (p, m) in points {
            d.add(p, m);
        }
        d
    }

    pub fn add(&mut self, p: CanonicalPoint, m: usize) {
        if m > 0 {
            *self.points.entry(p).or_insert(0) += m;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Total number of points counted with multiplicity.
    pub fn total(&self) -> usize {
        self.points.values().sum()
    }

    /// Points with multiplicity, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalPoint, usize)> {
        self.points.iter().map(|(p, &m)| (p, m))
    }

    /// Every point listed as often as its multiplicity.
    pub fn expanded(&self) -> Vec<CanonicalPoint> {
        self.iter()
            .flat_map(|(p, m)| std::iter::repeat_n(p.clone(), m))
            .collect()
    }

    pub fn from_json(j: &DiagramJson) -> Result<Self> {
        let fp = Fp::new(j.char)?;
        let mut d = Diagram::empty(fp);
        for p in &j.points {
            d.add(
                CanonicalPoint::new(p.kind, p.lo.clone(), p.hi.clone(), p.deg)?,
                p.mult,
            );
        }
        Ok(d)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            char: self.fp.char(),
            points: self
                .iter()
                .map(|(p, m)| PointJson {
                    kind: p.kind,
                    lo: p.lo.clone(),
                    hi: p.hi.clone(),
                    deg: p.deg,
                    mult: m,
                })
                .collect(),
        }
    }

    /// The summands `F_I[-d]` joined by `⊕`, or `0` when empty.
    pub fn sheaf_string(&self) -> String {
        if self.is_empty() {
            return "0".into();
        }
        self.expanded()
            .iter()
            .map(CanonicalPoint::sheaf_name)
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }
}

/// A sparse column over `F_p`, sorted by row index.
type Column = Vec<(usize, u32)>;

fn add_scaled(fp: Fp, target: &Column, src: &Column, s: u32) -> Column {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        let ti = target.get(i).map_or(usize::MAX, |e| e.0);
        let sj = src.get(j).map_or(usize::MAX, |e| e.0);
        if ti < sj {
            out.push(target[i]);
            i += 1;
        } else if sj < ti {
            out.push((sj, fp.mul(src[j].1, s)));
            j += 1;
        } else {
            let v = fp.add(target[i].1, fp.mul(src[j].1, s));
            if v != 0 {
                out.push((ti, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A cell of the coned filtration.
#[derive(Clone, Debug)]
enum Cell {
    Apex,
    Base(Simplex),
    Cone(Simplex),
}

/// The pairs of extended persistence, by reduction of the coned filtration.
///
/// The filtration lists the apex of the cone, then every simplex in lower-star
/// order, then the cone over every simplex in upper-star order. Pairs of zero
/// persistence in the ordinary and relative phases are dropped. Essential
/// classes of the input all die in the cone, so only the apex stays unpaired.
pub fn extended_persistence(f: &SimplicialFunction) -> Vec<RawPair> {
    let fp = f.field();
    let lower = lower_star_order(f);
    let upper = upper_star_order(f);
    let n = lower.len();
    let mut cells: Vec<Cell> = Vec::with_capacity(2 * n + 1);
    cells.push(Cell::Apex);
    let mut base_index: HashMap<Simplex, usize> = HashMap::new();
    for s in &lower {
        base_index.insert(s.clone(), cells.len());
        cells.push(Cell::Base(s.clone()));
    }
    let mut cone_index: HashMap<Simplex, usize> = HashMap::new();
    for s in &upper {
        cone_index.insert(s.clone(), cells.len());
        cells.push(Cell::Cone(s.clone()));
    }

    let sign = |i: usize| if i.is_multiple_of(2) { 1 } else { fp.neg(1) };
    let boundary = |cell: &Cell| -> Column {
        let mut col: Column = Vec::new();
        match cell {
            Cell::Apex => {}
            Cell::Base(s) => {
                if s.len() > 1 {
                    for i in 0..s.len() {
                        let mut face = s.clone();
                        face.remove(i);
                        col.push((base_index[&face], sign(i)));
                    }
                }
            }
            Cell::Cone(s) => {
                // ∂(ω * τ) = τ - Σ (-1)^i ω * (τ without its i-th vertex), with ω * ∅ = ω.
                col.push((base_index[s], 1));
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    let row = if face.is_empty() {
                        0
                    } else {
                        cone_index[&face]
                    };
                    col.push((row, fp.neg(sign(i))));
                }
            }
        }
        col.sort_unstable_by_key(|e| e.0);
        col
    };

    let mut columns: Vec<Column> = cells.iter().map(boundary).collect();
    let mut pivot_of_row: HashMap<usize, usize> = HashMap::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..columns.len() {
        while let Some(&(low, v)) = columns[j].last() {
            match pivot_of_row.get(&low) {
                Some(&other) => {
                    let w = columns[other].last().unwrap().1;
                    let s = fp.neg(fp.mul(v, fp.inv(w)));
                    columns[j] = add_scaled(fp, &columns[j], &columns[other], s);
                }
                None => {
                    pivot_of_row.insert(low, j);
                    pairs.push((low, j));
                    break;
                }
            }
        }
    }
    debug_assert_eq!(
        pairs.len() * 2 + 1,
        cells.len(),
        "only the apex stays unpaired"
    );

    let base_value = |s: &Simplex| ExtRat::Fin(f.max_value(s).clone());
    let cone_value = |s: &Simplex| ExtRat::Fin(f.min_value(s).clone());
    let mut out = Vec::new();
    for (i, j) in pairs {
        let pair = match (&cells[i], &cells[j]) {
            (Cell::Base(a), Cell::Base(b)) => RawPair {
                klass: Klass::Ord,
                k: a.len() as i64 - 1,
                birth: base_value(a),
                death: base_value(b),
            },
            (Cell::Base(a), Cell::Cone(b)) => RawPair {
                klass: Klass::Ext,
                k: a.len() as i64 - 1,
                birth: base_value(a),
                death: cone_value(b),
            },
            (Cell::Cone(a), Cell::Cone(b)) => RawPair {
                klass: Klass::Rel,
                k: a.len() as i64,
                birth: cone_value(a),
                death: cone_value(b),
            },
            // The apex is the oldest cell, so it never dies; a base cell never kills a cone cell.
            _ => unreachable!("pairing across phases in the wrong direction"),
        };
        if pair.klass != Klass::Ext && pair.birth == pair.death {
            continue;
        }
        out.push(pair);
    }
    out.sort();
    out
}

/// Translates persistence pairs into canonical points.
///
/// * `Ord_k (p, q)` becomes `[p, q)` in degree `k`;
/// * `Ext_k (p, q)` with `p ≤ q` becomes `[p, q]` in degree `k`;
/// * `Ext_k (p, q)` with `p > q` becomes `(q, p)` in degree `k - 1`;
/// * `Rel_k (p, q)` with `p > q` becomes `(q, p]` in degree `k - 1`.
pub fn pairs_to_diagram(fp: Fp, pairs: &[RawPair]) -> Result<Diagram> {
    let mut d = Diagram::empty(fp);
    for pair in pairs {
        let (b, e) = (pair.birth.clone(), pair.death.clone());
        let bad = || Error::DictionaryError(pair.to_string());
        let point = match pair.klass {
            Klass::Ord if b < e => CanonicalPoint::new(Kind::CO, b, e, pair.k),
            Klass::Ext if b <= e => CanonicalPoint::new(Kind::CC, b, e, pair.k),
            Klass::Ext => CanonicalPoint::new(Kind::OO, e, b, pair.k - 1),
            Klass::Rel if b > e => CanonicalPoint::new(Kind::OC, e, b, pair.k - 1),
            _ => return Err(bad()),
        }
        .map_err(|_| bad())?;
        d.add(point, 1);
    }
    Ok(d)
}

/// The diagram of `f`: extended persistence followed by the dictionary.
pub fn diagram(f: &SimplicialFunction) -> Result<Diagram> {
    pairs_to_diagram(f.field(), &extended_persistence(f))
}

/// `dim h(f)(u)`: the relative interlevel cohomology a point of the strip indexes.
///
/// For the canonical interval `J` of `u` in degree `n`, this is
/// `H^n(f⁻¹(I), f⁻¹(I \ J))` where `I` is the smallest open set of the form
/// `(a, b)` with `a, b ∈ [-∞, +∞]` containing `J` as a relatively closed subset.
/// Graphs use the level-graph model, higher-dimensional complexes the
/// order-complex model.
pub fn interlevel_dim(f: &SimplicialFunction, u: &StripPoint) -> Result<usize> {
    if !u.is_interior() {
        return Ok(0);
    }
    let c = CanonicalPoint::from_strip(u)?;
    let lo = if c.kind.lo_closed() {
        ExtRat::NegInf
    } else {
        c.lo.clone()
    };
    let hi = if c.kind.hi_closed() {
        ExtRat::PosInf
    } else {
        c.hi.clone()
    };
    let mut outside = OpenSet::empty();
    if c.kind.lo_closed() {
        outside.parts.push((ExtRat::NegInf, c.lo.clone()));
    }
    if c.kind.hi_closed() {
        outside.parts.push((c.hi.clone(), ExtRat::PosInf));
    }
    let ambient = OpenSet::interval(lo, hi);
    if f.complex().dim().unwrap_or(0) <= 1 {
        interlevel_pair_dims(f, &ambient, &outside, c.deg)
    } else {
        interlevel_pair_dims_poset(f, &ambient, &outside, c.deg)
    }
}

/// Candidate block corners: all canonical points with endpoints among the
/// critical values and `±∞`, in degrees `-1` up to one above the dimension.
fn sampling_candidates(f: &SimplicialFunction) -> Vec<CanonicalPoint> {
    let top = f.complex().dim().unwrap_or(0) as i64;
    let mut ends: Vec<ExtRat> = vec![ExtRat::NegInf];
    ends.extend(f.critical_values().into_iter().map(ExtRat::Fin));
    ends.push(ExtRat::PosInf);
    let mut out = Vec::new();
    for deg in -1..=top + 1 {
        for kind in Kind::ALL {
            for lo in &ends {
                for hi in &ends {
                    if let Ok(c) = CanonicalPoint::new(kind, lo.clone(), hi.clone(), deg) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

/// The diagram of a function, recovered from sampled interlevel dimensions.
pub fn diagram_via_sampling(f: &SimplicialFunction) -> Result<Diagram> {
    if f.complex().is_empty() {
        return Ok(Diagram::empty(f.field()));
    }
    let corners: Vec<StripPoint> = sampling_candidates(f)
        .iter()
        .map(CanonicalPoint::to_strip)
        .collect();
    let grid = Grid::from_corners(&corners);
    let mut cache: HashMap<StripPoint, usize> = HashMap::new();
    let mut failure = None;
    let blocks = invert_blocks(&corners, |p: &ProbePoint| {
        let u = grid.resolve_probe(p);
        if let Some(&d) = cache.get(&u) {
            return d;
        }
        let d = interlevel_dim(f, &u).unwrap_or_else(|e| {
            failure = Some(e);
            0
        });
        cache.insert(u, d);
        d
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Diagram::from_points(f.field(), blocks))
}

/// `Σ m` over points `v` of the diagram whose block support contains `u`; zero on the boundary.
pub fn evaluate_diagram(d: &Diagram, u: &StripPoint) -> usize {
    d.iter()
        .filter(|(v, _)| hom_nonzero(u, &v.to_strip()))
        .map(|(_, m)| m)
        .sum()
}
