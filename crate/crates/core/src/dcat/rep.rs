//! A strict model of interval sheaves: representations of the zigzag poset of a
//! stratification of the real line, and bounded complexes of projective
//! representations.
//!
//! For breakpoints `α₁ < … < α_m`, the poset has vertices `0..=2m`: even
//! vertices are the open strata (`2k` is `(α_k, α_{k+1})`) and odd vertices the
//! points (`2i - 1` is `α_i`), with each point below its two neighbouring open
//! strata. The interval sheaf `F_J` is the interval representation on the
//! contiguous vertex range covered by `J`. The indecomposable projective at `x`
//! is supported on the up-set of `x`, so `Hom(P_x, P_y)` is one-dimensional
//! exactly when `y ≤ x`, and composition is the ordinary matrix product.
//!
//! Every interval representation has a projective resolution of length at most
//! one. A canonical point in degree `d` becomes that resolution with its
//! zeroth term in cohomological degree `d`. Morphisms in the derived category
//! are chain maps modulo homotopy.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;

use crate::dcat::{slot_allowed, DcatMorphism, DcatObject};
use crate::error::{Error, Result};
use crate::field::{complement_cols, Fp, Mat};
use crate::grid::Grid;
use crate::strip::{CanonicalPoint, Coord, ExtRat, Kind, Point, StripPoint};

/// A stratification of the line by finitely many breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strat {
    breaks: Vec<BigRational>,
}

impl Strat {
    /// The stratification by all finite endpoints of the given points.
    pub fn new<'a>(points: impl IntoIterator<Item = &'a CanonicalPoint>) -> Self {
        let set: BTreeSet<BigRational> = points
            .into_iter()
            .flat_map(|c| [c.lo.finite().cloned(), c.hi.finite().cloned()])
            .flatten()
            .collect();
        Strat {
            breaks: set.into_iter().collect(),
        }
    }

    pub fn breaks(&self) -> &[BigRational] {
        &self.breaks
    }

    /// The largest vertex, `2m`.
    pub fn top(&self) -> usize {
        2 * self.breaks.len()
    }

    fn index(&self, r: &BigRational) -> Result<usize> {
        self.breaks
            .binary_search(r)
            .map(|i| i + 1)
            .map_err(|_| Error::Invariant(format!("{r} is not a breakpoint of the stratification")))
    }

    /// The vertex range `[a, b]` of the strata covered by the interval of `c`.
    pub fn range(&self, c: &CanonicalPoint) -> Result<(usize, usize)> {
        let a = match &c.lo {
            ExtRat::NegInf => 0,
            ExtRat::Fin(r) if c.kind.lo_closed() => 2 * self.index(r)? - 1,
            ExtRat::Fin(r) => 2 * self.index(r)?,
            ExtRat::PosInf => return Err(Error::InvalidInterval("lower end +inf".into())),
        };
        let b = match &c.hi {
            ExtRat::PosInf => self.top(),
            ExtRat::Fin(r) if c.kind.hi_closed() => 2 * self.index(r)? - 1,
            ExtRat::Fin(r) => 2 * self.index(r)? - 2,
            ExtRat::NegInf => return Err(Error::InvalidInterval("upper end -inf".into())),
        };
        if a > b {
            return Err(Error::Invariant(format!("empty vertex range for {c}")));
        }
        Ok((a, b))
    }

    /// The canonical point whose interval covers the vertex range `[a, b]`.
    pub fn point(&self, a: usize, b: usize, deg: i64) -> CanonicalPoint {
        let (lo, lo_closed) = if a == 0 {
            (ExtRat::NegInf, false)
        } else if a % 2 == 1 {
            (ExtRat::Fin(self.breaks[(a - 1) / 2].clone()), true)
        } else {
            (ExtRat::Fin(self.breaks[a / 2 - 1].clone()), false)
        };
        let (hi, hi_closed) = if b == self.top() {
            (ExtRat::PosInf, false)
        } else if b % 2 == 1 {
            (ExtRat::Fin(self.breaks[(b - 1) / 2].clone()), true)
        } else {
            (ExtRat::Fin(self.breaks[b / 2].clone()), false)
        };
        CanonicalPoint::new(Kind::from_closedness(lo_closed, hi_closed), lo, hi, deg)
            .expect("valid vertex range")
    }
}

/// `y ≤ x` in the zigzag poset: equal, or `y` is a point stratum next to `x`.
pub fn below(y: usize, x: usize) -> bool {
    y == x || (y % 2 == 1 && y.abs_diff(x) == 1)
}

/// A generator of a complex of projectives: `P_vertex` placed in degree `deg`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gen {
    pub deg: i64,
    pub vertex: usize,
}

/// A bounded complex of finitely generated projective representations.
///
/// `d[j][i]` is the coefficient of the basis map from generator `i` to
/// generator `j`; it is nonzero only when `deg_j = deg_i + 1` and `vertex_j ≤ vertex_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjComplex {
    pub gens: Vec<Gen>,
    pub d: Mat,
}

impl ProjComplex {
    pub fn zero() -> Self {
        ProjComplex {
            gens: Vec::new(),
            d: Mat::zeros(0, 0),
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// The direct sum, listing `self` first.
    pub fn sum(&self, other: &ProjComplex) -> ProjComplex {
        let n = self.len();
        let mut d = Mat::zeros(n + other.len(), n + other.len());
        copy_block(&mut d, &self.d, 0, 0);
        copy_block(&mut d, &other.d, n, n);
        ProjComplex {
            gens: self.gens.iter().chain(&other.gens).copied().collect(),
            d,
        }
    }

    /// `d ∘ d = 0` and every entry respects degrees and the poset.
    pub fn is_valid(&self, fp: Fp) -> bool {
        for j in 0..self.len() {
            for i in 0..self.len() {
                if self.d.get(j, i) != 0
                    && (self.gens[j].deg != self.gens[i].deg + 1
                        || !below(self.gens[j].vertex, self.gens[i].vertex))
                {
                    return false;
                }
            }
        }
        self.d.mul(fp, &self.d).is_zero()
    }

    /// Generators whose projective is nonzero at vertex `x`, in degree `n`.
    fn stalk(&self, x: usize, n: i64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.gens[i].deg == n && below(self.gens[i].vertex, x))
            .collect()
    }

    fn degrees(&self) -> BTreeSet<i64> {
        self.gens.iter().map(|g| g.deg).collect()
    }
}

fn copy_block(dst: &mut Mat, src: &Mat, r0: usize, c0: usize) {
    for r in 0..src.rows() {
        for c in 0..src.cols() {
            dst.set(r0 + r, c0 + c, src.get(r, c));
        }
    }
}

/// Generators of `P₀`, generators of `P₁`, and the unsigned entries of `P₁ → P₀`.
type IntervalResolution = (Vec<usize>, Vec<usize>, Vec<(usize, usize, i64)>);

/// The projective resolution `P₁ → P₀` of the interval representation on `[a, b]`.
fn interval_resolution(a: usize, b: usize) -> IntervalResolution {
    let mut p0: Vec<usize> = (a..=b).filter(|x| x % 2 == 1).collect();
    if p0.is_empty() {
        p0.push(a);
    }
    let tops: BTreeSet<usize> = p0.iter().copied().filter(|x| x % 2 == 1).collect();
    let mut p1 = Vec::new();
    let mut entries = Vec::new();
    let lo = a.saturating_sub(1);
    for w in (lo..=b + 1).filter(|w| w % 2 == 0) {
        let nbrs: Vec<usize> = [w.wrapping_sub(1), w + 1]
            .into_iter()
            .filter(|x| tops.contains(x))
            .collect();
        let inside = usize::from(a <= w && w <= b);
        if nbrs.len() != inside + 1 {
            continue;
        }
        let k = p1.len();
        p1.push(w);
        for (t, x) in nbrs.iter().enumerate() {
            let j = p0.iter().position(|y| y == x).unwrap();
            entries.push((j, k, if t == 0 { 1 } else { -1 }));
        }
    }
    (p0, p1, entries)
}

/// The complex of the indecomposable `c`: `P₀` in degree `deg`, `P₁` in degree `deg - 1`,
/// with the differential multiplied by `(-1)^deg`. Generators list `P₀` first.
pub fn point_complex(fp: Fp, strat: &Strat, c: &CanonicalPoint) -> Result<(ProjComplex, usize)> {
    let (a, b) = strat.range(c)?;
    let (p0, p1, entries) = interval_resolution(a, b);
    let n0 = p0.len();
    let gens: Vec<Gen> = p0
        .iter()
        .map(|&v| Gen {
            deg: c.deg,
            vertex: v,
        })
        .chain(p1.iter().map(|&v| Gen {
            deg: c.deg - 1,
            vertex: v,
        }))
        .collect();
    let sign = if c.deg.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut d = Mat::zeros(gens.len(), gens.len());
    for (j, k, v) in entries {
        d.set(j, n0 + k, fp.from_i64(sign * v));
    }
    Ok((ProjComplex { gens, d }, n0))
}

/// Chain maps `X → Y` modulo null-homotopic maps.
#[derive(Clone, Debug)]
pub struct HomSpace {
    fp: Fp,
    rows: usize,
    cols: usize,
    slots: Vec<(usize, usize)>,
    slot_index: HashMap<(usize, usize), usize>,
    /// Columns: slot vectors of the null-homotopic maps, followed by a basis of a complement.
    frame: Mat,
    null_rank: usize,
    dim: usize,
}

impl HomSpace {
    pub fn new(fp: Fp, x: &ProjComplex, y: &ProjComplex) -> HomSpace {
        let (nx, ny) = (x.len(), y.len());
        let mut slots = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                if y.gens[j].deg == x.gens[i].deg && below(y.gens[j].vertex, x.gens[i].vertex) {
                    slots.push((j, i));
                }
            }
        }
        let slot_index: HashMap<(usize, usize), usize> =
            slots.iter().enumerate().map(|(s, &p)| (p, s)).collect();

        // Rows of the chain-map equations `d_Y Φ - Φ d_X = 0`, one per entry (k, i).
        let mut eq = Mat::zeros(ny * nx, slots.len());
        for (s, &(j, i0)) in slots.iter().enumerate() {
            for k in 0..ny {
                let v = y.d.get(k, j);
                if v != 0 {
                    let r = k * nx + i0;
                    eq.set(r, s, fp.add(eq.get(r, s), v));
                }
            }
            for i in 0..nx {
                let v = x.d.get(i0, i);
                if v != 0 {
                    let r = j * nx + i;
                    eq.set(r, s, fp.sub(eq.get(r, s), v));
                }
            }
        }
        let cycles = eq.kernel(fp);

        // Null-homotopic maps `d_Y H + H d_X` for H running over homotopy slots.
        let mut nulls: Vec<Vec<u32>> = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                if y.gens[j].deg + 1 != x.gens[i].deg || !below(y.gens[j].vertex, x.gens[i].vertex)
                {
                    continue;
                }
                let mut v = vec![0u32; slots.len()];
                for k in 0..ny {
                    let c = y.d.get(k, j);
                    if c != 0 {
                        let s = slot_index[&(k, i)];
                        v[s] = fp.add(v[s], c);
                    }
                }
                for l in 0..nx {
                    let c = x.d.get(i, l);
                    if c != 0 {
                        let s = slot_index[&(j, l)];
                        v[s] = fp.add(v[s], c);
                    }
                }
                nulls.push(v);
            }
        }
        let null_mat = Mat::from_cols(slots.len(), &nulls);
        let null_basis: Vec<Vec<u32>> = null_mat
            .independent_cols(fp)
            .into_iter()
            .map(|c| null_mat.col(c))
            .collect();
        let null_basis_mat = Mat::from_cols(slots.len(), &null_basis);
        let cycle_mat = Mat::from_cols(slots.len(), &cycles);
        let comp: Vec<Vec<u32>> = complement_cols(fp, &null_basis_mat, &cycle_mat)
            .into_iter()
            .map(|c| cycle_mat.col(c))
            .collect();
        let null_rank = null_basis.len();
        let dim = comp.len();
        let frame = Mat::from_cols(
            slots.len(),
            &null_basis.into_iter().chain(comp).collect::<Vec<_>>(),
        );
        HomSpace {
            fp,
            rows: ny,
            cols: nx,
            slots,
            slot_index,
            frame,
            null_rank,
            dim,
        }
    }

    /// `dim Hom_K(X, Y)`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The chain map of the `k`-th basis class.
    pub fn basis_map(&self, k: usize) -> Mat {
        self.slot_vec_to_mat(&self.frame.col(self.null_rank + k))
    }

    fn slot_vec_to_mat(&self, v: &[u32]) -> Mat {
        let mut m = Mat::zeros(self.rows, self.cols);
        for (s, &(j, i)) in self.slots.iter().enumerate() {
            m.set(j, i, v[s]);
        }
        m
    }

    /// The chain map with the given coordinates in the basis classes.
    pub fn from_coords(&self, coords: &[u32]) -> Mat {
        let mut v = vec![0u32; self.slots.len()];
        for (k, &c) in coords.iter().enumerate() {
            if c != 0 {
                let col = self.frame.col(self.null_rank + k);
                for (s, x) in col.into_iter().enumerate() {
                    v[s] = self.fp.add(v[s], self.fp.mul(c, x));
                }
            }
        }
        self.slot_vec_to_mat(&v)
    }

    /// Coordinates of the homotopy class of a chain map in the basis classes.
    pub fn coords(&self, phi: &Mat) -> Result<Vec<u32>> {
        let mut v = vec![0u32; self.slots.len()];
        for j in 0..self.rows {
            for i in 0..self.cols {
                let c = phi.get(j, i);
                if c == 0 {
                    continue;
                }
                match self.slot_index.get(&(j, i)) {
                    Some(&s) => v[s] = c,
                    None => {
                        return Err(Error::Invariant(
                            "map has an entry outside the allowed slots".into(),
                        ))
                    }
                }
            }
        }
        let sol = self
            .frame
            .solve(self.fp, &v)
            .ok_or_else(|| Error::Invariant("map is not a chain map".into()))?;
        Ok(sol[self.null_rank..].to_vec())
    }

    /// Whether a chain map is null-homotopic.
    pub fn is_null(&self, phi: &Mat) -> Result<bool> {
        Ok(self.coords(phi)?.iter().all(|&c| c == 0))
    }
}

/// A representation of the zigzag poset: one space per vertex and one map per
/// arrow from a point stratum to an adjacent open stratum.
#[derive(Clone, Debug)]
pub struct ZigzagRep {
    pub strat: Strat,
    pub dims: Vec<usize>,
    /// `(s, e, matrix)` with `matrix` of shape `dims[e] × dims[s]`.
    pub maps: Vec<(usize, usize, Mat)>,
}

impl ZigzagRep {
    /// `rank(lim → colim)` of the restriction to the vertex range `[a, b]`.
    fn range_rank(&self, fp: Fp, a: usize, b: usize) -> usize {
        let offs: Vec<usize> = (a..=b)
            .scan(0, |acc, x| {
                let o = *acc;
                *acc += self.dims[x];
                Some(o)
            })
            .collect();
        let total: usize = (a..=b).map(|x| self.dims[x]).sum();
        if total == 0 {
            return 0;
        }
        let off = |x: usize| offs[x - a];
        let arrows: Vec<&(usize, usize, Mat)> = self
            .maps
            .iter()
            .filter(|(s, e, _)| a <= *s && *s <= b && a <= *e && *e <= b)
            .collect();
        // Compatible families: f(v_s) = v_e on every arrow.
        let eq_rows: usize = arrows.iter().map(|(_, e, _)| self.dims[*e]).sum();
        let mut eq = Mat::zeros(eq_rows, total);
        let mut r0 = 0;
        for (s, e, m) in &arrows {
            for r in 0..self.dims[*e] {
                for c in 0..self.dims[*s] {
                    eq.set(r0 + r, off(*s) + c, m.get(r, c));
                }
                eq.set(r0 + r, off(*e) + r, fp.neg(1));
            }
            r0 += self.dims[*e];
        }
        let families = eq.kernel(fp);
        // Relations of the colimit: ι_s(v) - ι_e(f v).
        let mut rel: Vec<Vec<u32>> = Vec::new();
        for (s, e, m) in &arrows {
            for c in 0..self.dims[*s] {
                let mut v = vec![0u32; total];
                v[off(*s) + c] = 1;
                for r in 0..self.dims[*e] {
                    v[off(*e) + r] = fp.neg(m.get(r, c));
                }
                rel.push(v);
            }
        }
        let rel_mat = Mat::from_cols(total, &rel);
        let base = rel_mat.rank(fp);
        let images: Vec<Vec<u32>> = families
            .iter()
            .map(|f| {
                let mut v = vec![0u32; total];
                v[off(a)..off(a) + self.dims[a]].copy_from_slice(&f[off(a)..off(a) + self.dims[a]]);
                v
            })
            .collect();
        let joined = rel_mat.hcat(&Mat::from_cols(total, &images));
        joined.rank(fp) - base
    }

    /// Interval multiplicities by inclusion-exclusion over the rank invariant.
    pub fn decompose(&self, fp: Fp, deg: i64) -> Vec<(CanonicalPoint, usize)> {
        let top = self.strat.top();
        let r: Vec<Vec<i64>> = (0..=top)
            .map(|a| {
                (0..=top)
                    .map(|b| {
                        if b < a {
                            0
                        } else {
                            self.range_rank(fp, a, b) as i64
                        }
                    })
                    .collect()
            })
            .collect();
        let get = |a: isize, b: usize| -> i64 {
            if a < 0 || b > top {
                0
            } else {
                r[a as usize][b]
            }
        };
        let mut out = Vec::new();
        for a in 0..=top {
            for b in a..=top {
                let m = get(a as isize, b) - get(a as isize - 1, b) - get(a as isize, b + 1)
                    + get(a as isize - 1, b + 1);
                assert!(m >= 0, "negative interval multiplicity");
                if m > 0 {
                    out.push((self.strat.point(a, b, deg), m as usize));
                }
            }
        }
        out
    }
}

/// The degree-`n` cohomology of a complex of projectives as a zigzag representation.
pub fn cohomology(fp: Fp, strat: &Strat, x: &ProjComplex, n: i64) -> ZigzagRep {
    let top = strat.top();
    // For each vertex: the cochain generators, and a frame [boundaries | cohomology basis].
    let mut frames: Vec<(Vec<usize>, Mat, usize, usize)> = Vec::with_capacity(top + 1);
    for v in 0..=top {
        let cn = x.stalk(v, n);
        let next = x.stalk(v, n + 1);
        let prev = x.stalk(v, n - 1);
        let dn = x.d.submatrix(&next, &cn);
        let dprev = x.d.submatrix(&cn, &prev);
        let cycles = Mat::from_cols(cn.len(), &dn.kernel(fp));
        let bnd_cols = dprev.independent_cols(fp);
        let bnd: Vec<Vec<u32>> = bnd_cols.iter().map(|&c| dprev.col(c)).collect();
        let bnd_mat = Mat::from_cols(cn.len(), &bnd);
        let h: Vec<Vec<u32>> = complement_cols(fp, &bnd_mat, &cycles)
            .into_iter()
            .map(|c| cycles.col(c))
            .collect();
        let nb = bnd.len();
        let nh = h.len();
        let frame = Mat::from_cols(cn.len(), &bnd.into_iter().chain(h).collect::<Vec<_>>());
        frames.push((cn, frame, nb, nh));
    }
    let dims: Vec<usize> = frames.iter().map(|f| f.3).collect();
    let mut maps = Vec::new();
    for s in (1..=top).filter(|s| s % 2 == 1) {
        for e in [s - 1, s + 1] {
            if e > top {
                continue;
            }
            let (cs, fs, nbs, nhs) = &frames[s];
            let (ce, fe, nbe, nhe) = &frames[e];
            let mut m = Mat::zeros(*nhe, *nhs);
            for k in 0..*nhs {
                let col = fs.col(nbs + k);
                let mut v = vec![0u32; ce.len()];
                for (t, &g) in cs.iter().enumerate() {
                    let pos = ce
                        .iter()
                        .position(|&h| h == g)
                        .expect("stalks grow along arrows");
                    v[pos] = col[t];
                }
                let sol = fe.solve(fp, &v).expect("cycles restrict to cycles");
                for r in 0..*nhe {
                    m.set(r, k, sol[nbe + r]);
                }
            }
            maps.push((s, e, m));
        }
    }
    ZigzagRep {
        strat: strat.clone(),
        dims,
        maps,
    }
}

/// The indecomposables of a complex of projectives: the interval summands of
/// every cohomology representation, each in its degree.
pub fn decompose(fp: Fp, strat: &Strat, x: &ProjComplex) -> DcatObject {
    let mut out = Vec::new();
    for n in x.degrees() {
        for (p, m) in cohomology(fp, strat, x, n).decompose(fp, n) {
            out.extend(std::iter::repeat_n(p, m));
        }
    }
    out.sort();
    DcatObject::new(out)
}

/// The chain-level mapping cone of `φ: X → Y`: generators of `X` moved down one
/// degree followed by those of `Y`, with differential `[[-d_X, 0], [φ, d_Y]]`.
pub fn chain_cone(fp: Fp, x: &ProjComplex, y: &ProjComplex, phi: &Mat) -> ProjComplex {
    let (nx, ny) = (x.len(), y.len());
    let gens: Vec<Gen> = x
        .gens
        .iter()
        .map(|g| Gen {
            deg: g.deg - 1,
            vertex: g.vertex,
        })
        .chain(y.gens.iter().copied())
        .collect();
    let mut d = Mat::zeros(nx + ny, nx + ny);
    copy_block(&mut d, &x.d.scale(fp, fp.neg(1)), 0, 0);
    copy_block(&mut d, phi, nx, 0);
    copy_block(&mut d, &y.d, nx, nx);
    ProjComplex { gens, d }
}

/// Working context for one computation: a field, a stratification fine enough
/// for every point involved, and caches of complexes and basis maps.
#[derive(Clone, Debug)]
pub struct RepContext {
    pub fp: Fp,
    pub strat: Strat,
    complexes: HashMap<CanonicalPoint, (ProjComplex, usize)>,
    basis: HashMap<(CanonicalPoint, CanonicalPoint), Mat>,
}

/// A distinguished triangle `A → B → C → A[1]` read back as morphisms of sums.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub cone: DcatObject,
    /// `B → C`.
    pub to_cone: DcatMorphism,
    /// `C → A[1]`.
    pub from_cone: DcatMorphism,
}

impl RepContext {
    pub fn new<'a>(fp: Fp, points: impl IntoIterator<Item = &'a CanonicalPoint>) -> Self {
        RepContext {
            fp,
            strat: Strat::new(points),
            complexes: HashMap::new(),
            basis: HashMap::new(),
        }
    }

    fn point(&mut self, c: &CanonicalPoint) -> Result<(ProjComplex, usize)> {
        if let Some(v) = self.complexes.get(c) {
            return Ok(v.clone());
        }
        let v = point_complex(self.fp, &self.strat, c)?;
        self.complexes.insert(c.clone(), v.clone());
        Ok(v)
    }

    /// The complex of an indecomposable.
    pub fn to_rep_point(&mut self, c: &CanonicalPoint) -> Result<ProjComplex> {
        Ok(self.point(c)?.0)
    }

    /// The complex of a sum: the direct sum of the complexes of its summands.
    pub fn to_rep(&mut self, a: &DcatObject) -> Result<ProjComplex> {
        let mut x = ProjComplex::zero();
        for c in &a.summands {
            x = x.sum(&self.point(c)?.0);
        }
        Ok(x)
    }

    /// `dim Hom_K(ι(u), ι(v))` computed from chain maps modulo homotopy.
    pub fn hom_k_dim(&mut self, u: &CanonicalPoint, v: &CanonicalPoint) -> Result<usize> {
        let (x, _) = self.point(u)?;
        let (y, _) = self.point(v)?;
        Ok(HomSpace::new(self.fp, &x, &y).dim())
    }

    /// The chain map realizing the basis morphism `ι(u ⪯ v)`.
    ///
    /// Maps within one degree induce the identity on every stratum where both
    /// intervals live; maps that lower the degree by one are the class of the
    /// extension of the two intervals by the corners of the rectangle they span.
    pub fn basis_map(&mut self, u: &CanonicalPoint, v: &CanonicalPoint) -> Result<Mat> {
        let key = (u.clone(), v.clone());
        if let Some(m) = self.basis.get(&key) {
            return Ok(m.clone());
        }
        if !slot_allowed(u, v) {
            return Err(Error::Invariant(format!(
                "no basis morphism from {u} to {v}"
            )));
        }
        let m = if u.deg == v.deg {
            self.same_degree_map(u, v)?
        } else if v.deg == u.deg - 1 {
            self.extension_map(u, v)?
        } else {
            return Err(Error::Invariant(format!(
                "slot from {u} to {v} spans more than one degree"
            )));
        };
        self.basis.insert(key, m.clone());
        Ok(m)
    }

    fn same_degree_map(&mut self, u: &CanonicalPoint, v: &CanonicalPoint) -> Result<Mat> {
        let (x, nx0) = self.point(u)?;
        let (y, ny0) = self.point(v)?;
        let hs = HomSpace::new(self.fp, &x, &y);
        if hs.dim() != 1 {
            return Err(Error::Invariant(format!(
                "Hom from {u} to {v} has dimension {}",
                hs.dim()
            )));
        }
        let phi = hs.basis_map(0);
        let (au, bu) = self.strat.range(u)?;
        let (av, bv) = self.strat.range(v)?;
        let vertex = au.max(av);
        if vertex > bu.min(bv) {
            return Err(Error::Invariant(format!(
                "intervals of {u} and {v} are disjoint"
            )));
        }
        let i = (0..nx0)
            .find(|&i| below(x.gens[i].vertex, vertex))
            .ok_or_else(|| Error::Invariant("no generator covers the overlap".into()))?;
        let scalar = (0..ny0).fold(0, |acc, j| self.fp.add(acc, phi.get(j, i)));
        if scalar == 0 {
            return Err(Error::Invariant(format!(
                "map from {u} to {v} vanishes on the overlap"
            )));
        }
        Ok(phi.scale(self.fp, self.fp.inv(scalar)))
    }

    /// The class of `0 → M_{v'} → M_{c₁} ⊕ M_{c₂} → M_w → 0`, where `c₁, c₂` are the
    /// other corners of the rectangle spanned by `w` and `T⁻¹(v')` in degree zero;
    /// corners on the boundary of the strip are dropped.
    fn extension_map(&mut self, w: &CanonicalPoint, vp: &CanonicalPoint) -> Result<Mat> {
        let fp = self.fp;
        let top_pt = w.with_deg(0).to_strip();
        let bottom_pt = vp.with_deg(0).to_strip();
        let corners = [
            Point::new(top_pt.x.clone(), bottom_pt.y.clone()),
            Point::new(bottom_pt.x.clone(), top_pt.y.clone()),
        ];
        let mut mids: Vec<Option<(usize, usize)>> = Vec::new();
        for c in &corners {
            if c.on_boundary() {
                mids.push(None);
                continue;
            }
            let p = CanonicalPoint::from_strip(c)?;
            if p.deg != 0 {
                return Err(Error::Invariant(format!(
                    "rectangle corner {p} leaves the degree-zero tile"
                )));
            }
            mids.push(Some(self.strat.range(&p)?));
        }
        let inside = |r: Option<(usize, usize)>, x: usize| r.is_some_and(|(a, b)| a <= x && x <= b);

        let (aw, bw) = self.strat.range(w)?;
        let (p0, p1, entries) = interval_resolution(aw, bw);
        let (x, nx0) = self.point(w)?;
        let (y, ny0) = self.point(vp)?;
        let (au, bu) = self.strat.range(vp)?;
        // Lift each generator of M_w through (1, -1).
        let lifts: Vec<(u32, u32)> = p0
            .iter()
            .map(|&g| {
                if inside(mids[0], g) {
                    Ok((1, 0))
                } else if inside(mids[1], g) {
                    Ok((0, fp.neg(1)))
                } else {
                    Err(Error::Invariant(
                        "extension does not cover the quotient".into(),
                    ))
                }
            })
            .collect::<Result<_>>()?;
        let mut phi = Mat::zeros(y.len(), x.len());
        for (k, &r) in p1.iter().enumerate() {
            let (mut t1, mut t2) = (0u32, 0u32);
            for &(j, kk, c) in &entries {
                if kk != k {
                    continue;
                }
                let c = fp.from_i64(c);
                let g = p0[j];
                if inside(mids[0], g) && inside(mids[0], r) {
                    t1 = fp.add(t1, fp.mul(c, lifts[j].0));
                }
                if inside(mids[1], g) && inside(mids[1], r) {
                    t2 = fp.add(t2, fp.mul(c, lifts[j].1));
                }
            }
            let (in1, in2) = (inside(mids[0], r), inside(mids[1], r));
            let t = match (in1, in2) {
                (true, true) if t1 == t2 => t1,
                (true, false) => t1,
                (false, true) => t2,
                (false, false) => 0,
                _ => {
                    return Err(Error::Invariant(format!(
                        "extension cocycle from {w} to {vp} leaves the kernel at vertex {r}"
                    )))
                }
            };
            if t == 0 {
                continue;
            }
            if !(au <= r && r <= bu) {
                return Err(Error::Invariant(
                    "extension cocycle leaves the kernel".into(),
                ));
            }
            let j = (0..ny0)
                .find(|&j| below(y.gens[j].vertex, r))
                .ok_or_else(|| Error::Invariant("no generator lifts the cocycle".into()))?;
            phi.set(j, nx0 + k, t);
        }
        let hs = HomSpace::new(fp, &x, &y);
        if hs.is_null(&phi)? {
            return Err(Error::Invariant(format!(
                "extension from {w} to {vp} splits"
            )));
        }
        Ok(phi)
    }

    /// The chain map realizing a morphism of sums, one block per slot.
    pub fn strictify(&mut self, phi: &DcatMorphism) -> Result<Mat> {
        let src: Vec<(ProjComplex, usize)> = phi
            .source
            .summands
            .iter()
            .map(|c| self.point(c))
            .collect::<Result<_>>()?;
        let tgt: Vec<(ProjComplex, usize)> = phi
            .target
            .summands
            .iter()
            .map(|c| self.point(c))
            .collect::<Result<_>>()?;
        let col_off: Vec<usize> = offsets(src.iter().map(|s| s.0.len()));
        let row_off: Vec<usize> = offsets(tgt.iter().map(|t| t.0.len()));
        let total_c: usize = src.iter().map(|s| s.0.len()).sum();
        let total_r: usize = tgt.iter().map(|t| t.0.len()).sum();
        let mut m = Mat::zeros(total_r, total_c);
        for (j, i, v) in phi.nonzero_entries() {
            let b = self.basis_map(&phi.source.summands[i], &phi.target.summands[j])?;
            copy_block(&mut m, &b.scale(self.fp, v), row_off[j], col_off[i]);
        }
        Ok(m)
    }

    /// The mapping cone of `φ` computed on chain complexes and decomposed.
    pub fn cone(&mut self, phi: &DcatMorphism) -> Result<DcatObject> {
        let x = self.to_rep(&phi.source)?;
        let y = self.to_rep(&phi.target)?;
        let m = self.strictify(phi)?;
        let c = chain_cone(self.fp, &x, &y, &m);
        Ok(decompose(self.fp, &self.strat, &c))
    }

    /// Chain maps `ι(c) → X`, one for each summand of `cone`, that together form
    /// an isomorphism `⊕ ι(c) → X` in the homotopy category.
    ///
    /// At each point `c`, the maps that factor through a point just above `c`
    /// form the radical; a complement of the radical has the multiplicity of `c`.
    fn splitting(
        &mut self,
        x: &ProjComplex,
        summands: &DcatObject,
        lines: &Grid,
    ) -> Result<Vec<Mat>> {
        let mut out: Vec<Option<Mat>> = vec![None; summands.len()];
        let mut seen: BTreeSet<&CanonicalPoint> = BTreeSet::new();
        for c in &summands.summands {
            if !seen.insert(c) {
                continue;
            }
            let slots: Vec<usize> = (0..summands.len())
                .filter(|&k| summands.summands[k] == *c)
                .collect();
            let (xc, _) = self.point(c)?;
            let hs = HomSpace::new(self.fp, &xc, x);
            let mut radical: Vec<Vec<u32>> = Vec::new();
            for up in above_neighbours(c, lines)? {
                let (xu, _) = self.point(&up)?;
                let hu = HomSpace::new(self.fp, &xu, x);
                let b = self.basis_map(c, &up)?;
                for k in 0..hu.dim() {
                    let f = hu.basis_map(k).mul(self.fp, &b);
                    radical.push(hs.coords(&f)?);
                }
            }
            let rad = Mat::from_cols(hs.dim(), &radical);
            let rad_basis: Vec<Vec<u32>> = rad
                .independent_cols(self.fp)
                .into_iter()
                .map(|k| rad.col(k))
                .collect();
            let rad_mat = Mat::from_cols(hs.dim(), &rad_basis);
            let all = Mat::identity(hs.dim());
            let top = complement_cols(self.fp, &rad_mat, &all);
            if top.len() != slots.len() {
                return Err(Error::Invariant(format!(
                    "{c} appears {} times but its top has dimension {}",
                    slots.len(),
                    top.len()
                )));
            }
            for (&k, &t) in slots.iter().zip(&top) {
                out[k] = Some(hs.from_coords(&all.col(t)));
            }
        }
        Ok(out
            .into_iter()
            .map(|m| m.expect("every summand split"))
            .collect())
    }

    /// The triangle `A → B → cone(φ) → A[1]` with both new maps read back as
    /// morphisms of sums, for a given decomposition of the cone.
    pub fn triangle(&mut self, phi: &DcatMorphism, cone: &DcatObject) -> Result<Triangle> {
        let fp = self.fp;
        let x = self.to_rep(&phi.source)?;
        let y = self.to_rep(&phi.target)?;
        let m = self.strictify(phi)?;
        let c = chain_cone(fp, &x, &y, &m);
        let mut found = decompose(fp, &self.strat, &c);
        found.summands.sort();
        if found.sorted() != cone.sorted() {
            return Err(Error::Invariant(format!(
                "cone decomposes as {found}, expected {cone}"
            )));
        }
        let shifted = phi.source.shift(1);
        let lines = triangle_lines(phi, cone);
        let psi = self.splitting(&c, cone, &lines)?;
        let (nx, ny) = (x.len(), y.len());

        // B → C: the inclusion of Y into the cone, one source summand at a time.
        let mut to_cone = DcatMorphism::zero(fp, phi.target.clone(), cone.clone());
        let mut row = 0;
        for (j, b) in phi.target.summands.iter().enumerate() {
            let (xb, _) = self.point(b)?;
            let mut incl = Mat::zeros(c.len(), xb.len());
            for t in 0..xb.len() {
                incl.set(nx + row + t, t, 1);
            }
            row += xb.len();
            let hs = HomSpace::new(fp, &xb, &c);
            let target = hs.coords(&incl)?;
            let cands: Vec<usize> = (0..cone.len())
                .filter(|&k| slot_allowed(b, &cone.summands[k]))
                .collect();
            let mut cols = Vec::new();
            for &k in &cands {
                let f = psi[k].mul(fp, &self.basis_map(b, &cone.summands[k])?);
                cols.push(hs.coords(&f)?);
            }
            let sol = Mat::from_cols(hs.dim(), &cols)
                .solve(fp, &target)
                .ok_or_else(|| {
                    Error::Invariant("inclusion into the cone does not factor".into())
                })?;
            for (&k, &v) in cands.iter().zip(&sol) {
                to_cone.entries.set(k, j, v);
            }
        }
        debug_assert_eq!(row, ny);

        // C → A[1]: the projection of the cone onto X[1], composed with each ψ.
        let xs = self.to_rep(&shifted)?;
        let mut proj = Mat::zeros(xs.len(), c.len());
        for t in 0..nx {
            proj.set(t, t, 1);
        }
        let mut from_cone = DcatMorphism::zero(fp, cone.clone(), shifted.clone());
        for (k, ck) in cone.summands.iter().enumerate() {
            let (xc, _) = self.point(ck)?;
            let f = proj.mul(fp, &psi[k]);
            let hs = HomSpace::new(fp, &xc, &xs);
            let target = hs.coords(&f)?;
            let cands: Vec<usize> = (0..shifted.len())
                .filter(|&i| slot_allowed(ck, &shifted.summands[i]))
                .collect();
            let mut cols = Vec::new();
            let offs = offsets(
                shifted
                    .summands
                    .iter()
                    .map(|a| self.point(a).map(|p| p.0.len()).unwrap_or(0)),
            );
            for &i in &cands {
                let b = self.basis_map(ck, &shifted.summands[i])?;
                let mut full = Mat::zeros(xs.len(), xc.len());
                copy_block(&mut full, &b, offs[i], 0);
                cols.push(hs.coords(&full)?);
            }
            let sol = Mat::from_cols(hs.dim(), &cols)
                .solve(fp, &target)
                .ok_or_else(|| {
                    Error::Invariant("projection from the cone does not factor".into())
                })?;
            for (&i, &v) in cands.iter().zip(&sol) {
                from_cone.entries.set(i, k, v);
            }
        }
        Ok(Triangle {
            cone: cone.clone(),
            to_cone,
            from_cone,
        })
    }
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .map(|s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

/// Points just to the left of and just above `c`, inside the same cells of `lines`.
fn above_neighbours(c: &CanonicalPoint, lines: &Grid) -> Result<Vec<CanonicalPoint>> {
    let p = c.to_strip();
    let left = lines
        .xs
        .iter()
        .rev()
        .find(|x| **x < p.x)
        .cloned()
        .unwrap_or_else(|| p.x.add_pi(-1));
    let up = lines
        .ys
        .iter()
        .find(|y| **y > p.y)
        .cloned()
        .unwrap_or_else(|| p.y.add_pi(1));
    let candidates = [
        Point::new(left.between(&p.x), p.y.clone()),
        Point::new(p.x.clone(), p.y.between(&up)),
    ];
    let mut out = Vec::new();
    for q in candidates {
        if q.is_interior() {
            out.push(CanonicalPoint::from_strip(&q)?);
        }
    }
    Ok(out)
}

/// The grid of every corner of the triangle of `φ` and of its image under `T`.
fn triangle_lines(phi: &DcatMorphism, cone: &DcatObject) -> Grid {
    let shifted = phi.source.shift(1);
    let mut pts: Vec<StripPoint> = Vec::new();
    for p in phi
        .source
        .summands
        .iter()
        .chain(&phi.target.summands)
        .chain(&cone.summands)
        .chain(&shifted.summands)
    {
        pts.push(p.to_strip());
        pts.push(p.to_strip().t_once());
    }
    Grid::from_corners(&pts)
}

/// Every point whose endpoints must be breakpoints when reading back the triangle of `φ`.
pub fn triangle_points(phi: &DcatMorphism, cone: &DcatObject) -> Result<Vec<CanonicalPoint>> {
    let shifted = phi.source.shift(1);
    let lines = triangle_lines(phi, cone);
    let mut out: Vec<CanonicalPoint> = phi
        .source
        .summands
        .iter()
        .chain(&phi.target.summands)
        .chain(&cone.summands)
        .chain(&shifted.summands)
        .cloned()
        .collect();
    for c in &cone.summands {
        out.extend(above_neighbours(c, &lines)?);
    }
    Ok(out)
}

/// The triangle of `φ` in a fresh context, with the cone taken from the block model.
pub fn triangle(phi: &DcatMorphism) -> Result<Triangle> {
    let cone = crate::dcat::cone(phi)?;
    let pts = triangle_points(phi, &cone)?;
    let mut ctx = RepContext::new(phi.fp, &pts);
    ctx.triangle(phi, &cone)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(kind: Kind, lo: Option<i64>, hi: Option<i64>, deg: i64) -> CanonicalPoint {
        CanonicalPoint::ints(kind, lo, hi, deg)
    }

    #[test]
    fn ranges_round_trip() {
        let pts: Vec<CanonicalPoint> = vec![
            pt(Kind::CC, Some(0), Some(2), 0),
            pt(Kind::OO, None, None, 1),
            pt(Kind::CO, Some(1), None, 0),
            pt(Kind::OC, None, Some(1), 0),
            pt(Kind::CC, Some(1), Some(1), 0),
            pt(Kind::OO, Some(0), Some(1), 2),
        ];
        let s = Strat::new(&pts);
        for p in &pts {
            let (a, b) = s.range(p).unwrap();
            assert_eq!(&s.point(a, b, p.deg), p);
        }
    }

    #[test]
    fn point_complexes_are_complexes() {
        let fp = Fp::new(3).unwrap();
        let pts = [
            pt(Kind::CC, Some(0), Some(2), 1),
            pt(Kind::OO, Some(0), Some(2), 0),
            pt(Kind::CO, Some(1), None, 0),
        ];
        let s = Strat::new(&pts);
        for p in &pts {
            let (c, _) = point_complex(fp, &s, p).unwrap();
            assert!(c.is_valid(fp));
            assert_eq!(decompose(fp, &s, &c).summands, vec![p.clone()]);
        }
    }

    #[test]
    fn hom_dimension_of_extension_by_zero() {
        let fp = Fp::two();
        let u = pt(Kind::CO, Some(0), Some(1), 0);
        let v = pt(Kind::CC, Some(0), Some(2), 0);
        let mut ctx = RepContext::new(fp, [&u, &v]);
        assert_eq!(ctx.hom_k_dim(&u, &v).unwrap(), 1);
        assert_eq!(ctx.hom_k_dim(&v, &u).unwrap(), 0);
    }

    #[test]
    fn chain_cone_of_inclusion() {
        let fp = Fp::two();
        let a = DcatObject::new(vec![pt(Kind::CO, Some(0), Some(1), 0)]);
        let b = DcatObject::new(vec![pt(Kind::CO, Some(0), Some(2), 0)]);
        let phi = DcatMorphism::from_entries(fp, a.clone(), b.clone(), &[(0, 0, 1)]).unwrap();
        let mut ctx = RepContext::new(fp, a.summands.iter().chain(&b.summands));
        assert_eq!(
            ctx.cone(&phi).unwrap().summands,
            vec![pt(Kind::CO, Some(1), Some(2), 0)]
        );
    }
}
