//! Finite direct sums of indecomposables `ι(u)` and the morphisms between them.
//!
//! Every indecomposable is a canonical point `u`, and `Hom(ι(u), ι(v))` is
//! one-dimensional exactly when `v` lies in `↑u ∩ int ↓T(u)`, spanned by a
//! fixed basis morphism `ι(u ⪯ v)`. A morphism between sums is therefore a
//! matrix over `F_p` with entries only in allowed slots; composition is the
//! matrix product with every forbidden slot of the result cleared.
//!
//! The functor `h` sends `ι(v)` to the block `B_v`, whose value at `z` is `F_p`
//! when `z` lies in the support of `B_v` and zero otherwise, and sends the basis
//! morphism to the identity wherever both supports meet.
//!
//! Mapping cones are computed here from the long exact sequence of `h`; the
//! [`rep`] module realizes the same constructions on chain complexes of
//! representations and serves as an independent model.

pub mod axioms;
pub mod nat;
pub mod rep;
pub mod solve;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::epd::PointJson;
use crate::error::{Error, Result};
use crate::field::{Fp, Mat};
use crate::grid::{invert_blocks, Grid};
use crate::strip::{hom_nonzero, CanonicalPoint, Coord, Point, ProbePoint, StripPoint};

/// A finite direct sum of indecomposables, in a fixed order; repetitions allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DcatObject {
    pub summands: Vec<CanonicalPoint>,
}

/// A morphism between two sums: `entries[j][i]` is the coefficient of `ι(source_i ⪯ target_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcatMorphism {
    pub fp: Fp,
    pub source: DcatObject,
    pub target: DcatObject,
    pub entries: Mat,
}

/// Whether the slot from `u` to `v` carries a basis morphism.
pub fn slot_allowed(u: &CanonicalPoint, v: &CanonicalPoint) -> bool {
    hom_nonzero(&u.to_strip(), &v.to_strip())
}

fn probe_of(c: &CanonicalPoint) -> ProbePoint {
    c.to_strip().probe()
}

/// Whether `z` lies in the support of the block at `v`.
fn in_support<C: Coord + From<crate::strip::ExactCoord>>(z: &Point<C>, v: &CanonicalPoint) -> bool {
    let s = v.to_strip();
    let v = Point {
        x: C::from(s.x),
        y: C::from(s.y),
    };
    hom_nonzero(z, &v)
}

impl DcatObject {
    pub fn new(summands: Vec<CanonicalPoint>) -> Self {
        DcatObject { summands }
    }

    pub fn zero() -> Self {
        DcatObject::default()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// The direct sum, listing `self` first.
    pub fn sum(&self, other: &DcatObject) -> DcatObject {
        DcatObject {
            summands: self
                .summands
                .iter()
                .chain(&other.summands)
                .cloned()
                .collect(),
        }
    }

    /// `A[k]`: every summand moved by `T^k`.
    pub fn shift(&self, k: i64) -> DcatObject {
        DcatObject {
            summands: self.summands.iter().map(|c| c.t_apply(k)).collect(),
        }
    }

    /// The summands sorted canonically, for comparison as multisets.
    pub fn sorted(&self) -> Vec<CanonicalPoint> {
        let mut s = self.summands.clone();
        s.sort();
        s
    }

    /// Indices of the summands whose block support contains `z`.
    pub fn support_at<C: Coord + From<crate::strip::ExactCoord>>(
        &self,
        z: &Point<C>,
    ) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| in_support(z, &self.summands[i]))
            .collect()
    }

    /// `dim h(A)(z)`; zero on the boundary.
    pub fn h_eval<C: Coord + From<crate::strip::ExactCoord>>(&self, z: &Point<C>) -> usize {
        self.support_at(z).len()
    }

    /// One JSON point per summand, in order.
    pub fn to_json(&self) -> Vec<PointJson> {
        self.summands.iter().map(point_json).collect()
    }

    /// Reads points with multiplicities, expanding repeats in the given order.
    pub fn from_json(points: &[PointJson]) -> Result<Self> {
        let mut summands = Vec::new();
        for p in points {
            let c = CanonicalPoint::new(p.kind, p.lo.clone(), p.hi.clone(), p.deg)?;
            summands.extend(std::iter::repeat_n(c, p.mult));
        }
        Ok(DcatObject { summands })
    }
}

impl fmt::Display for DcatObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> = self
            .summands
            .iter()
            .map(CanonicalPoint::sheaf_name)
            .collect();
        write!(f, "{}", names.join(" ⊕ "))
    }
}

/// The number of allowed slots from `a` to `b`, which is `dim Hom(A, B)`.
pub fn hom_dim(a: &DcatObject, b: &DcatObject) -> usize {
    hom_basis(a, b).len()
}

/// The allowed slots `(j, i)` from summand `i` of `a` to summand `j` of `b`.
pub fn hom_basis(a: &DcatObject, b: &DcatObject) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (j, v) in b.summands.iter().enumerate() {
        for (i, u) in a.summands.iter().enumerate() {
            if slot_allowed(u, v) {
                out.push((j, i));
            }
        }
    }
    out
}

impl DcatMorphism {
    /// Validates that every nonzero entry sits in an allowed slot.
    pub fn new(fp: Fp, source: DcatObject, target: DcatObject, entries: Mat) -> Result<Self> {
        if entries.rows() != target.len() || entries.cols() != source.len() {
            return Err(Error::CompositionError(format!(
                "matrix is {}x{} but the morphism needs {}x{}",
                entries.rows(),
                entries.cols(),
                target.len(),
                source.len()
            )));
        }
        for j in 0..target.len() {
            for i in 0..source.len() {
                if entries.get(j, i) != 0 && !slot_allowed(&source.summands[i], &target.summands[j])
                {
                    return Err(Error::ForbiddenSlot { row: j, col: i });
                }
            }
        }
        Ok(DcatMorphism {
            fp,
            source,
            target,
            entries,
        })
    }

    /// Builds a morphism from `(row, col, value)` triples with signed values.
    pub fn from_entries(
        fp: Fp,
        source: DcatObject,
        target: DcatObject,
        entries: &[(usize, usize, i64)],
    ) -> Result<Self> {
        let mut m = Mat::zeros(target.len(), source.len());
        for &(j, i, v) in entries {
            if j >= target.len() || i >= source.len() {
                return Err(Error::CompositionError(format!(
                    "entry ({j}, {i}) is out of range"
                )));
            }
            m.set(j, i, fp.add(m.get(j, i), fp.from_i64(v)));
        }
        DcatMorphism::new(fp, source, target, m)
    }

    pub fn zero(fp: Fp, source: DcatObject, target: DcatObject) -> Self {
        let entries = Mat::zeros(target.len(), source.len());
        DcatMorphism {
            fp,
            source,
            target,
            entries,
        }
    }

    pub fn identity(fp: Fp, a: DcatObject) -> Self {
        let entries = Mat::identity(a.len());
        DcatMorphism {
            fp,
            source: a.clone(),
            target: a,
            entries,
        }
    }

    /// Nonzero entries `(row, col, value)` in row-major order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for j in 0..self.entries.rows() {
            for i in 0..self.entries.cols() {
                let v = self.entries.get(j, i);
                if v != 0 {
                    out.push((j, i, v));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    /// Clears every entry outside the allowed slots.
    fn masked(fp: Fp, source: DcatObject, target: DcatObject, mut entries: Mat) -> Self {
        for j in 0..target.len() {
            for i in 0..source.len() {
                if entries.get(j, i) != 0 && !slot_allowed(&source.summands[i], &target.summands[j])
                {
                    entries.set(j, i, 0);
                }
            }
        }
        DcatMorphism {
            fp,
            source,
            target,
            entries,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DcatMorphism) -> Result<DcatMorphism> {
        if self.fp != other.fp {
            return Err(Error::CharMismatch(self.fp.char(), other.fp.char()));
        }
        if self.source != other.target {
            return Err(Error::CompositionError(
                "target of the first map is not the source of the second".into(),
            ));
        }
        let product = self.entries.mul(self.fp, &other.entries);
        Ok(DcatMorphism::masked(
            self.fp,
            other.source.clone(),
            self.target.clone(),
            product,
        ))
    }

    pub fn add(&self, other: &DcatMorphism) -> Result<DcatMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::CompositionError(
                "sum of morphisms with different ends".into(),
            ));
        }
        Ok(DcatMorphism {
            entries: self.entries.add(self.fp, &other.entries),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: i64) -> DcatMorphism {
        DcatMorphism {
            entries: self.entries.scale(self.fp, self.fp.from_i64(s)),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> DcatMorphism {
        self.scale(-1)
    }

    /// `φ[k]`: both ends moved by `T^k`, coefficients unchanged.
    pub fn shift(&self, k: i64) -> DcatMorphism {
        DcatMorphism {
            source: self.source.shift(k),
            target: self.target.shift(k),
            ..self.clone()
        }
    }

    /// The matrix `h(φ)(z)` on the summands whose supports contain `z`.
    pub fn h_eval_mor<C: Coord + From<crate::strip::ExactCoord>>(&self, z: &Point<C>) -> Mat {
        let rows = self.target.support_at(z);
        let cols = self.source.support_at(z);
        self.entries.submatrix(&rows, &cols)
    }

    /// `rank h(φ)(z)`.
    pub fn rank_at<C: Coord + From<crate::strip::ExactCoord>>(&self, z: &Point<C>) -> usize {
        self.h_eval_mor(z).rank(self.fp)
    }

    /// The block `[A_rows, B_cols]` of a morphism between direct sums.
    pub fn block(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> DcatMorphism {
        let r: Vec<usize> = rows.collect();
        let c: Vec<usize> = cols.collect();
        DcatMorphism {
            fp: self.fp,
            source: DcatObject::new(c.iter().map(|&i| self.source.summands[i].clone()).collect()),
            target: DcatObject::new(r.iter().map(|&j| self.target.summands[j].clone()).collect()),
            entries: self.entries.submatrix(&r, &c),
        }
    }

    /// `(φ ψ)`: a morphism out of `A ⊕ B` built from maps out of `A` and `B` with a common target.
    pub fn hcat(&self, other: &DcatMorphism) -> Result<DcatMorphism> {
        if self.target != other.target {
            return Err(Error::CompositionError(
                "row of maps with different targets".into(),
            ));
        }
        Ok(DcatMorphism {
            fp: self.fp,
            source: self.source.sum(&other.source),
            target: self.target.clone(),
            entries: self.entries.hcat(&other.entries),
        })
    }

    /// `(φ; ψ)`: a morphism into `A ⊕ B` built from maps into `A` and `B` with a common source.
    pub fn vcat(&self, other: &DcatMorphism) -> Result<DcatMorphism> {
        if self.source != other.source {
            return Err(Error::CompositionError(
                "column of maps with different sources".into(),
            ));
        }
        let t = self
            .entries
            .transpose()
            .hcat(&other.entries.transpose())
            .transpose();
        Ok(DcatMorphism {
            fp: self.fp,
            source: self.source.clone(),
            target: self.target.sum(&other.target),
            entries: t,
        })
    }

    /// `φ ⊕ ψ`.
    pub fn direct_sum(&self, other: &DcatMorphism) -> DcatMorphism {
        let (r1, c1) = (self.entries.rows(), self.entries.cols());
        let mut m = Mat::zeros(r1 + other.entries.rows(), c1 + other.entries.cols());
        for j in 0..r1 {
            for i in 0..c1 {
                m.set(j, i, self.entries.get(j, i));
            }
        }
        for j in 0..other.entries.rows() {
            for i in 0..other.entries.cols() {
                m.set(r1 + j, c1 + i, other.entries.get(j, i));
            }
        }
        DcatMorphism {
            fp: self.fp,
            source: self.source.sum(&other.source),
            target: self.target.sum(&other.target),
            entries: m,
        }
    }

    pub fn to_json(&self) -> MorphismJson {
        MorphismJson {
            char: self.fp.char(),
            source: self.source.summands.iter().map(point_json).collect(),
            target: self.target.summands.iter().map(point_json).collect(),
            entries: self
                .nonzero_entries()
                .into_iter()
                .map(|(j, i, v)| (j, i, self.fp.to_i64(v).to_string()))
                .collect(),
        }
    }

    pub fn from_json(j: &MorphismJson) -> Result<Self> {
        let fp = Fp::new(j.char)?;
        let source = DcatObject::from_json(&j.source)?;
        let target = DcatObject::from_json(&j.target)?;
        let mut entries = Vec::new();
        for (row, col, s) in &j.entries {
            let v: i64 = s
                .trim()
                .parse()
                .map_err(|_| Error::BadRational(s.clone()))?;
            entries.push((*row, *col, v));
        }
        DcatMorphism::from_entries(fp, source, target, &entries)
    }
}

fn point_json(c: &CanonicalPoint) -> PointJson {
    PointJson {
        kind: c.kind,
        lo: c.lo.clone(),
        hi: c.hi.clone(),
        deg: c.deg,
        mult: 1,
    }
}

/// `{"char":2,"source":[points],"target":[points],"entries":[[j,i,"scalar"],...]}`.
///
/// Points are listed one per summand, in the order the matrix indexes them.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    #[serde(default = "default_char")]
    pub char: u32,
    pub source: Vec<PointJson>,
    pub target: Vec<PointJson>,
    #[serde(default)]
    pub entries: Vec<(usize, usize, String)>,
}

fn default_char() -> u32 {
    2
}

/// Grid lines on which the blocks of a cone of `φ: A → B` can have corners.
fn cone_grid(phi: &DcatMorphism) -> Grid {
    let pts: Vec<StripPoint> = phi
        .source
        .summands
        .iter()
        .chain(&phi.target.summands)
        .chain(&phi.source.shift(1).summands)
        .map(CanonicalPoint::to_strip)
        .collect();
    Grid::from_corners(&pts)
}

/// `dim h(cone φ)(z)` from the long exact sequence
/// `h(A)(z) → h(B)(z) → h(C)(z) → h(A)(T⁻¹z) → h(B)(T⁻¹z)`.
pub fn cone_dim_at<C: Coord + From<crate::strip::ExactCoord>>(
    phi: &DcatMorphism,
    z: &Point<C>,
) -> usize {
    let back = z.t_inv_once();
    phi.target.h_eval(z) - phi.rank_at(z) + phi.source.h_eval(&back) - phi.rank_at(&back)
}

/// A sum of indecomposables isomorphic to the mapping cone of `φ`, in canonical order.
pub fn cone(phi: &DcatMorphism) -> Result<DcatObject> {
    let corners = cone_grid(phi).corners();
    let blocks = invert_blocks(&corners, |z| cone_dim_at(phi, z))?;
    Ok(DcatObject::new(
        blocks
            .into_iter()
            .flat_map(|(p, m)| std::iter::repeat_n(p, m))
            .collect(),
    ))
}

/// Interior sample points for comparing functors built from the given sums: every
/// vertex, edge and cell of the grid through the summands and their images under `T^{±1}`.
pub fn sample_points<'a>(objects: impl IntoIterator<Item = &'a DcatObject>) -> Vec<StripPoint> {
    let mut corners = Vec::new();
    for a in objects {
        for c in &a.summands {
            let p = c.to_strip();
            corners.push(p.t_once());
            corners.push(p.t_inv_once());
            corners.push(p);
        }
    }
    Grid::from_corners(&corners).cell_samples()
}

/// `dim h(A)(z)` for a probe given by a canonical point's corner.
pub fn h_eval_at_point(a: &DcatObject, v: &CanonicalPoint) -> usize {
    a.h_eval(&probe_of(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strip::Kind;

    fn pt(kind: Kind, lo: i64, hi: i64, deg: i64) -> CanonicalPoint {
        CanonicalPoint::ints(kind, Some(lo), Some(hi), deg)
    }

    fn f2() -> Fp {
        Fp::two()
    }

    #[test]
    fn identity_and_vanishing() {
        let u = pt(Kind::CO, 0, 1, 0);
        let a = DcatObject::new(vec![u.clone()]);
        assert_eq!(hom_dim(&a, &a), 1);
        let far = DcatObject::new(vec![pt(Kind::CO, 5, 6, 0)]);
        assert_eq!(hom_dim(&a, &far), 0);
    }

    #[test]
    fn hom_into_closed_interval() {
        let a = DcatObject::new(vec![pt(Kind::CO, 0, 1, 0), pt(Kind::CC, 0, 2, 0)]);
        let b = DcatObject::new(vec![pt(Kind::CC, 0, 2, 0)]);
        assert_eq!(hom_dim(&a, &b), 2);
    }

    #[test]
    fn forbidden_slots_are_rejected() {
        let a = DcatObject::new(vec![pt(Kind::CO, 0, 1, 0)]);
        let b = DcatObject::new(vec![pt(Kind::CO, 5, 6, 0)]);
        assert_eq!(
            DcatMorphism::from_entries(f2(), a, b, &[(0, 0, 1)]),
            Err(Error::ForbiddenSlot { row: 0, col: 0 })
        );
    }

    #[test]
    fn cone_of_identity_is_zero() {
        let a = DcatObject::new(vec![pt(Kind::CO, 0, 1, 0), pt(Kind::OO, 0, 3, 1)]);
        let id = DcatMorphism::identity(f2(), a);
        assert!(cone(&id).unwrap().is_empty());
    }

    #[test]
    fn cone_of_zero_is_target_plus_shifted_source() {
        let a = DcatObject::new(vec![pt(Kind::CO, 0, 1, 0)]);
        let b = DcatObject::new(vec![pt(Kind::CC, 1, 4, 0), pt(Kind::OC, 0, 2, 1)]);
        let zero = DcatMorphism::zero(f2(), a.clone(), b.clone());
        assert_eq!(cone(&zero).unwrap().sorted(), b.sum(&a.shift(1)).sorted());
    }

    #[test]
    fn cone_of_extension_by_zero() {
        let a = DcatObject::new(vec![pt(Kind::CO, 0, 1, 0)]);
        let b = DcatObject::new(vec![pt(Kind::CO, 0, 2, 0)]);
        let phi = DcatMorphism::from_entries(f2(), a, b, &[(0, 0, 1)]).unwrap();
        assert_eq!(cone(&phi).unwrap().summands, vec![pt(Kind::CO, 1, 2, 0)]);
    }

    #[test]
    fn composition_clears_slots_through_the_boundary() {
        let ends = [None, Some(0), Some(1), Some(2)];
        let mut pts = Vec::new();
        for deg in 0..=1 {
            for kind in Kind::ALL {
                for lo in ends {
                    for hi in ends {
                        if let Ok(c) = CanonicalPoint::new(
                            kind,
                            lo.map_or(crate::ExtRat::NegInf, crate::ExtRat::int),
                            hi.map_or(crate::ExtRat::PosInf, crate::ExtRat::int),
                            deg,
                        ) {
                            pts.push(c);
                        }
                    }
                }
            }
        }
        let mut found = 0;
        for u in &pts {
            for v in &pts {
                for w in &pts {
                    if !(slot_allowed(u, v) && slot_allowed(v, w)) || slot_allowed(u, w) {
                        continue;
                    }
                    let (a, b, c) = (
                        DcatObject::new(vec![u.clone()]),
                        DcatObject::new(vec![v.clone()]),
                        DcatObject::new(vec![w.clone()]),
                    );
                    let f = DcatMorphism::from_entries(f2(), a, b.clone(), &[(0, 0, 1)]).unwrap();
                    let g = DcatMorphism::from_entries(f2(), b, c, &[(0, 0, 1)]).unwrap();
                    assert!(g.compose(&f).unwrap().is_zero());
                    found += 1;
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn json_round_trip() {
        let a = DcatObject::new(vec![pt(Kind::CO, 0, 1, 0)]);
        let b = DcatObject::new(vec![pt(Kind::CO, 0, 2, 0)]);
        let phi = DcatMorphism::from_entries(Fp::new(3).unwrap(), a, b, &[(0, 0, -1)]).unwrap();
        let j = serde_json::to_string(&phi.to_json()).unwrap();
        assert!(j.contains("\"-1\""));
        let back = DcatMorphism::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, phi);
    }
}
