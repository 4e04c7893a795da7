//! Exact geometry of the strip `-π ≤ x + y ≤ π`.
//!
//! Coordinates are restricted to numbers of the form `nπ + arctan t` with `t`
//! rational or `-∞`, which keeps every order test exact. A point of the strip
//! interior corresponds to an interval sheaf `F_I[-d]` on the real line; the
//! [`CanonicalPoint`] type stores that interval description and is the storage
//! format used everywhere else in the crate.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rational number or one of the two infinities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRat {
    NegInf,
    Fin(BigRational),
    PosInf,
}

impl ExtRat {
    pub fn int(v: i64) -> Self {
        ExtRat::Fin(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ExtRat::Fin(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Fin(_))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRat::Fin(r) => Some(r),
            _ => None,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtRat::NegInf => ExtRat::PosInf,
            ExtRat::PosInf => ExtRat::NegInf,
            ExtRat::Fin(r) => ExtRat::Fin(-r),
        }
    }

    /// A value strictly between `self` and `other` (which must satisfy `self < other`).
    pub fn between(&self, other: &ExtRat) -> ExtRat {
        let one = BigRational::one();
        match (self, other) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) => {
                ExtRat::Fin((a + b) / BigRational::from_integer(2.into()))
            }
            (ExtRat::NegInf, ExtRat::Fin(b)) => ExtRat::Fin(b - one),
            (ExtRat::Fin(a), ExtRat::PosInf) => ExtRat::Fin(a + one),
            (ExtRat::NegInf, ExtRat::PosInf) => ExtRat::Fin(BigRational::zero()),
            _ => panic!("between called on an empty range"),
        }
    }

    /// Approximate value for plotting only.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRat::NegInf => f64::NEG_INFINITY,
            ExtRat::PosInf => f64::INFINITY,
            ExtRat::Fin(r) => {
                let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
                let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
                n / d
            }
        }
    }

    /// Short human form: integers without denominator, `-inf` and `+inf` spelled out.
    pub fn short(&self) -> String {
        match self {
            ExtRat::NegInf => "-inf".into(),
            ExtRat::PosInf => "+inf".into(),
            ExtRat::Fin(r) if r.is_integer() => r.numer().to_string(),
            ExtRat::Fin(r) => format!("{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Display for ExtRat {
    /// Serialized form: `p/q` with positive denominator, or `-inf` / `+inf`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => write!(f, "-inf"),
            ExtRat::PosInf => write!(f, "+inf"),
            ExtRat::Fin(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for ExtRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "-inf" | "-infinity" => return Ok(ExtRat::NegInf),
            "+inf" | "inf" | "+infinity" | "infinity" => return Ok(ExtRat::PosInf),
            _ => {}
        }
        let bad = || Error::BadRational(s.to_string());
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(ExtRat::Fin(BigRational::new(n, d)))
    }
}

impl Serialize for ExtRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtRat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The real number `nπ + arctan t`, with `arctan(-∞) = -π/2`.
///
/// `t` never equals `+∞`; that value is normalized to `(n + 1, -∞)`. With this
/// normal form the lexicographic order on `(n, t)` is the order of the reals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactCoord {
    n: i64,
    t: ExtRat,
}

impl ExactCoord {
    pub fn new(n: i64, t: ExtRat) -> Self {
        match t {
            ExtRat::PosInf => ExactCoord {
                n: n + 1,
                t: ExtRat::NegInf,
            },
            t => ExactCoord { n, t },
        }
    }

    /// `arctan v`, an element of `[-π/2, π/2]`.
    pub fn arctan(v: &ExtRat) -> Self {
        ExactCoord::new(0, v.clone())
    }

    pub fn multiple_of_pi(&self) -> i64 {
        self.n
    }

    pub fn tangent(&self) -> &ExtRat {
        &self.t
    }

    /// If this coordinate lies in `[-π/2, π/2]`, the extended rational whose arctangent it is.
    pub fn as_arctan(&self) -> Option<ExtRat> {
        match (self.n, &self.t) {
            (0, t) => Some(t.clone()),
            (1, ExtRat::NegInf) => Some(ExtRat::PosInf),
            _ => None,
        }
    }

    /// Approximate real value for plotting only.
    pub fn to_f64(&self) -> f64 {
        self.n as f64 * std::f64::consts::PI + self.t.to_f64().atan()
    }

    /// A coordinate strictly between `self` and `other` (which must satisfy `self < other`).
    pub fn between(&self, other: &ExactCoord) -> ExactCoord {
        assert!(self < other, "between called on an empty range");
        if self.n == other.n {
            ExactCoord::new(self.n, self.t.between(&other.t))
        } else {
            match &self.t {
                ExtRat::NegInf => ExactCoord::new(self.n, ExtRat::int(0)),
                t => ExactCoord::new(self.n, t.between(&ExtRat::PosInf)),
            }
        }
    }
}

/// Coordinates supporting the operations needed for strip geometry.
pub trait Coord: Clone + Ord {
    /// `-c`.
    fn neg(&self) -> Self;
    /// `c + kπ`.
    fn add_pi(&self, k: i64) -> Self;
}

impl Coord for ExactCoord {
    fn neg(&self) -> Self {
        match &self.t {
            ExtRat::NegInf => ExactCoord {
                n: 1 - self.n,
                t: ExtRat::NegInf,
            },
            t => ExactCoord {
                n: -self.n,
                t: t.neg(),
            },
        }
    }

    fn add_pi(&self, k: i64) -> Self {
        ExactCoord {
            n: self.n + k,
            t: self.t.clone(),
        }
    }
}

/// An exact coordinate displaced by an infinitesimal multiple `eps` of a fixed
/// positive infinitesimal; used for probing functions just beside a grid line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PCoord {
    pub c: ExactCoord,
    pub eps: i8,
}

impl From<ExactCoord> for PCoord {
    fn from(c: ExactCoord) -> Self {
        PCoord { c, eps: 0 }
    }
}

impl Coord for PCoord {
    fn neg(&self) -> Self {
        PCoord {
            c: self.c.neg(),
            eps: -self.eps,
        }
    }

    fn add_pi(&self, k: i64) -> Self {
        PCoord {
            c: self.c.add_pi(k),
            eps: self.eps,
        }
    }
}

/// A point of the plane; a point of the strip when `-π ≤ x + y ≤ π`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point<C> {
    pub x: C,
    pub y: C,
}

/// A point with exact coordinates.
pub type StripPoint = Point<ExactCoord>;

/// A point with infinitesimally perturbed coordinates.
pub type ProbePoint = Point<PCoord>;

impl<C: Coord> Point<C> {
    pub fn new(x: C, y: C) -> Self {
        Point { x, y }
    }

    /// `-π ≤ x + y ≤ π`.
    pub fn in_strip(&self) -> bool {
        self.x >= self.y.neg().add_pi(-1) && self.x <= self.y.neg().add_pi(1)
    }

    /// `-π < x + y < π`.
    pub fn is_interior(&self) -> bool {
        self.x > self.y.neg().add_pi(-1) && self.x < self.y.neg().add_pi(1)
    }

    /// `x + y = ±π`.
    pub fn on_boundary(&self) -> bool {
        self.in_strip() && !self.is_interior()
    }

    /// The glide reflection `(x, y) ↦ (-π - y, π - x)`.
    pub fn t_once(&self) -> Self {
        Point {
            x: self.y.neg().add_pi(-1),
            y: self.x.neg().add_pi(1),
        }
    }

    /// The inverse glide reflection `(x, y) ↦ (π - y, -π - x)`.
    pub fn t_inv_once(&self) -> Self {
        Point {
            x: self.y.neg().add_pi(1),
            y: self.x.neg().add_pi(-1),
        }
    }

    /// `T^k` for any integer `k`; `T²` is the translation by `(-2π, 2π)`.
    pub fn t_apply(&self, k: i64) -> Self {
        let half = k.div_euclid(2);
        let shifted = Point {
            x: self.x.add_pi(-2 * half),
            y: self.y.add_pi(2 * half),
        };
        if k.rem_euclid(2) == 1 {
            shifted.t_once()
        } else {
            shifted
        }
    }

    /// The strip order: `(x₁, y₁) ≤ (x₂, y₂)` iff `x₁ ≥ x₂` and `y₁ ≤ y₂`.
    pub fn leq(&self, other: &Self) -> bool {
        self.x >= other.x && self.y <= other.y
    }

    pub fn lt(&self, other: &Self) -> bool {
        self.leq(other) && self != other
    }

    /// Both coordinates strictly ordered.
    pub fn strictly_below(&self, other: &Self) -> bool {
        self.x > other.x && self.y < other.y
    }
}

/// Whether there is a nonzero morphism from the indecomposable at `u` to the one
/// at `v`; equivalently whether `u` lies in the support of the block at `v`.
///
/// Holds iff both points are interior, `u ≤ v` and `v` lies strictly below `T(u)`
/// in both coordinates.
pub fn hom_nonzero<C: Coord>(u: &Point<C>, v: &Point<C>) -> bool {
    u.is_interior()
        && v.is_interior()
        && v.x <= u.x
        && v.y >= u.y
        && v.x > u.y.neg().add_pi(-1)
        && v.y < u.x.neg().add_pi(1)
}

/// Whether the probe `u` lies in the support of the block at `v`.
pub fn in_block_support(u: &ProbePoint, v: &StripPoint) -> bool {
    let v = Point {
        x: PCoord::from(v.x.clone()),
        y: PCoord::from(v.y.clone()),
    };
    hom_nonzero(u, &v)
}

impl StripPoint {
    pub fn probe(&self) -> ProbePoint {
        Point {
            x: self.x.clone().into(),
            y: self.y.clone().into(),
        }
    }
}

/// Endpoint types of an interval: closed or open at each end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    CC,
    CO,
    OC,
    OO,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::CC, Kind::CO, Kind::OC, Kind::OO];

    pub fn lo_closed(self) -> bool {
        matches!(self, Kind::CC | Kind::CO)
    }

    pub fn hi_closed(self) -> bool {
        matches!(self, Kind::CC | Kind::OC)
    }

    pub fn from_closedness(lo_closed: bool, hi_closed: bool) -> Kind {
        match (lo_closed, hi_closed) {
            (true, true) => Kind::CC,
            (true, false) => Kind::CO,
            (false, true) => Kind::OC,
            (false, false) => Kind::OO,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::CC => "CC",
            Kind::CO => "CO",
            Kind::OC => "OC",
            Kind::OO => "OO",
        };
        f.write_str(s)
    }
}

/// An indecomposable `F_I[-deg]`: an interval of the real line with endpoint
/// types and a cohomological degree.
///
/// Degrees may be any integer; shifting an object lowers all degrees by one.
/// The derived order `(deg, kind, lo, hi)` is the canonical output order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPoint", into = "RawPoint")]
pub struct CanonicalPoint {
    pub deg: i64,
    pub kind: Kind,
    pub lo: ExtRat,
    pub hi: ExtRat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    kind: Kind,
    lo: ExtRat,
    hi: ExtRat,
    deg: i64,
}

impl TryFrom<RawPoint> for CanonicalPoint {
    type Error = Error;

    fn try_from(r: RawPoint) -> Result<Self> {
        CanonicalPoint::new(r.kind, r.lo, r.hi, r.deg)
    }
}

impl From<CanonicalPoint> for RawPoint {
    fn from(c: CanonicalPoint) -> Self {
        RawPoint {
            kind: c.kind,
            lo: c.lo,
            hi: c.hi,
            deg: c.deg,
        }
    }
}

impl CanonicalPoint {
    /// Validates the endpoint rules: closed ends are finite, and the interval is nonempty.
    pub fn new(kind: Kind, lo: ExtRat, hi: ExtRat, deg: i64) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidInterval(format!("{kind} {lo} {hi}: {m}")));
        if kind.lo_closed() && !lo.is_finite() {
            return bad("closed lower end must be finite");
        }
        if kind.hi_closed() && !hi.is_finite() {
            return bad("closed upper end must be finite");
        }
        match lo.cmp(&hi) {
            Ordering::Greater => return bad("lower end exceeds upper end"),
            Ordering::Equal if kind != Kind::CC => {
                return bad("degenerate interval must be closed")
            }
            _ => {}
        }
        Ok(CanonicalPoint { deg, kind, lo, hi })
    }

    /// Shorthand for tests and fixtures with integer endpoints; `None` stands for an infinite end.
    pub fn ints(kind: Kind, lo: Option<i64>, hi: Option<i64>, deg: i64) -> Self {
        let lo = lo.map_or(ExtRat::NegInf, ExtRat::int);
        let hi = hi.map_or(ExtRat::PosInf, ExtRat::int);
        CanonicalPoint::new(kind, lo, hi, deg).expect("valid interval")
    }

    /// The same interval in another degree.
    pub fn with_deg(&self, deg: i64) -> Self {
        CanonicalPoint {
            deg,
            ..self.clone()
        }
    }

    /// `T^k`: lowers the degree by `k`.
    pub fn t_apply(&self, k: i64) -> Self {
        self.with_deg(self.deg - k)
    }

    /// The geometric point of the strip interior.
    pub fn to_strip(&self) -> StripPoint {
        let a = ExactCoord::arctan(&self.lo);
        let b = ExactCoord::arctan(&self.hi);
        let x = if self.kind.hi_closed() {
            b
        } else {
            b.neg().add_pi(1)
        };
        let y = if self.kind.lo_closed() {
            a
        } else {
            a.neg().add_pi(-1)
        };
        Point { x, y }.t_apply(-self.deg)
    }

    /// The canonical description of an interior strip point.
    pub fn from_strip(u: &StripPoint) -> Result<Self> {
        if !u.in_strip() {
            return Err(Error::OutOfDomain("point is outside the strip".into()));
        }
        if !u.is_interior() {
            return Err(Error::BoundaryPoint);
        }
        let base = u.x.multiple_of_pi();
        for d in (base - 4)..=(base + 4) {
            if let Some(c) = degree_zero(&u.t_apply(d)) {
                return Ok(c.with_deg(d));
            }
        }
        Err(Error::Invariant("no tile contains the point".into()))
    }

    /// Human-readable interval sheaf, e.g. `F_[1,2)[-1]`.
    pub fn sheaf_name(&self) -> String {
        let l = if self.kind.lo_closed() { '[' } else { '(' };
        let r = if self.kind.hi_closed() { ']' } else { ')' };
        let shift = if self.deg == 0 {
            String::new()
        } else {
            format!("[{}]", -self.deg)
        };
        format!("F_{l}{},{}{r}{shift}", self.lo.short(), self.hi.short())
    }
}

impl fmt::Display for CanonicalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.kind,
            self.lo.short(),
            self.hi.short(),
            self.deg
        )
    }
}

/// Recognizes the degree-zero tile and returns the interval of a point in it.
fn degree_zero(u: &StripPoint) -> Option<CanonicalPoint> {
    // Closed upper end: x = arctan β with β finite. Open upper end: π - x = arctan β.
    let upper = [
        (true, u.x.as_arctan().filter(ExtRat::is_finite)),
        (
            false,
            u.x.neg()
                .add_pi(1)
                .as_arctan()
                .filter(|b| *b != ExtRat::NegInf),
        ),
    ];
    let lower = [
        (true, u.y.as_arctan().filter(ExtRat::is_finite)),
        (
            false,
            u.y.neg()
                .add_pi(-1)
                .as_arctan()
                .filter(|a| *a != ExtRat::PosInf),
        ),
    ];
    for (hc, hi) in &upper {
        let Some(hi) = hi else { continue };
        for (lc, lo) in &lower {
            let Some(lo) = lo else { continue };
            let kind = Kind::from_closedness(*lc, *hc);
            let ok = match kind {
                Kind::CC => lo <= hi,
                _ => lo < hi,
            };
            if ok {
                return CanonicalPoint::new(kind, lo.clone(), hi.clone(), 0).ok();
            }
        }
    }
    None
}

/// A closed interval `[lo, hi]` of the extended real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedInterval {
    pub lo: ExtRat,
    pub hi: ExtRat,
}

impl ClosedInterval {
    pub fn contains(&self, other: &ClosedInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// The pair of closed subsets of the extended line attached to a point below the diagonal.
///
/// `rho0` is an interval and `rho1` has at most two components; the set
/// difference `rho0 \ rho1` is the support interval of the indecomposable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPair {
    pub rho0: ClosedInterval,
    pub rho1: Vec<ClosedInterval>,
}

impl ClosedPair {
    /// `rho0 \ rho1` as an interval with endpoint types, or `None` when empty.
    pub fn difference(&self) -> Option<(Kind, ExtRat, ExtRat)> {
        let (mut lo, mut lo_closed) = (self.rho0.lo.clone(), true);
        let (mut hi, mut hi_closed) = (self.rho0.hi.clone(), true);
        for c in &self.rho1 {
            if c.lo <= lo && c.hi >= hi {
                return None;
            }
            if c.lo <= lo && c.hi >= lo {
                lo = c.hi.clone();
                lo_closed = false;
            } else if c.hi >= hi && c.lo <= hi {
                hi = c.lo.clone();
                hi_closed = false;
            } else if c.lo > lo && c.hi < hi {
                return None;
            }
        }
        match lo.cmp(&hi) {
            Ordering::Greater => None,
            Ordering::Equal if !(lo_closed && hi_closed) => None,
            _ => Some((Kind::from_closedness(lo_closed, hi_closed), lo, hi)),
        }
    }

    /// Componentwise inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &ClosedPair) -> bool {
        other.rho0.contains(&self.rho0)
            && self
                .rho1
                .iter()
                .all(|c| other.rho1.iter().any(|d| d.contains(c)))
    }
}

/// `{s ∈ [-π/2, π/2] : s ≥ b}` expressed by its lower end in value coordinates.
fn values_at_least(b: &ExactCoord) -> Option<ExtRat> {
    let lower = ExactCoord::arctan(&ExtRat::NegInf);
    let upper = ExactCoord::arctan(&ExtRat::PosInf);
    if *b <= lower {
        Some(ExtRat::NegInf)
    } else if *b <= upper {
        b.as_arctan()
    } else {
        None
    }
}

/// `{s ∈ [-π/2, π/2] : s ≤ b}` expressed by its upper end in value coordinates.
fn values_at_most(b: &ExactCoord) -> Option<ExtRat> {
    let lower = ExactCoord::arctan(&ExtRat::NegInf);
    let upper = ExactCoord::arctan(&ExtRat::PosInf);
    if *b >= upper {
        Some(ExtRat::PosInf)
    } else if *b >= lower {
        b.as_arctan()
    } else {
        None
    }
}

/// The closed pair `(ρ₀(u), ρ₁(u))` with `ρ₀(u) = q ∩ ↑u` and `ρ₁(u) = q \ int ↓T(u)`,
/// where `q` is the diagonal `{(s, s)}` identified with the extended line.
///
/// Defined on the closed region of strip points lying below some diagonal point.
pub fn rho(u: &StripPoint) -> Result<ClosedPair> {
    let in_domain = u.in_strip()
        && u.y <= u.x
        && u.x >= ExactCoord::arctan(&ExtRat::NegInf)
        && u.y <= ExactCoord::arctan(&ExtRat::PosInf);
    if !in_domain {
        return Err(Error::OutOfDomain("point is not below the diagonal".into()));
    }
    let lo = values_at_least(&u.y).ok_or_else(|| Error::Invariant("empty rho0".into()))?;
    let hi = values_at_most(&u.x).ok_or_else(|| Error::Invariant("empty rho0".into()))?;
    let mut rho1 = Vec::new();
    if let Some(h) = values_at_most(&u.y.neg().add_pi(-1)) {
        rho1.push(ClosedInterval {
            lo: ExtRat::NegInf,
            hi: h,
        });
    }
    if let Some(l) = values_at_least(&u.x.neg().add_pi(1)) {
        rho1.push(ClosedInterval {
            lo: l,
            hi: ExtRat::PosInf,
        });
    }
    if rho1.len() == 2 && rho1[0].hi >= rho1[1].lo {
        rho1 = vec![ClosedInterval {
            lo: ExtRat::NegInf,
            hi: ExtRat::PosInf,
        }];
    }
    Ok(ClosedPair {
        rho0: ClosedInterval { lo, hi },
        rho1,
    })
}

/// `T^k(u)`.
pub fn t_apply(u: &StripPoint, k: i64) -> StripPoint {
    u.t_apply(k)
}

/// The strip order `u ≤ v`.
pub fn leq(u: &StripPoint, v: &StripPoint) -> bool {
    u.leq(v)
}

/// The canonical description of an interior point.
pub fn to_canonical(u: &StripPoint) -> Result<CanonicalPoint> {
    CanonicalPoint::from_strip(u)
}

/// The geometric point of an indecomposable.
pub fn from_canonical(c: &CanonicalPoint) -> StripPoint {
    c.to_strip()
}

/// Convenience: `nπ + arctan(v)` for an integer `v`.
pub fn coord(n: i64, v: i64) -> ExactCoord {
    ExactCoord::new(n, ExtRat::int(v))
}

/// The sign of a rational, used by callers that need to test ordering against zero.
pub fn sign(r: &BigRational) -> Ordering {
    if r.is_positive() {
        Ordering::Greater
    } else if r.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: ExactCoord, y: ExactCoord) -> StripPoint {
        Point::new(x, y)
    }

    #[test]
    fn negation_normal_form() {
        let half_pi = ExactCoord::arctan(&ExtRat::PosInf);
        assert_eq!(half_pi, ExactCoord::new(1, ExtRat::NegInf));
        assert_eq!(half_pi.neg(), ExactCoord::arctan(&ExtRat::NegInf));
        assert_eq!(coord(0, 2).neg(), coord(0, -2));
        assert!(coord(0, 1) < coord(0, 2));
        assert!(coord(0, 1000) < half_pi);
    }

    #[test]
    fn between_is_strict() {
        let a = coord(0, 1);
        let b = ExactCoord::new(1, ExtRat::NegInf);
        let m = a.between(&b);
        assert!(a < m && m < b);
    }

    #[test]
    fn t_formula_fixture() {
        let (a, b, c) = (coord(0, 0), coord(0, 1), coord(0, 2));
        let u = p(b.neg().add_pi(1), a.clone());
        assert_eq!(u.t_apply(1), p(a.neg().add_pi(-1), b.clone()));
        let w = p(c.neg().add_pi(1), b.clone());
        assert_eq!(w.t_apply(-1), p(b.neg().add_pi(1), c.add_pi(-2)));
        assert_eq!(w.t_apply(2), p(w.x.add_pi(-2), w.y.add_pi(2)));
    }

    #[test]
    fn canonical_fixture() {
        let (a, b, c) = (coord(0, 0), coord(0, 1), coord(0, 2));
        let cc = CanonicalPoint::from_strip(&p(c.clone(), a.clone())).unwrap();
        assert_eq!(cc, CanonicalPoint::ints(Kind::CC, Some(0), Some(2), 0));
        let co = CanonicalPoint::from_strip(&p(b.neg().add_pi(1), c.add_pi(-2))).unwrap();
        assert_eq!(co, CanonicalPoint::ints(Kind::CO, Some(1), Some(2), 1));
    }

    #[test]
    fn order_fixture() {
        let (a, b, c) = (coord(0, 0), coord(0, 1), coord(0, 2));
        let u = p(b.neg().add_pi(1), a.clone());
        let v = p(c, a);
        assert!(u.leq(&v));
        assert!(!v.leq(&u));
        assert!(hom_nonzero(&u, &v));
    }

    #[test]
    fn boundary_has_no_indecomposable() {
        let u = p(coord(0, 0), coord(1, 0));
        assert!(u.on_boundary());
        assert_eq!(CanonicalPoint::from_strip(&u), Err(Error::BoundaryPoint));
        assert!(!hom_nonzero(&u, &u));
    }

    #[test]
    fn rho_fixture() {
        let u = p(coord(0, 2), coord(0, 0));
        let r = rho(&u).unwrap();
        assert_eq!(
            r.rho0,
            ClosedInterval {
                lo: ExtRat::int(0),
                hi: ExtRat::int(2)
            }
        );
        assert!(r.rho1.is_empty());
        assert_eq!(
            r.difference(),
            Some((Kind::CC, ExtRat::int(0), ExtRat::int(2)))
        );
    }

    #[test]
    fn json_roundtrip() {
        let c = CanonicalPoint::ints(Kind::CO, Some(1), None, 3);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"kind":"CO","lo":"1/1","hi":"+inf","deg":3}"#);
        let back: CanonicalPoint = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<CanonicalPoint>(
            r#"{"kind":"CC","lo":"1","hi":"+inf","deg":0}"#
        )
        .is_err());
    }
}
