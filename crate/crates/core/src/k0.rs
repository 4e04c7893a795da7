//! Grothendieck-group arithmetic on finitely supported Euler functions.

use std::fmt;

use crate::epd::Diagram;
use crate::error::{Error, Result};
use crate::presj::{euler, IntStripFunction, PresentedFunctor};

/// A class in the group of admissible Euler functions, represented by a
/// finitely supported integer function on the interior of the strip.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct K0Element {
    pub function: IntStripFunction,
}

impl K0Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(function: IntStripFunction) -> Result<Self> {
        if !is_admissible(&function) {
            return Err(Error::InfiniteSupport("function is not admissible".into()));
        }
        Ok(K0Element { function })
    }

    pub fn add(&self, other: &Self) -> Self {
        K0Element {
            function: self.function.add(&other.function),
        }
    }

    pub fn neg(&self) -> Self {
        K0Element {
            function: self.function.neg(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.function.is_zero()
    }

    /// The class `χ(F)`; fails when `χ(F)` has infinite support.
    pub fn class_of(f: &PresentedFunctor) -> Result<Self> {
        Ok(K0Element {
            function: euler(f)?,
        })
    }

    /// The class of `h` of a diagram: its multiplicity function.
    pub fn class_of_diagram(d: &Diagram) -> Self {
        let mut f = IntStripFunction::zero();
        for (p, m) in d.iter() {
            f.add_at(p, m as i64);
        }
        K0Element { function: f }
    }

    pub fn to_json(&self) -> String {
        self.function.to_json()
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        Ok(K0Element {
            function: IntStripFunction::from_json(s)?,
        })
    }
}

impl fmt::Display for K0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.function)
    }
}

/// Whether `|μ|` is an admissible Betti function.
///
/// A finitely supported function has support bounded above by the join of its
/// support, and meets every region `↑u ∩ int ↓T(u)` in finitely many points, so
/// the check reduces to every support point lying in the interior of the strip.
pub fn is_admissible(mu: &IntStripFunction) -> bool {
    mu.support().all(|p| p.to_strip().is_interior())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcat::{DcatMorphism, DcatObject};
    use crate::field::Fp;
    use crate::strip::{CanonicalPoint, Kind};

    fn pt(kind: Kind, lo: i64, hi: i64, deg: i64) -> CanonicalPoint {
        CanonicalPoint::ints(kind, Some(lo), Some(hi), deg)
    }

    fn diagram(points: &[CanonicalPoint]) -> Diagram {
        Diagram::from_points(Fp::two(), points.iter().cloned().map(|p| (p, 1)))
    }

    #[test]
    fn group_axioms_on_samples() {
        let a =
            K0Element::class_of_diagram(&diagram(&[pt(Kind::CC, 0, 2, 0), pt(Kind::CO, 0, 1, 0)]));
        let b = K0Element::class_of_diagram(&diagram(&[pt(Kind::CO, 1, 2, 1)]));
        assert!(a.add(&a.neg()).is_zero());
        assert_eq!(K0Element::zero().add(&b), b);
        assert_eq!(a.add(&b), b.add(&a));
        assert_eq!(a.sub(&b).add(&b), a);
    }

    #[test]
    fn hood_difference() {
        let f =
            K0Element::class_of_diagram(&diagram(&[pt(Kind::CC, 0, 2, 0), pt(Kind::CO, 0, 1, 0)]));
        let g =
            K0Element::class_of_diagram(&diagram(&[pt(Kind::CC, 0, 2, 0), pt(Kind::CO, 1, 2, 1)]));
        let mut expected = IntStripFunction::zero();
        expected.add_at(&pt(Kind::CO, 0, 1, 0), 1);
        expected.add_at(&pt(Kind::CO, 1, 2, 1), -1);
        assert_eq!(f.sub(&g).function, expected);
        assert!(is_admissible(&expected));
    }

    #[test]
    fn presented_classes() {
        let fp = Fp::two();
        let p = DcatObject::new(vec![pt(Kind::CC, 0, 2, 0), pt(Kind::CO, 1, 2, 1)]);
        let free = PresentedFunctor::free(fp, p.clone());
        assert_eq!(
            K0Element::class_of(&free).unwrap().function,
            IntStripFunction::of_object(&p)
        );
        let trivial = PresentedFunctor::new(DcatMorphism::identity(fp, p));
        assert!(K0Element::class_of(&trivial).unwrap().is_zero());
        assert!(is_admissible(&IntStripFunction::zero()));
    }
}
