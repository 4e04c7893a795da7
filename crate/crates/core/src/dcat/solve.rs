//! Linear equations whose unknowns are morphisms between sums.
//!
//! An equation is `Σ c · L ∘ X_k[s] ∘ R = B` with fixed morphisms `L`, `R`, `B`,
//! integer coefficients `c` and shifts `s`. Composition is bilinear, so the
//! system is linear in the entries of the unknowns on their allowed slots.

use crate::dcat::{hom_basis, DcatMorphism, DcatObject};
use crate::error::{Error, Result};
use crate::field::{Fp, Mat};

/// One summand `coef · left ∘ X[shift] ∘ right` of an equation.
#[derive(Clone, Debug)]
pub struct Term {
    pub unknown: usize,
    pub coef: i64,
    pub shift: i64,
    pub left: Option<DcatMorphism>,
    pub right: Option<DcatMorphism>,
}

impl Term {
    pub fn new(unknown: usize) -> Self {
        Term {
            unknown,
            coef: 1,
            shift: 0,
            left: None,
            right: None,
        }
    }

    pub fn coef(mut self, c: i64) -> Self {
        self.coef = c;
        self
    }

    pub fn shift(mut self, s: i64) -> Self {
        self.shift = s;
        self
    }

    pub fn left(mut self, l: DcatMorphism) -> Self {
        self.left = Some(l);
        self
    }

    pub fn right(mut self, r: DcatMorphism) -> Self {
        self.right = Some(r);
        self
    }

    fn apply(&self, x: &DcatMorphism) -> Result<DcatMorphism> {
        let mut m = x.shift(self.shift).scale(self.coef);
        if let Some(r) = &self.right {
            m = m.compose(r)?;
        }
        if let Some(l) = &self.left {
            m = l.compose(&m)?;
        }
        Ok(m)
    }
}

/// `Σ terms = rhs`.
#[derive(Clone, Debug)]
pub struct Equation {
    pub terms: Vec<Term>,
    pub rhs: DcatMorphism,
}

/// A solution of the system, or `None` when it is inconsistent.
///
/// `unknowns[k]` is the (source, target) of the k-th unknown.
pub fn solve(
    fp: Fp,
    unknowns: &[(DcatObject, DcatObject)],
    eqs: &[Equation],
) -> Result<Option<Vec<DcatMorphism>>> {
    let slots: Vec<Vec<(usize, usize)>> = unknowns.iter().map(|(a, b)| hom_basis(a, b)).collect();
    let row_offsets: Vec<usize> = eqs
        .iter()
        .scan(0, |acc, e| {
            let o = *acc;
            *acc += e.rhs.entries.rows() * e.rhs.entries.cols();
            Some(o)
        })
        .collect();
    let total_rows: usize = eqs
        .iter()
        .map(|e| e.rhs.entries.rows() * e.rhs.entries.cols())
        .sum();
    let mut columns: Vec<Vec<u32>> = Vec::new();
    for (k, (a, b)) in unknowns.iter().enumerate() {
        for &(j, i) in &slots[k] {
            let mut x = DcatMorphism::zero(fp, a.clone(), b.clone());
            x.entries.set(j, i, 1);
            let mut col = vec![0u32; total_rows];
            for (e, eq) in eqs.iter().enumerate() {
                let cols = eq.rhs.entries.cols();
                for t in eq.terms.iter().filter(|t| t.unknown == k) {
                    let m = t.apply(&x)?;
                    if m.source != eq.rhs.source || m.target != eq.rhs.target {
                        return Err(Error::CompositionError(
                            "term does not match the right-hand side".into(),
                        ));
                    }
                    for (r, c, v) in m.nonzero_entries() {
                        let idx = row_offsets[e] + r * cols + c;
                        col[idx] = fp.add(col[idx], v);
                    }
                }
            }
            columns.push(col);
        }
    }
    let mut rhs = vec![0u32; total_rows];
    for (e, eq) in eqs.iter().enumerate() {
        let cols = eq.rhs.entries.cols();
        for (r, c, v) in eq.rhs.nonzero_entries() {
            rhs[row_offsets[e] + r * cols + c] = v;
        }
    }
    let Some(sol) = Mat::from_cols(total_rows, &columns).solve(fp, &rhs) else {
        return Ok(None);
    };
    let mut out = Vec::new();
    let mut pos = 0;
    for (k, (a, b)) in unknowns.iter().enumerate() {
        let mut x = DcatMorphism::zero(fp, a.clone(), b.clone());
        for &(j, i) in &slots[k] {
            x.entries.set(j, i, sol[pos]);
            pos += 1;
        }
        out.push(x);
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strip::{CanonicalPoint, Kind};

    #[test]
    fn factors_through_a_surjection() {
        let fp = Fp::new(3).unwrap();
        let u = CanonicalPoint::ints(Kind::CO, Some(0), Some(1), 0);
        let v = CanonicalPoint::ints(Kind::CO, Some(0), Some(2), 0);
        let a = DcatObject::new(vec![u.clone()]);
        let b = DcatObject::new(vec![v.clone(), v.clone()]);
        let c = DcatObject::new(vec![v]);
        let left =
            DcatMorphism::from_entries(fp, b.clone(), c.clone(), &[(0, 0, 1), (0, 1, 1)]).unwrap();
        let rhs = DcatMorphism::from_entries(fp, a.clone(), c.clone(), &[(0, 0, 2)]).unwrap();
        let eq = Equation {
            terms: vec![Term::new(0).left(left.clone())],
            rhs: rhs.clone(),
        };
        let x = solve(fp, &[(a, b)], &[eq]).unwrap().unwrap();
        assert_eq!(left.compose(&x[0]).unwrap(), rhs);
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let fp = Fp::two();
        let u = CanonicalPoint::ints(Kind::CO, Some(0), Some(1), 0);
        let v = CanonicalPoint::ints(Kind::CO, Some(0), Some(2), 0);
        let a = DcatObject::new(vec![v.clone()]);
        let c = DcatObject::new(vec![u.clone()]);
        // Nothing maps F_[0,2) onto F_[0,1) through the zero object.
        let rhs = DcatMorphism::zero(fp, a.clone(), c.clone());
        let id = DcatMorphism::identity(fp, a.clone());
        let eq = Equation {
            terms: vec![Term::new(0).right(id)],
            rhs: rhs.clone(),
        };
        let sol = solve(fp, &[(a.clone(), c.clone())], &[eq])
            .unwrap()
            .unwrap();
        assert!(sol[0].is_zero());
        let bad = Equation {
            terms: vec![],
            rhs: DcatMorphism::identity(fp, DcatObject::new(vec![u])),
        };
        assert!(solve(fp, &[], &[bad]).unwrap().is_none());
    }
}
