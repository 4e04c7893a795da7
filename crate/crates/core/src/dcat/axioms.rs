//! Exactness of `h(A)` along the long sequences attached to rectangles.
//!
//! Take an axis-aligned rectangle whose top-right corner `z` lies on the upper
//! boundary, with remaining corners `u ⪯ v ⪯ w`. The orbit chain
//! `… ⪯ T⁻¹w ⪯ u ⪯ v ⪯ w ⪯ Tu ⪯ …` carries a sequence of structure maps of
//! `h(A)`, and a cohomological functor makes it exact. For a sum of blocks each
//! structure map is a coordinate projection, so its rank counts the summands
//! whose support contains both endpoints.

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::strip::{Coord, Point, StripPoint};

use super::{in_support, DcatObject};

/// Summary of a successful rectangle check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RectangleReport {
    pub rectangles: usize,
    pub positions: usize,
}

/// Checks exactness of `h(a)` along the chain of every rectangle whose corners
/// lie on the refined grid of `a`.
pub fn check_rectangles(a: &DcatObject) -> Result<RectangleReport> {
    let corners: Vec<StripPoint> = a.summands.iter().map(|p| p.to_strip()).collect();
    let lo = a.summands.iter().map(|p| p.deg).min().unwrap_or(0);
    let hi = a.summands.iter().map(|p| p.deg).max().unwrap_or(0);
    check_rectangles_with(&corners, 3 + (hi - lo), |z| {
        a.summands.iter().map(|s| in_support(z, s)).collect()
    })
}

/// The same check for a direct sum of indicator functors, given by the
/// membership of a point in each summand's support.
///
/// Rectangles range over the refined grid of `corners`, and each chain runs
/// over `T^k` for `|k| ≤ reach`.
pub fn check_rectangles_with(
    corners: &[StripPoint],
    reach: i64,
    supports: impl Fn(&StripPoint) -> Vec<bool>,
) -> Result<RectangleReport> {
    let mut report = RectangleReport::default();
    if corners.is_empty() {
        return Ok(report);
    }
    let (xs, ys) = Grid::from_corners(corners).refined_axes();
    for xb in &xs {
        let yb = xb.neg().add_pi(1);
        for xa in xs.iter().filter(|x| *x < xb) {
            for ya in ys.iter().filter(|y| **y < yb) {
                let u = Point::new(xb.clone(), ya.clone());
                let v = Point::new(xa.clone(), ya.clone());
                let w = Point::new(xa.clone(), yb.clone());
                if !v.is_interior() {
                    continue;
                }
                report.positions += check_chain(&supports, [&u, &v, &w], reach)?;
                report.rectangles += 1;
            }
        }
    }
    Ok(report)
}

fn check_chain(
    supports: &impl Fn(&StripPoint) -> Vec<bool>,
    rect: [&StripPoint; 3],
    reach: i64,
) -> Result<usize> {
    let chain: Vec<StripPoint> = (-reach..=reach)
        .flat_map(|k| rect.iter().map(move |p| p.t_apply(k)))
        .collect();
    let members: Vec<Vec<bool>> = chain.iter().map(supports).collect();
    let joint = |i: usize, j: usize| {
        members[i]
            .iter()
            .zip(&members[j])
            .filter(|(p, q)| **p && **q)
            .count()
    };
    let mut checked = 0;
    for b in 1..chain.len() - 1 {
        // Maps run from the larger point to the smaller one.
        let (smaller, larger) = (b - 1, b + 1);
        let dim = members[b].iter().filter(|s| **s).count();
        let r_in = joint(larger, b);
        let r_out = joint(b, smaller);
        let through = (0..members[b].len())
            .filter(|&i| members[smaller][i] && members[b][i] && members[larger][i])
            .count();
        if dim == 0 && r_in == 0 && r_out == 0 {
            continue;
        }
        if through != 0 || r_in + r_out != dim {
            return Err(Error::NotExact(format!(
                "sequence through {:?} is not exact (dim {dim}, incoming rank {r_in}, outgoing rank {r_out})",
                chain[b]
            )));
        }
        checked += 1;
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strip::{CanonicalPoint, Kind};

    #[test]
    fn single_blocks_pass() {
        for k in Kind::ALL {
            let p = CanonicalPoint::ints(k, Some(0), Some(1), 0);
            let report = check_rectangles(&DcatObject::new(vec![p])).unwrap();
            assert!(report.positions > 0);
        }
    }

    #[test]
    fn indicator_of_a_square_is_rejected() {
        let p = CanonicalPoint::ints(Kind::CC, Some(0), Some(2), 0).to_strip();
        let q = CanonicalPoint::ints(Kind::CC, Some(1), Some(3), 0).to_strip();
        let (x0, x1) = (q.x.clone().min(p.x.clone()), q.x.clone().max(p.x.clone()));
        let (y0, y1) = (p.y.clone().min(q.y.clone()), p.y.clone().max(q.y.clone()));
        let square = |z: &StripPoint| {
            vec![z.x >= x0 && z.x <= x1 && z.y >= y0 && z.y <= y1 && z.is_interior()]
        };
        let err = check_rectangles_with(&[p.clone(), q.clone()], 2, square).unwrap_err();
        assert!(matches!(err, Error::NotExact(_)));
    }

    #[test]
    fn empty_object_passes_trivially() {
        assert_eq!(
            check_rectangles(&DcatObject::zero()).unwrap(),
            RectangleReport::default()
        );
    }
}
