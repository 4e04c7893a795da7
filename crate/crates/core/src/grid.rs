//! Threshold grids on the strip and recovery of block multiplicities from
//! pointwise dimensions.
//!
//! A finite sum of blocks is constant on the cells cut out by the threshold
//! lines of its corners: the support of the block at `v` is the half-open
//! rectangle `[v.x, π - v.y) × (-π - v.x, v.y]`. Multiplicities are recovered by
//! inclusion-exclusion at every candidate corner, probing the dimension an
//! infinitesimal step towards smaller `x` and larger `y`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::strip::{CanonicalPoint, Coord, ExactCoord, PCoord, Point, ProbePoint, StripPoint};

/// Sorted threshold coordinates on each axis.
#[derive(Clone, Debug, Default)]
pub struct Grid {
    pub xs: Vec<ExactCoord>,
    pub ys: Vec<ExactCoord>,
}

impl Grid {
    /// The lines `x = v.x`, `x = π - v.y`, `y = v.y` and `y = -π - v.x` for every given corner.
    pub fn from_corners<'a>(points: impl IntoIterator<Item = &'a StripPoint>) -> Grid {
        let mut xs = BTreeSet::new();
        let mut ys = BTreeSet::new();
        for v in points {
            xs.insert(v.x.clone());
            xs.insert(v.y.neg().add_pi(1));
            ys.insert(v.y.clone());
            ys.insert(v.x.neg().add_pi(-1));
        }
        Grid {
            xs: xs.into_iter().collect(),
            ys: ys.into_iter().collect(),
        }
    }

    /// Adds the images of all lines under `T^k` for `k` in `range`, so that grids
    /// of shifted objects are covered as well.
    pub fn saturate(&self, range: std::ops::RangeInclusive<i64>) -> Grid {
        let mut pts = Vec::new();
        for x in &self.xs {
            for y in &self.ys {
                pts.push(Point::new(x.clone(), y.clone()));
            }
        }
        let mut xs: BTreeSet<ExactCoord> = BTreeSet::new();
        let mut ys: BTreeSet<ExactCoord> = BTreeSet::new();
        for k in range {
            for p in &pts {
                let q = p.t_apply(k);
                xs.insert(q.x);
                ys.insert(q.y);
            }
        }
        Grid {
            xs: xs.into_iter().collect(),
            ys: ys.into_iter().collect(),
        }
    }

    /// All interior intersections of grid lines.
    pub fn corners(&self) -> Vec<StripPoint> {
        let mut out = Vec::new();
        for x in &self.xs {
            for y in &self.ys {
                let p = Point::new(x.clone(), y.clone());
                if p.is_interior() {
                    out.push(p);
                }
            }
        }
        out
    }

    /// One coordinate on every line, strictly between consecutive lines, and beyond both ends.
    fn refined(axis: &[ExactCoord]) -> Vec<ExactCoord> {
        let mut out = Vec::new();
        if let Some(first) = axis.first() {
            out.push(first.add_pi(-1).between(first));
        }
        for (i, c) in axis.iter().enumerate() {
            out.push(c.clone());
            if let Some(next) = axis.get(i + 1) {
                out.push(c.between(next));
            }
        }
        if let Some(last) = axis.last() {
            out.push(last.between(&last.add_pi(1)));
        }
        out
    }

    /// Refined coordinates on each axis, for sampling every cell, edge and vertex of the grid.
    pub fn refined_axes(&self) -> (Vec<ExactCoord>, Vec<ExactCoord>) {
        (Grid::refined(&self.xs), Grid::refined(&self.ys))
    }

    /// Interior sample points: every grid vertex, every open edge and every open cell.
    pub fn cell_samples(&self) -> Vec<StripPoint> {
        let (xs, ys) = self.refined_axes();
        let mut out = Vec::new();
        for x in &xs {
            for y in &ys {
                let p = Point::new(x.clone(), y.clone());
                if p.is_interior() {
                    out.push(p);
                }
            }
        }
        out
    }

    fn resolve(axis: &[ExactCoord], p: &PCoord) -> ExactCoord {
        match p.eps.signum() {
            0 => p.c.clone(),
            -1 => {
                let prev = axis
                    .iter()
                    .rev()
                    .find(|c| **c < p.c)
                    .cloned()
                    .unwrap_or_else(|| p.c.add_pi(-1));
                prev.between(&p.c)
            }
            _ => {
                let next = axis
                    .iter()
                    .find(|c| **c > p.c)
                    .cloned()
                    .unwrap_or_else(|| p.c.add_pi(1));
                p.c.between(&next)
            }
        }
    }

    /// An exact point in the same grid cell as an infinitesimal probe.
    pub fn resolve_probe(&self, p: &ProbePoint) -> StripPoint {
        Point::new(Grid::resolve(&self.xs, &p.x), Grid::resolve(&self.ys, &p.y))
    }
}

/// The probe displaced from `v` by `dx` infinitesimal steps in `x` and `dy` in `y`.
pub fn probe(v: &StripPoint, dx: i8, dy: i8) -> ProbePoint {
    Point::new(
        PCoord {
            c: v.x.clone(),
            eps: dx,
        },
        PCoord {
            c: v.y.clone(),
            eps: dy,
        },
    )
}

/// Recovers block multiplicities from a dimension function.
///
/// The inclusion-exclusion count at a corner `v` sees the closed corner of the
/// block at `v` and the open corner of the block at `T(v)`, so the multiplicity
/// at `v` is the count at `v` minus the multiplicity at `T(v)`.
///
/// `candidates` must contain the corner of every block of `dim`; a negative
/// multiplicity means `dim` is not a finite sum of such blocks, and is reported.
pub fn invert_blocks(
    candidates: &[StripPoint],
    mut dim: impl FnMut(&ProbePoint) -> usize,
) -> Result<BTreeMap<CanonicalPoint, usize>> {
    let interior: BTreeSet<StripPoint> = candidates
        .iter()
        .filter(|v| v.is_interior())
        .cloned()
        .collect();
    let mut corner_count = BTreeMap::new();
    for v in &interior {
        let g = dim(&probe(v, 0, 0)) as i64
            - dim(&probe(v, -1, 0)) as i64
            - dim(&probe(v, 0, 1)) as i64
            + dim(&probe(v, -1, 1)) as i64;
        corner_count.insert(v.clone(), g);
    }
    // Resolve from the top: T moves every point strictly upwards.
    let mut mult: BTreeMap<StripPoint, i64> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for v in &interior {
        let mut chain = vec![v.clone()];
        while let Some(up) = Some(chain.last().unwrap().t_once()).filter(|u| interior.contains(u)) {
            if mult.contains_key(&up) {
                break;
            }
            chain.push(up);
        }
        for p in chain.iter().rev() {
            if mult.contains_key(p) {
                continue;
            }
            let above = mult.get(&p.t_once()).copied().unwrap_or(0);
            mult.insert(p.clone(), corner_count[p] - above);
        }
        let m = mult[v];
        if m < 0 {
            return Err(Error::Invariant(format!(
                "negative block count {m} at {}",
                CanonicalPoint::from_strip(v)
                    .map(|c| c.to_string())
                    .unwrap_or_default()
            )));
        }
        if m > 0 {
            out.insert(CanonicalPoint::from_strip(v)?, m as usize);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strip::{in_block_support, Kind};

    #[test]
    fn inversion_recovers_a_single_block() {
        let v = CanonicalPoint::ints(Kind::CO, Some(0), Some(1), 0).to_strip();
        let grid = Grid::from_corners([&v]);
        let d = |p: &ProbePoint| usize::from(in_block_support(p, &v));
        let blocks = invert_blocks(&grid.corners(), d).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks.keys().next().unwrap().to_strip(), v);
    }

    #[test]
    fn inversion_recovers_overlapping_blocks() {
        let pts = [
            CanonicalPoint::ints(Kind::CC, Some(0), Some(2), 0),
            CanonicalPoint::ints(Kind::OO, Some(0), Some(1), 0),
            CanonicalPoint::ints(Kind::CO, Some(1), Some(2), 1),
            CanonicalPoint::ints(Kind::CO, Some(1), Some(2), 2),
            CanonicalPoint::ints(Kind::CC, Some(1), Some(1), -1),
        ];
        let strip: Vec<StripPoint> = pts.iter().map(CanonicalPoint::to_strip).collect();
        let grid = Grid::from_corners(&strip).saturate(-1..=1);
        let d = |p: &ProbePoint| strip.iter().filter(|v| in_block_support(p, v)).count();
        let blocks = invert_blocks(&grid.corners(), d).unwrap();
        let expected: BTreeMap<CanonicalPoint, usize> =
            pts.iter().map(|c| (c.clone(), 1)).collect();
        assert_eq!(blocks, expected);
    }
}
