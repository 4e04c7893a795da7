//! Natural transformations between sums of block functors, computed by brute
//! force on a finite grid of sample points.
//!
//! `h(A)` is the direct sum of the indicator functors of the block supports of
//! the summands of `A`, with identity structure maps inside each support. Both
//! functors are constant on the cells of the grid through all block corners, so
//! a natural transformation is a family of matrices, one per sample, commuting
//! with the structure maps between neighbouring samples.

use crate::dcat::DcatObject;
use crate::field::{Fp, Mat};
use crate::grid::Grid;
use crate::strip::{Point, StripPoint};

/// `dim Nat(h(A), h(B))`.
pub fn nat_dim(fp: Fp, a: &DcatObject, b: &DcatObject) -> usize {
    let mut corners = Vec::new();
    for c in a.summands.iter().chain(&b.summands) {
        let p = c.to_strip();
        corners.push(p.t_once());
        corners.push(p.t_inv_once());
        corners.push(p);
    }
    let grid = Grid::from_corners(&corners);
    let (xs, ys) = grid.refined_axes();
    // Sample lattice, indexed by axis positions.
    let mut index = vec![vec![None; ys.len()]; xs.len()];
    let mut samples: Vec<(StripPoint, Vec<usize>, Vec<usize>)> = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            let z = Point::new(x.clone(), y.clone());
            if z.is_interior() {
                index[i][j] = Some(samples.len());
                let (sa, sb) = (a.support_at(&z), b.support_at(&z));
                samples.push((z, sa, sb));
            }
        }
    }
    // Unknowns: the entries of each component matrix h(B)(z) × h(A)(z).
    let mut offset = Vec::with_capacity(samples.len());
    let mut total = 0;
    for (_, sa, sb) in &samples {
        offset.push(total);
        total += sa.len() * sb.len();
    }
    let mut rows: Vec<Vec<(usize, u32)>> = Vec::new();
    // A step to a larger sample: smaller x or larger y. The structure map goes
    // from the larger sample `hi` to the smaller one `lo`.
    let mut relate = |lo: usize, hi: usize| {
        let (_, la, lb) = &samples[lo];
        let (_, ha, hb) = &samples[hi];
        // η_lo ∘ A(hi → lo) = B(hi → lo) ∘ η_hi, entry (r, c) for r ∈ lb, c ∈ ha.
        for (r, &br) in lb.iter().enumerate() {
            for (c, &ac) in ha.iter().enumerate() {
                let mut eq = Vec::new();
                if let Some(k) = la.iter().position(|&x| x == ac) {
                    eq.push((offset[lo] + r * la.len() + k, 1));
                }
                if let Some(k) = hb.iter().position(|&x| x == br) {
                    eq.push((offset[hi] + k * ha.len() + c, fp.neg(1)));
                }
                if !eq.is_empty() {
                    rows.push(eq);
                }
            }
        }
    };
    for i in 0..xs.len() {
        for j in 0..ys.len() {
            let Some(here) = index[i][j] else { continue };
            if i > 0 {
                if let Some(left) = index[i - 1][j] {
                    relate(here, left);
                }
            }
            if j + 1 < ys.len() {
                if let Some(up) = index[i][j + 1] {
                    relate(here, up);
                }
            }
        }
    }
    let mut m = Mat::zeros(rows.len(), total);
    for (r, eq) in rows.iter().enumerate() {
        for &(c, v) in eq {
            m.set(r, c, fp.add(m.get(r, c), v));
        }
    }
    total - m.rank(fp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcat::hom_dim;
    use crate::strip::{CanonicalPoint, Kind};

    #[test]
    fn nat_matches_hom_on_small_pairs() {
        let fp = Fp::two();
        let pts = [
            CanonicalPoint::ints(Kind::CO, Some(0), Some(1), 0),
            CanonicalPoint::ints(Kind::CO, Some(0), Some(2), 0),
            CanonicalPoint::ints(Kind::CC, Some(0), Some(2), 0),
            CanonicalPoint::ints(Kind::OO, Some(0), Some(2), 1),
        ];
        for u in &pts {
            for v in &pts {
                let a = DcatObject::new(vec![u.clone()]);
                let b = DcatObject::new(vec![v.clone()]);
                assert_eq!(nat_dim(fp, &a, &b), hom_dim(&a, &b), "{u} -> {v}");
            }
        }
    }
}
