//! Random instances shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::Rng;
use stripcat::dcat::slot_allowed;
use stripcat::presj::{cokernel, kernel, FunctorMap, ShortExact};
use stripcat::{
    CanonicalPoint, DcatMorphism, DcatObject, ExtRat, Fp, Kind, PresentedFunctor,
    SimplicialFunction,
};

/// Every canonical point with endpoints in `ends` and degree in `degs`.
pub fn endpoint_grid(ends: &[ExtRat], degs: std::ops::RangeInclusive<i64>) -> Vec<CanonicalPoint> {
    let mut out = Vec::new();
    for d in degs {
        for lo in ends {
            for hi in ends {
                for k in Kind::ALL {
                    if let Ok(p) = CanonicalPoint::new(k, lo.clone(), hi.clone(), d) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// `±∞` and the integers `0..=3`.
pub fn small_ends() -> Vec<ExtRat> {
    let mut e = vec![ExtRat::NegInf, ExtRat::PosInf];
    e.extend((0..=3).map(ExtRat::int));
    e
}

pub fn random_object(rng: &mut StdRng, pts: &[CanonicalPoint], lo: usize, hi: usize) -> DcatObject {
    let n = rng.gen_range(lo..=hi);
    DcatObject::new(
        (0..n)
            .map(|_| pts[rng.gen_range(0..pts.len())].clone())
            .collect(),
    )
}

/// Uniform entries in every allowed slot.
pub fn random_morphism(rng: &mut StdRng, fp: Fp, a: DcatObject, b: DcatObject) -> DcatMorphism {
    let mut m = DcatMorphism::zero(fp, a.clone(), b.clone());
    for j in 0..b.len() {
        for i in 0..a.len() {
            if slot_allowed(&a.summands[i], &b.summands[j]) {
                m.entries.set(j, i, rng.gen_range(0..fp.char()));
            }
        }
    }
    m
}

pub fn field(rng: &mut StdRng) -> Fp {
    Fp::new([2, 3, 5][rng.gen_range(0..3)]).unwrap()
}

/// A presentation whose relations share a summand with the generators often
/// enough to produce cancellations.
pub fn random_functor(rng: &mut StdRng, fp: Fp, pts: &[CanonicalPoint]) -> PresentedFunctor {
    let p = random_object(rng, pts, 1, 3);
    let mut q = random_object(rng, pts, 0, 2);
    if rng.gen_bool(0.4) {
        q = q.sum(&DcatObject::new(vec![p.summands[0].clone()]));
    }
    PresentedFunctor::new(random_morphism(rng, fp, q, p))
}

/// `0 → im f → G → coker f → 0` for a map `f` out of a free functor.
pub fn random_ses(rng: &mut StdRng, fp: Fp, pts: &[CanonicalPoint]) -> ShortExact {
    let g = random_functor(rng, fp, pts);
    let hit = rng.gen_range(0..g.p().len());
    let x = DcatObject::new(vec![g.p().summands[hit].clone()]).sum(&random_object(rng, pts, 0, 1));
    let mut phi = random_morphism(rng, fp, x.clone(), g.p().clone());
    phi.entries.set(hit, 0, 1);
    let f = FunctorMap::new(PresentedFunctor::free(fp, x), g, phi).unwrap();
    let (_, proj) = cokernel(&f).unwrap();
    let (_, incl) = kernel(&proj).unwrap();
    ShortExact::new(incl, proj).unwrap()
}

/// A graph on at most twelve vertices with rational values.
pub fn random_graph(rng: &mut StdRng, fp: Fp) -> SimplicialFunction {
    let n = rng.gen_range(1..=12);
    let values: BTreeMap<String, ExtRat> = (0..n)
        .map(|i| {
            (
                format!("v{i}"),
                ExtRat::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3)),
            )
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.25) {
                edges.push(vec![format!("v{a}"), format!("v{b}")]);
            }
        }
    }
    SimplicialFunction::new(values, &edges, fp).unwrap()
}
