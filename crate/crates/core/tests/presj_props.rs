//! Randomized properties of presented functors, resolutions and Euler functions.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stripcat::dcat::sample_points;
use stripcat::presj::{
    betti, cokernel, equivariant_resolution, euler_upto, horseshoe, kernel, projective_cover,
    FunctorMap,
};
use stripcat::{DcatMorphism, DcatObject, IntStripFunction, PresentedFunctor};

mod common;
use common::{endpoint_grid, field, random_functor, random_morphism, random_ses, small_ends};

#[test]
fn betti_functions_are_periodic_and_resolutions_exact() {
    let mut rng = StdRng::seed_from_u64(31);
    let pts = endpoint_grid(&small_ends(), 0..=1);
    for _ in 0..30 {
        let fp = field(&mut rng);
        let f = random_functor(&mut rng, fp, &pts);
        let res = equivariant_resolution(&f, 8).unwrap();
        let mut objs: Vec<&DcatObject> = res.terms.iter().collect();
        objs.push(f.q());
        res.verify(&f, &sample_points(objs)).unwrap();
        assert_eq!(res.betti(0), f.betti0());
        for n in 1..=4 {
            assert_eq!(
                res.betti(n + 3),
                res.betti(n).precompose_t(1),
                "β^{} of {:?}",
                n + 3,
                f.delta
            );
        }
        for n in 0..8 {
            assert!(res.betti(n).is_nonnegative());
        }
        // β⁰(F) ≤ β⁰(P) pointwise.
        let free = IntStripFunction::of_object(f.p());
        assert!(free.sub(&f.betti0()).is_nonnegative());
    }
}

#[test]
fn euler_from_resolution_terms_matches_betti_sum() {
    let mut rng = StdRng::seed_from_u64(32);
    let pts = endpoint_grid(&small_ends(), 0..=1);
    for _ in 0..30 {
        let fp = field(&mut rng);
        let f = random_functor(&mut rng, fp, &pts);
        let horizon = 2;
        let chi = euler_upto(&f, horizon).unwrap();
        let res = equivariant_resolution(&f, 13).unwrap();
        let mut sum = IntStripFunction::zero();
        for n in 0..12 {
            sum = sum.add(
                &res.betti(n)
                    .truncate(horizon)
                    .scale(if n % 2 == 0 { 1 } else { -1 }),
            );
        }
        assert_eq!(chi, sum, "{:?}", f.delta);
    }
}

#[test]
fn betti_functions_ignore_cancelling_pairs() {
    let mut rng = StdRng::seed_from_u64(33);
    let pts = endpoint_grid(&small_ends(), 0..=1);
    for _ in 0..20 {
        let fp = field(&mut rng);
        let f = random_functor(&mut rng, fp, &pts);
        let extra = DcatObject::new(vec![pts[rng.gen_range(0..pts.len())].clone()]);
        let padded = PresentedFunctor::new(f.delta.direct_sum(&DcatMorphism::identity(fp, extra)));
        for n in 0..5 {
            assert_eq!(betti(&f, n).unwrap(), betti(&padded, n).unwrap());
        }
        assert_eq!(euler_upto(&f, 3).unwrap(), euler_upto(&padded, 3).unwrap());
    }
}

fn assert_rank_nullity(map: &FunctorMap, ker: &PresentedFunctor, coker: &PresentedFunctor) {
    let objs = [
        map.source.q(),
        map.source.p(),
        map.target.q(),
        map.target.p(),
        ker.q(),
        ker.p(),
        coker.q(),
        coker.p(),
    ];
    for z in sample_points(objs) {
        let r = map.rank_at(&z);
        assert_eq!(ker.dim_at(&z), map.source.dim_at(&z) - r, "kernel at {z:?}");
        assert_eq!(
            coker.dim_at(&z),
            map.target.dim_at(&z) - r,
            "cokernel at {z:?}"
        );
    }
}

#[test]
fn kernels_and_cokernels_satisfy_rank_nullity() {
    let mut rng = StdRng::seed_from_u64(34);
    let pts = endpoint_grid(&small_ends(), 0..=1);
    let mut built = 0;
    while built < 25 {
        let fp = field(&mut rng);
        let f = random_functor(&mut rng, fp, &pts);
        let g = random_functor(&mut rng, fp, &pts);
        let phi = random_morphism(&mut rng, fp, f.p().clone(), g.p().clone());
        let Ok(map) = FunctorMap::new(f, g, phi) else {
            continue;
        };
        let (k, incl) = kernel(&map).unwrap();
        let (c, _) = cokernel(&map).unwrap();
        assert_rank_nullity(&map, &k, &c);
        // The inclusion is injective onto the kernel.
        for z in sample_points([k.q(), k.p(), map.source.p()]) {
            assert_eq!(incl.rank_at(&z), k.dim_at(&z));
        }
        built += 1;
    }
}

#[test]
fn euler_functions_are_additive() {
    let mut rng = StdRng::seed_from_u64(35);
    let pts = endpoint_grid(&small_ends(), 0..=1);
    for _ in 0..30 {
        let fp = field(&mut rng);
        let ses = random_ses(&mut rng, fp, &pts);
        let (f, g, h) = (&ses.left.source, &ses.left.target, &ses.right.target);
        for horizon in 0..=3 {
            let lhs = euler_upto(g, horizon).unwrap();
            let rhs = euler_upto(f, horizon)
                .unwrap()
                .add(&euler_upto(h, horizon).unwrap());
            assert_eq!(lhs, rhs, "horizon {horizon}");
        }
    }
}

#[test]
fn horseshoe_builds_an_equivariant_resolution_of_the_middle() {
    let mut rng = StdRng::seed_from_u64(36);
    let pts = endpoint_grid(&small_ends(), 0..=1);
    for _ in 0..20 {
        let fp = field(&mut rng);
        let ses = random_ses(&mut rng, fp, &pts);
        let hs = horseshoe(&ses, 7).unwrap();
        hs.verify(&ses.left.target).unwrap();
        for k in 0..hs.middle.maps.len().saturating_sub(3) {
            assert_eq!(hs.middle.maps[k + 3], hs.middle.maps[k].shift(-1).neg());
        }
    }
}

#[test]
fn projective_covers_certify_by_top() {
    let mut rng = StdRng::seed_from_u64(37);
    let pts = endpoint_grid(&small_ends(), 0..=1);
    for _ in 0..30 {
        let fp = field(&mut rng);
        let f = random_functor(&mut rng, fp, &pts);
        let cover = projective_cover(&f).unwrap();
        assert_eq!(IntStripFunction::of_object(cover.source.p()), f.betti0());
        for z in f.sample_points() {
            assert_eq!(
                cover.rank_at(&z),
                f.dim_at(&z),
                "cover is not onto at {z:?}"
            );
        }
    }
}
