//! Cross-checks between the block model of sums of interval sheaves and the
//! strict model by complexes of projective zigzag representations.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stripcat::dcat::rep::{HomSpace, RepContext};
use stripcat::dcat::{cone, hom_dim, slot_allowed};
use stripcat::{CanonicalPoint, DcatMorphism, DcatObject, Fp};

mod common;
use common::{endpoint_grid, random_morphism, random_object, small_ends};

#[test]
fn hom_dimensions_agree_on_endpoint_grid() {
    let fp = Fp::two();
    let pts = endpoint_grid(&small_ends(), 0..=2);
    let mut ctx = RepContext::new(fp, &pts);
    for u in &pts {
        for v in &pts {
            let block = hom_dim(
                &DcatObject::new(vec![u.clone()]),
                &DcatObject::new(vec![v.clone()]),
            );
            assert_eq!(ctx.hom_k_dim(u, v).unwrap(), block, "{u} -> {v}");
        }
    }
}

fn coherence(p: u32, seed: u64) {
    let fp = Fp::new(p).unwrap();
    let pts = endpoint_grid(&small_ends(), 0..=2);
    let mut ctx = RepContext::new(fp, &pts);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < 1500 {
        let a = &pts[rng.gen_range(0..pts.len())];
        let outs: Vec<&CanonicalPoint> = pts.iter().filter(|b| slot_allowed(a, b)).collect();
        if outs.is_empty() {
            continue;
        }
        let b = outs[rng.gen_range(0..outs.len())];
        let outs2: Vec<&CanonicalPoint> = pts.iter().filter(|c| slot_allowed(b, c)).collect();
        let c = outs2[rng.gen_range(0..outs2.len())];
        let composite = ctx
            .basis_map(b, c)
            .unwrap()
            .mul(fp, &ctx.basis_map(a, b).unwrap());
        let xa = ctx.to_rep_point(a).unwrap();
        let xc = ctx.to_rep_point(c).unwrap();
        let hs = HomSpace::new(fp, &xa, &xc);
        let diff = if slot_allowed(a, c) {
            composite.sub(fp, &ctx.basis_map(a, c).unwrap())
        } else {
            composite
        };
        assert!(hs.is_null(&diff).unwrap(), "{a} -> {b} -> {c} at p = {p}");
        checked += 1;
    }
}

#[test]
fn basis_maps_compose_coherently_mod_3() {
    coherence(3, 11);
}

#[test]
fn basis_maps_compose_coherently_mod_5() {
    coherence(5, 12);
}

#[test]
fn chain_cone_matches_block_cone() {
    let mut rng = StdRng::seed_from_u64(5);
    let pts = endpoint_grid(&small_ends(), 0..=1);
    for round in 0..200 {
        let fp = Fp::new([2, 3, 5][round % 3]).unwrap();
        let a = random_object(&mut rng, &pts, 1, 3);
        let b = random_object(&mut rng, &pts, 1, 3);
        let phi = random_morphism(&mut rng, fp, a.clone(), b.clone());
        let mut ctx = RepContext::new(fp, a.summands.iter().chain(&b.summands));
        let strict = ctx.cone(&phi).unwrap();
        let block = cone(&phi).unwrap();
        assert_eq!(strict.sorted(), block.sorted(), "cone of {phi:?}");
    }
}

#[test]
fn strictification_respects_composition() {
    let mut rng = StdRng::seed_from_u64(9);
    let pts = endpoint_grid(&small_ends(), 0..=1);
    for round in 0..100 {
        let fp = Fp::new([3, 5][round % 2]).unwrap();
        let a = random_object(&mut rng, &pts, 1, 2);
        let b = random_object(&mut rng, &pts, 1, 2);
        let c = random_object(&mut rng, &pts, 1, 2);
        let f = random_morphism(&mut rng, fp, a.clone(), b.clone());
        let g = random_morphism(&mut rng, fp, b.clone(), c.clone());
        let gf = g.compose(&f).unwrap();
        let mut ctx = RepContext::new(fp, a.summands.iter().chain(&b.summands).chain(&c.summands));
        let strict = ctx
            .strictify(&g)
            .unwrap()
            .mul(fp, &ctx.strictify(&f).unwrap());
        let diff = strict.sub(fp, &ctx.strictify(&gf).unwrap());
        let xa = ctx.to_rep(&a).unwrap();
        let xc = ctx.to_rep(&c).unwrap();
        assert!(HomSpace::new(fp, &xa, &xc).is_null(&diff).unwrap());
    }
}

fn assert_exact_triangle(phi: &DcatMorphism, tri: &stripcat::dcat::rep::Triangle) {
    assert!(
        tri.to_cone.compose(phi).unwrap().is_zero(),
        "e∘φ ≠ 0 for {phi:?}"
    );
    assert!(
        tri.from_cone.compose(&tri.to_cone).unwrap().is_zero(),
        "g∘e ≠ 0 for {phi:?}"
    );
    assert!(
        phi.shift(1).compose(&tri.from_cone).unwrap().is_zero(),
        "φ[1]∘g ≠ 0 for {phi:?}"
    );
    let shifted = phi.source.shift(1);
    let mut corners = Vec::new();
    for p in phi
        .source
        .summands
        .iter()
        .chain(&phi.target.summands)
        .chain(&tri.cone.summands)
        .chain(&shifted.summands)
    {
        corners.push(p.to_strip());
    }
    let grid = stripcat::grid::Grid::from_corners(&corners).saturate(-1..=1);
    for z in grid.cell_samples() {
        let (b, c, a1) = (
            phi.target.h_eval(&z),
            tri.cone.h_eval(&z),
            shifted.h_eval(&z),
        );
        let r_phi = phi.rank_at(&z);
        let r_e = tri.to_cone.rank_at(&z);
        let r_g = tri.from_cone.rank_at(&z);
        let r_phi1 = phi.shift(1).rank_at(&z);
        assert_eq!(b - r_e, r_phi, "exactness at B, {z:?}, {phi:?}");
        assert_eq!(c - r_g, r_e, "exactness at the cone, {z:?}, {phi:?}");
        assert_eq!(a1 - r_phi1, r_g, "exactness at A[1], {z:?}, {phi:?}");
    }
}

#[test]
fn triangles_read_back_exactly() {
    let mut rng = StdRng::seed_from_u64(21);
    let pts = endpoint_grid(&small_ends(), 0..=1);
    for round in 0..150 {
        let fp = Fp::new([2, 3, 5][round % 3]).unwrap();
        let a = random_object(&mut rng, &pts, 1, 3);
        let b = random_object(&mut rng, &pts, 1, 3);
        let phi = random_morphism(&mut rng, fp, a, b);
        let tri = stripcat::dcat::rep::triangle(&phi).unwrap();
        assert_exact_triangle(&phi, &tri);
    }
}
