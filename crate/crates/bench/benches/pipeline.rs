use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use stripcat::dcat::cone;
use stripcat::epd::{diagram, diagram_via_sampling};
use stripcat::presj::equivariant_resolution;
use stripcat_bench::{presented_functor, restriction_morphism, triangulated_band, zigzag_graph};

fn extended_persistence(c: &mut Criterion) {
    let mut group = c.benchmark_group("diagram");
    for n in [10, 40, 160] {
        let f = zigzag_graph(n);
        group.bench_with_input(BenchmarkId::new("graph", n), &f, |b, f| {
            b.iter(|| diagram(black_box(f)))
        });
    }
    for n in [5, 20, 80] {
        let f = triangulated_band(n);
        group.bench_with_input(BenchmarkId::new("band", n), &f, |b, f| {
            b.iter(|| diagram(black_box(f)))
        });
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("diagram_via_sampling");
    group.sample_size(10);
    for n in [6, 12] {
        let f = zigzag_graph(n);
        group.bench_with_input(BenchmarkId::new("graph", n), &f, |b, f| {
            b.iter(|| diagram_via_sampling(black_box(f)))
        });
    }
    group.finish();
}

fn cones(c: &mut Criterion) {
    let mut group = c.benchmark_group("cone");
    for n in [2, 8, 32] {
        let phi = restriction_morphism(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &phi, |b, phi| {
            b.iter(|| cone(black_box(phi)))
        });
    }
    group.finish();
}

fn resolutions(c: &mut Criterion) {
    let mut group = c.benchmark_group("resolution");
    for n in [1, 4, 16] {
        let f = presented_functor(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| equivariant_resolution(black_box(f), 6))
        });
    }
    group.finish();
}

criterion_group!(benches, extended_persistence, sampling, cones, resolutions);
criterion_main!(benches);
