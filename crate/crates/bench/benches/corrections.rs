use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use gjfr_core::corrections::{build_gjfr, build_sd, iota_of_sd, stability_residual};
use gjfr_core::jacobi::gauss_legendre;
use gjfr_core::{FrOperators, PointRule, SchemeParams};

fn corrections(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    for p in [2usize, 4, 6] {
        let params = SchemeParams::new(p, 0.3, -0.2, iota_of_sd(p, 0.3, -0.2)).unwrap();
        group.bench_with_input(BenchmarkId::new("gjfr", p), &params, |b, params| {
            b.iter(|| build_gjfr(black_box(params)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sd", p), &p, |b, &p| {
            b.iter(|| build_sd(black_box(p), 0.3, -0.2).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("operators", p), &params, |b, params| {
            b.iter(|| FrOperators::build(black_box(params), PointRule::GaussLegendre).unwrap())
        });
    }
    group.finish();

    let pair = build_gjfr(&SchemeParams::new(4, 0.5, 0.5, 1e-4).unwrap()).unwrap();
    c.bench_function("stability_residual/p4", |b| b.iter(|| stability_residual(black_box(&pair))));
    c.bench_function("gauss_legendre/16", |b| b.iter(|| gauss_legendre(black_box(16)).unwrap()));
}

criterion_group!(benches, corrections);
criterion_main!(benches);
