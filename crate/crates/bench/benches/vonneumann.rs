use criterion::{criterion_group, criterion_main, Criterion};
use std::f64::consts::PI;
use std::hint::black_box;

use gjfr_core::corrections::iota_of_sd;
use gjfr_core::vonneumann::{cfl_limit, convergence_rate, minus_q_eigenvalues};
use gjfr_core::{FrOperators, PointRule, RkScheme, SchemeParams};

fn vonneumann(c: &mut Criterion) {
    let ops = FrOperators::build(
        &SchemeParams::new(4, 0.02, 0.02, iota_of_sd(4, 0.02, 0.02)).unwrap(),
        PointRule::GaussLegendre,
    )
    .unwrap();
    c.bench_function("eigenvalues/p4", |b| b.iter(|| minus_q_eigenvalues(&ops, black_box(1.3), 1.0, 1.0).unwrap()));
    c.bench_function("convergence_rate/p4", |b| {
        b.iter(|| convergence_rate(&ops, 0.0, black_box(PI / 2.0), 1000.0, 0.5, 0.25).unwrap())
    });
    let mut group = c.benchmark_group("cfl_limit");
    group.sample_size(10);
    group.bench_function("p4/rk44", |b| b.iter(|| cfl_limit(black_box(&ops), RkScheme::Rk44, 1.0).unwrap()));
    group.finish();
}

criterion_group!(benches, vonneumann);
criterion_main!(benches);
