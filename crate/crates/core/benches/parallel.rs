//! Sequential against rayon-backed execution on the three heavy kernels.
//! Build with `--no-default-features` to time the sequential fallback alone.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use treedepth::{
    betti_numbers, build_caterpillar, build_lobster, depth_quotient, edge_ideal, sdepth_quotient,
    ExecMode, Limits, PrimeField,
};

const MODES: [(ExecMode, &str); 2] = [(ExecMode::Sequential, "sequential"), (ExecMode::Parallel, "parallel")];

fn betti(c: &mut Criterion) {
    let i = edge_ideal(&build_lobster(4, 2, 2).unwrap());
    let mut group = c.benchmark_group("betti_lobster_4_2");
    for (mode, name) in MODES {
        let limits = Limits::default().with_mode(mode);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| betti_numbers(&i, PrimeField::default(), &limits).unwrap())
        });
    }
    group.finish();
}

fn depth_of_square(c: &mut Criterion) {
    let i = edge_ideal(&build_lobster(4, 2, 2).unwrap()).power(2).unwrap();
    let mut group = c.benchmark_group("depth_lobster_4_2_squared");
    group.sample_size(10);
    for (mode, name) in MODES {
        let limits = Limits::default().with_mode(mode);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| depth_quotient(&i, PrimeField::default(), &limits).unwrap())
        });
    }
    group.finish();
}

fn stanley_depth(c: &mut Criterion) {
    let i = edge_ideal(&build_caterpillar(5, 3, 3).unwrap());
    let mut group = c.benchmark_group("sdepth_caterpillar_5_3");
    group.sample_size(10);
    for (mode, name) in MODES {
        let limits = Limits::default().with_mode(mode);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sdepth_quotient(&i, Some(7), &limits).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, betti, depth_of_square, stanley_depth);
criterion_main!(benches);
