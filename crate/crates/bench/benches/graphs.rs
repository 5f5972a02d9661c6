use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use starshape::algebra::rat;
use starshape::graph::{hypothesis_residual, solve_positive_roots, spectral_radius, star_graphs};
use starshape::GraphKind;
use starshape_bench::sample_graphs;

fn roots(c: &mut Criterion) {
    let precision = rat(1, 1_000_000_000_000_000);
    let mut group = c.benchmark_group("solve_positive_roots");
    for g in sample_graphs() {
        group.bench_with_input(BenchmarkId::from_parameter(&g), &g, |b, g| {
            b.iter(|| solve_positive_roots(g, &precision).unwrap())
        });
    }
    group.finish();
}

fn radius(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral_radius");
    for g in sample_graphs() {
        group.bench_with_input(BenchmarkId::from_parameter(&g), &g, |b, g| b.iter(|| spectral_radius(g, 1e-12)));
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let graphs: Vec<_> = star_graphs(4, 4).into_iter().filter(|g| g.kind() != GraphKind::Dynkin).collect();
    let precision = rat(1, 10_000_000_000);
    c.bench_function("hypothesis_sweep_4x4", |b| {
        b.iter(|| {
            graphs
                .iter()
                .map(|g| hypothesis_residual(g, &precision).unwrap().residual)
                .fold(0.0, f64::max)
        })
    });
}

criterion_group!(benches, roots, radius, sweep);
criterion_main!(benches);
