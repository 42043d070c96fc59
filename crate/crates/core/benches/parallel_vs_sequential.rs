use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nmi_core::relation_maps::{envelope_scatter, surface_fr, surface_pr, IndexMap, SurfaceMode};
use nmi_core::verify::{oracle_sweep, SweepDepth};
use nmi_core::{ClassSizes, Execution};

fn label(e: Execution) -> &'static str {
    match e {
        Execution::Sequential => "sequential",
        #[cfg(feature = "parallel")]
        Execution::Parallel => "parallel",
    }
}

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle_sweep_total_60");
    g.sample_size(10);
    for &e in Execution::available() {
        g.bench_function(BenchmarkId::from_parameter(label(e)), |b| {
            b.iter(|| oracle_sweep(black_box(60), SweepDepth::AllForms, e))
        });
    }
    g.finish();
}

fn surfaces(c: &mut Criterion) {
    let sizes = ClassSizes::new(60.0, 40.0).unwrap();
    let mut g = c.benchmark_group("surface_201x201");
    for &e in Execution::available() {
        g.bench_function(BenchmarkId::new("pr_actual", label(e)), |b| {
            b.iter(|| surface_pr(black_box(sizes), 201, 201, SurfaceMode::Actual, e).unwrap())
        });
        g.bench_function(BenchmarkId::new("fr", label(e)), |b| {
            b.iter(|| surface_fr(black_box(sizes), 201, 201, e).unwrap())
        });
    }
    g.finish();
}

fn envelope(c: &mut Criterion) {
    let mut g = c.benchmark_group("envelope_120_80");
    for &e in Execution::available() {
        g.bench_function(BenchmarkId::from_parameter(label(e)), |b| {
            b.iter(|| envelope_scatter(IndexMap::Accuracy, black_box(120), 80, 200, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, sweep, surfaces, envelope);
criterion_main!(benches);
