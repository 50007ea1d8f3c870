use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use umbra_bench::{bell_inputs, damped_oscillation};
use umbra_core::bell::PartialBellTable;
use umbra_core::kernels::KernelSpec;
use umbra_core::transform::{transform, QuadratureConfig};
use umbra_core::umbral::{blissard_reciprocal, egf_reciprocal_oracle};
use umbra_core::UmbralSequence;

fn bell_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("bell_table");
    for n in [10, 20, 40] {
        let g = bell_inputs(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| PartialBellTable::new(n, black_box(g)))
        });
    }
    group.finish();
}

fn blissard(c: &mut Criterion) {
    let a = UmbralSequence::laguerre(1);
    let mut group = c.benchmark_group("blissard");
    for n in [15, 30] {
        group.bench_with_input(BenchmarkId::new("bell", n), &n, |b, &n| {
            b.iter(|| blissard_reciprocal(black_box(&a), n))
        });
        group.bench_with_input(BenchmarkId::new("division", n), &n, |b, &n| {
            b.iter(|| egf_reciprocal_oracle(black_box(&a), n))
        });
    }
    group.finish();
}

fn transforms(c: &mut Criterion) {
    let f = damped_oscillation();
    let q = QuadratureConfig::default();
    let mut group = c.benchmark_group("transform");
    for r in [0, 1, 2] {
        let spec = KernelSpec::laguerre(r);
        group.bench_with_input(BenchmarkId::new("laguerre", r), &spec, |b, spec| {
            b.iter(|| transform(&f, spec, black_box(1.0), &q).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bell_table, blissard, transforms);
criterion_main!(benches);
