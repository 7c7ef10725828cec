use criterion::{criterion_group, criterion_main, Criterion};
use singlab_core::batch;
use singlab_core::catalog::Family;

fn family_batch(c: &mut Criterion) {
    let seeds: Vec<u64> = (0..16).collect();
    let mut group = c.benchmark_group("family-one-16");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| batch::evaluate_sequential(Family::One, &seeds, 12)));
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| b.iter(|| batch::evaluate_parallel(Family::One, &seeds, 12)));
    group.finish();
}

criterion_group!(benches, family_batch);
criterion_main!(benches);
