use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gridsight_bench::fixture;
use gridsight_core::fourier::GridFunction;

fn dft(c: &mut Criterion) {
    let mut group = c.benchmark_group("dft");
    for (p, d) in [(7u64, 3usize), (13, 3), (7, 4)] {
        let f = GridFunction::multiples_indicator(&fixture(p, d)).unwrap();
        group.bench_with_input(BenchmarkId::new(format!("d{d}"), p), &f, |b, f| {
            b.iter(|| black_box(f).dft())
        });
    }
    group.finish();
}

criterion_group!(benches, dft);
criterion_main!(benches);
