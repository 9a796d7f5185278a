use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gridsight_bench::fixture;
use gridsight_core::lattice::{lll_reduce, IntegerLattice};

fn lll(c: &mut Criterion) {
    let mut group = c.benchmark_group("lll");
    for (p, d) in [(1009u64, 3usize), (1009, 5), (100_003, 6)] {
        let lattice = IntegerLattice::parallelotope(&fixture(p, d));
        group.bench_with_input(BenchmarkId::new(format!("d{d}"), p), &lattice, |b, l| {
            b.iter(|| lll_reduce(black_box(l)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, lll);
criterion_main!(benches);
