use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gridsight_bench::fixture;
use gridsight_core::modular::Sign;
use gridsight_core::poset::{build_s_poset, width_exact};

fn width(c: &mut Criterion) {
    let mut group = c.benchmark_group("width_exact");
    for p in [31u64, 101, 211] {
        let poset = build_s_poset(&fixture(p, 3), &[Sign::Plus, Sign::Minus]).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(p), &poset, |b, poset| {
            b.iter(|| width_exact(black_box(poset)).unwrap().width)
        });
    }
    group.finish();
}

criterion_group!(benches, width);
criterion_main!(benches);
