use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qaoa_core::oracle::catalog_entry;
use qaoa_core::{Angles, Ansatz};

fn expectation(c: &mut Criterion) {
    let mut group = c.benchmark_group("ansatz_expectation");
    for name in ["petersen", "c4-bisection", "tsp4-asym"] {
        let entry = catalog_entry(name).unwrap();
        let ansatz = Ansatz::new(&entry.designated_spec(3), &entry.problem).unwrap();
        let angles = Angles::new(vec![0.2, 0.4, 0.6], vec![0.5, 0.3, 0.1]).unwrap();
        group.bench_function(name, |b| b.iter(|| ansatz.expectation(black_box(&angles)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, expectation);
criterion_main!(benches);
