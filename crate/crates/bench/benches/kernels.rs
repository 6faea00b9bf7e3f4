use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qaoa_core::gates::x_rotation;
use qaoa_core::problems::fixed_weight_labels;
use qaoa_core::state::{HoppingHamiltonian, SubspaceExponential};
use qaoa_core::{Statevector, SubspaceState};

fn gate_kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("gates");
    for n in [10, 16, 20] {
        let mut state = Statevector::uniform(n).unwrap();
        let u = x_rotation(0.3);
        group.bench_with_input(BenchmarkId::new("single_qubit", n), &n, |b, &n| {
            b.iter(|| state.apply_single_qubit(black_box(n / 2), &u).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("rzz", n), &n, |b, &n| {
            b.iter(|| state.apply_rzz(0, black_box(n - 1), 0.4).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("xy", n), &n, |b, &n| {
            b.iter(|| state.apply_xy(1, black_box(n - 2), 0.4).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("transverse_field", n), &n, |b, _| {
            b.iter(|| state.apply_transverse_field(black_box(0.2)).unwrap())
        });
    }
    group.finish();
}

fn subspace_exponential(c: &mut Criterion) {
    let mut group = c.benchmark_group("subspace_exponential");
    for n in [8, 10, 12] {
        let basis: std::sync::Arc<[u64]> = fixed_weight_labels(n, n / 2).collect::<Vec<_>>().into();
        let h = HoppingHamiltonian::xy_ring(n).unwrap().subspace_matrix(&basis).unwrap();
        group.bench_with_input(BenchmarkId::new("eigendecompose", n), &h, |b, h| {
            b.iter(|| SubspaceExponential::new(black_box(h)).unwrap())
        });
        let exp = SubspaceExponential::new(&h).unwrap();
        let mut state = SubspaceState::uniform(n, basis).unwrap();
        group.bench_with_input(BenchmarkId::new("apply", n), &n, |b, _| {
            b.iter(|| exp.apply(&mut state, black_box(0.3)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, gate_kernels, subspace_exponential);
criterion_main!(benches);
