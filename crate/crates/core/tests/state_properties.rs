mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use qaoa_core::gates;
use qaoa_core::problems::fixed_weight_labels;
use qaoa_core::state::{
    apply_diagonal_phase, apply_grover_mixer, expectation_diagonal, sample, HopTerm,
    HoppingHamiltonian, SubspaceExponential,
};
use qaoa_core::{DiagonalObservable, QuantumState, Statevector, SubspaceState};
use statrs::distribution::{ChiSquared, ContinuousCDF};

const N: usize = 5;

fn state_strategy() -> impl Strategy<Value = Statevector> {
    any::<u64>().prop_map(|seed| random_state(N, &mut rng(seed)))
}

fn angle() -> impl Strategy<Value = f64> {
    -7.0..7.0f64
}

fn pair() -> impl Strategy<Value = (usize, usize)> {
    (0..N, 0..N).prop_filter("distinct qubits", |(a, b)| a != b)
}

fn unitary(theta: f64, phi: f64) -> gates::Matrix2 {
    gates::multiply(&gates::x_rotation(theta), &gates::multiply(&gates::hadamard(), &gates::z_rotation(phi)))
}

fn weight_distribution(s: &Statevector) -> Vec<f64> {
    let mut w = vec![0.0; s.num_qubits() + 1];
    for (k, a) in s.amplitudes().iter().enumerate() {
        w[k.count_ones() as usize] += a.norm_sqr();
    }
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernels_preserve_norm(mut s in state_strategy(), q in 0..N, (i, j) in pair(), a in angle(), b in angle()) {
        s.apply_single_qubit(q, &unitary(a, b)).unwrap();
        s.apply_rzz(i, j, a).unwrap();
        s.apply_xy(i, j, b).unwrap();
        s.apply_transverse_field(a).unwrap();
        HoppingHamiltonian::xy_ring(N).unwrap().exp_apply_dense(&mut s, b).unwrap();
        HoppingHamiltonian::xy_clique(N).unwrap().product_apply_dense(&mut s, a).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn kernels_round_trip(s in state_strategy(), q in 0..N, (i, j) in pair(), a in angle(), b in angle()) {
        let start = amps(&s);
        let mut t = s.clone();
        let u = unitary(a, b);
        t.apply_single_qubit(q, &u).unwrap();
        t.apply_rzz(i, j, a).unwrap();
        t.apply_xy(i, j, b).unwrap();
        t.apply_transverse_field(a).unwrap();
        let ring = HoppingHamiltonian::xy_ring(N).unwrap();
        ring.exp_apply_dense(&mut t, b).unwrap();
        ring.exp_apply_dense(&mut t, -b).unwrap();
        t.apply_transverse_field(-a).unwrap();
        t.apply_xy(i, j, -b).unwrap();
        t.apply_rzz(i, j, -a).unwrap();
        t.apply_single_qubit(q, &gates::adjoint(&u)).unwrap();
        prop_assert!(max_diff(&amps(&t), &start) < 1e-9);
    }

    #[test]
    fn diagonal_and_grover_round_trip(s in state_strategy(), target in state_strategy(), a in angle(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let values: Vec<f64> = (0..1 << N).map(|_| rand::Rng::gen_range(&mut r, -3.0..3.0)).collect();
        let d = DiagonalObservable::new(values).unwrap();
        let mut t = s.clone();
        apply_diagonal_phase(&mut t, a, &d).unwrap();
        apply_grover_mixer(&mut t, a, &target).unwrap();
        prop_assert!((t.norm_sqr() - 1.0).abs() < 1e-10);
        apply_grover_mixer(&mut t, -a, &target).unwrap();
        apply_diagonal_phase(&mut t, -a, &d).unwrap();
        prop_assert!(max_diff(&amps(&t), &amps(&s)) < 1e-9);
    }

    #[test]
    fn xy_mixers_preserve_hamming_weight(s in state_strategy(), (i, j) in pair(), a in angle()) {
        let before = weight_distribution(&s);
        let mut t = s.clone();
        t.apply_xy(i, j, a).unwrap();
        HoppingHamiltonian::xy_ring(N).unwrap().exp_apply_dense(&mut t, a).unwrap();
        HoppingHamiltonian::xy_clique(N).unwrap().exp_apply_dense(&mut t, -0.5 * a).unwrap();
        let after = weight_distribution(&t);
        for (x, y) in before.iter().zip(&after) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn subspace_exponential_round_trip(seed in any::<u64>(), k in 1..N, a in angle()) {
        let basis: Arc<[u64]> = fixed_weight_labels(N, k).collect::<Vec<_>>().into();
        let h = HoppingHamiltonian::xy_ring(N).unwrap();
        let exp = SubspaceExponential::new(&h.subspace_matrix(&basis).unwrap()).unwrap();
        let start = random_amplitudes(basis.len(), &mut rng(seed));
        let mut s = SubspaceState::new(N, basis, start.clone()).unwrap();
        exp.apply(&mut s, a).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        exp.apply(&mut s, -a).unwrap();
        prop_assert!(max_diff(s.amplitudes(), &start) < 1e-9);
    }

    #[test]
    fn hop_term_exponential_is_a_rotation(s in state_strategy(), (i, j) in pair(), a in angle()) {
        let term = HopTerm::new(1 << i, 1 << j, 1.5).unwrap();
        let mut t = s.clone();
        t.apply_hop_exponential(&term, a).unwrap();
        prop_assert!((t.norm_sqr() - 1.0).abs() < 1e-10);
        t.apply_hop_exponential(&term, -a).unwrap();
        prop_assert!(max_diff(&amps(&t), &amps(&s)) < 1e-9);
    }

    #[test]
    fn expectation_is_probability_weighted(s in state_strategy(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let values: Vec<f64> = (0..1 << N).map(|_| rand::Rng::gen_range(&mut r, -3.0..3.0)).collect();
        let want: f64 = s.amplitudes().iter().zip(&values).map(|(a, v)| a.norm_sqr() * v).sum();
        let got = expectation_diagonal(&s, &DiagonalObservable::new(values).unwrap()).unwrap();
        prop_assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_seed_deterministic(s in state_strategy(), seed in any::<u64>()) {
        prop_assert_eq!(sample(&s, 200, seed).unwrap(), sample(&s, 200, seed).unwrap());
    }
}

#[test]
fn sample_frequencies_pass_chi_squared() {
    let s = random_state(4, &mut rng(11));
    let shots = 50_000;
    let histogram = sample(&s, shots, 12).unwrap();
    let statistic: f64 = s
        .probabilities()
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let expected = p * shots as f64;
            let observed = *histogram.get(&(k as u64)).unwrap_or(&0) as f64;
            (observed - expected).powi(2) / expected
        })
        .sum();
    let dist = ChiSquared::new(15.0).unwrap();
    let p_value = 1.0 - dist.cdf(statistic);
    assert!(p_value > 1e-3, "chi-squared {statistic}, p = {p_value}");
}

#[test]
fn subspace_sampling_reports_labels() {
    let basis: Arc<[u64]> = fixed_weight_labels(4, 2).collect::<Vec<_>>().into();
    let s = SubspaceState::uniform(4, basis.clone()).unwrap();
    let histogram = sample(&s, 1000, 3).unwrap();
    assert!(histogram.keys().all(|z| basis.contains(z)));
    assert_eq!(histogram.values().sum::<usize>(), 1000);
}
