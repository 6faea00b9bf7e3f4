//! Shared helpers: random states and dense reference operators built from
//! Kronecker products.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qaoa_core::gates::Matrix2;
use qaoa_core::{QuantumState, Statevector};

pub type CMatrix = DMatrix<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_amplitudes(len: usize, rng: &mut impl Rng) -> Vec<C64> {
    let raw: Vec<C64> = (0..len)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    raw.into_iter().map(|a| a / norm).collect()
}

pub fn random_state(num_qubits: usize, rng: &mut impl Rng) -> Statevector {
    Statevector::from_amplitudes(num_qubits, random_amplitudes(1 << num_qubits, rng)).unwrap()
}

pub fn matrix2(m: &Matrix2) -> CMatrix {
    CMatrix::from_fn(2, 2, |r, col| m[r][col])
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
}

/// `|1><0|`
pub fn raising() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.)])
}

/// `|0><1|`
pub fn lowering() -> CMatrix {
    raising().adjoint()
}

/// `|1><1|`
pub fn number() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)])
}

/// Tensor product over `n` qubits with `factors[q]` on qubit `q` and the
/// identity elsewhere. Qubit 0 is the least significant index bit, so it is
/// the rightmost Kronecker factor.
pub fn on_qubits(n: usize, factors: &[(usize, CMatrix)]) -> CMatrix {
    let mut full = CMatrix::identity(1, 1);
    for q in (0..n).rev() {
        let f = factors
            .iter()
            .find(|(j, _)| *j == q)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| CMatrix::identity(2, 2));
        full = full.kronecker(&f);
    }
    full
}

/// `exp(-i beta H)` via nalgebra's matrix exponential.
pub fn evolve(h: &CMatrix, beta: f64) -> CMatrix {
    (h * c(0.0, -beta)).exp()
}

pub fn xy_pair(n: usize, i: usize, j: usize) -> CMatrix {
    on_qubits(n, &[(i, pauli_x()), (j, pauli_x())]) + on_qubits(n, &[(i, pauli_y()), (j, pauli_y())])
}

/// `H_PS(i,u,v)` from its ket-bra form on the one-hot register of `n` cities.
pub fn tsp_partial_swap(n: usize, i: usize, u: usize, v: usize) -> CMatrix {
    let q = |pos: usize, city: usize| pos * n + city;
    let next = (i + 1) % n;
    let forward = on_qubits(
        n * n,
        &[
            (q(i, u), raising()),
            (q(next, v), raising()),
            (q(i, v), lowering()),
            (q(next, u), lowering()),
        ],
    );
    let backward = forward.adjoint();
    forward + backward
}

pub fn apply(m: &CMatrix, amps: &[C64]) -> Vec<C64> {
    (m * DVector::from_column_slice(amps)).iter().copied().collect()
}

pub fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn amps<S: QuantumState>(s: &S) -> Vec<C64> {
    s.amplitudes().to_vec()
}

/// `|<a|b>|` for plain amplitude vectors.
pub fn overlap_modulus(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C64>().norm()
}
