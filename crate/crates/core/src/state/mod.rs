//! State representations and the kernels that act on them.
//!
//! Two carriers exist: [`Statevector`] holds all `2^q` amplitudes, while
//! [`SubspaceState`] holds amplitudes over an explicit, sorted list of basis
//! labels (for example the Hamming-weight-`k` strings or the one-hot
//! permutation encodings). Operations that only need amplitudes and labels
//! (diagonal phases, expectations, sampling, the Grover rank-1 update) are
//! written once against the [`QuantumState`] trait.

mod dense;
mod hopping;
mod subspace;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{QaoaError, Result};

pub use dense::{Statevector, MAX_DENSE_QUBITS};
pub use hopping::{HopTerm, HoppingHamiltonian};
pub use subspace::{subspace_exponential_apply, SubspaceExponential, SubspaceState};

/// States at least this long are processed with rayon.
pub(crate) const PAR_MIN_LEN: usize = 1 << 14;

static VALIDATION: AtomicBool = AtomicBool::new(cfg!(debug_assertions));

/// Enables or disables the unitarity and normalization checks on gate inputs.
///
/// Defaults to on in debug builds and off in release builds.
pub fn set_validation(enabled: bool) {
    VALIDATION.store(enabled, Ordering::Relaxed);
}

pub fn validation_enabled() -> bool {
    VALIDATION.load(Ordering::Relaxed)
}

/// Real eigenvalues of an observable that is diagonal in the computational
/// basis, one per entry of the paired state representation.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalObservable {
    values: Vec<f64>,
}

impl DiagonalObservable {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(QaoaError::invalid(format!(
                "diagonal entry {k} is not finite"
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Entrywise `scale * v + shift`.
    pub fn affine(&self, scale: f64, shift: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| scale * v + shift).collect(),
        }
    }
}

impl From<DiagonalObservable> for Vec<f64> {
    fn from(d: DiagonalObservable) -> Self {
        d.values
    }
}

/// Amplitude storage shared by the dense and subspace representations.
pub trait QuantumState {
    fn num_qubits(&self) -> usize;

    fn amplitudes(&self) -> &[C64];

    fn amplitudes_mut(&mut self) -> &mut [C64];

    /// Computational basis label of amplitude entry `k`.
    fn label(&self, k: usize) -> u64;

    fn dimension(&self) -> usize {
        self.amplitudes().len()
    }

    fn norm_sqr(&self) -> f64 {
        self.amplitudes().iter().map(|a| a.norm_sqr()).sum()
    }

    fn probabilities(&self) -> Vec<f64> {
        self.amplitudes().iter().map(|a| a.norm_sqr()).collect()
    }

    /// `<self|other>`; both states must share one representation.
    fn inner(&self, other: &Self) -> Result<C64>
    where
        Self: Sized,
    {
        check_len(self.dimension(), other.dimension())?;
        Ok(self
            .amplitudes()
            .iter()
            .zip(other.amplitudes())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

fn check_len(state: usize, other: usize) -> Result<()> {
    if state != other {
        return Err(QaoaError::invalid(format!(
            "dimension mismatch: state has {state} entries, operand has {other}"
        )));
    }
    Ok(())
}

/// Multiplies amplitude `k` by `exp(-i gamma diag[k])`.
pub fn apply_diagonal_phase<S: QuantumState + ?Sized>(
    state: &mut S,
    gamma: f64,
    diag: &DiagonalObservable,
) -> Result<()> {
    check_len(state.dimension(), diag.len())?;
    let amps = state.amplitudes_mut();
    let kernel = |(a, &d): (&mut C64, &f64)| *a *= C64::from_polar(1.0, -gamma * d);
    if amps.len() >= PAR_MIN_LEN {
        amps.par_iter_mut().zip(diag.values().par_iter()).for_each(kernel);
    } else {
        amps.iter_mut().zip(diag.values()).for_each(kernel);
    }
    Ok(())
}

/// `sum_k |amp_k|^2 diag[k]`.
pub fn expectation_diagonal<S: QuantumState + ?Sized>(
    state: &S,
    diag: &DiagonalObservable,
) -> Result<f64> {
    check_len(state.dimension(), diag.len())?;
    let amps = state.amplitudes();
    // fixed chunking keeps the floating-point summation order independent
    // of the thread count
    let value = if amps.len() >= PAR_MIN_LEN {
        let partial: Vec<f64> = amps
            .par_chunks(PAR_MIN_LEN)
            .zip(diag.values().par_chunks(PAR_MIN_LEN))
            .map(|(a, d)| a.iter().zip(d).map(|(a, d)| a.norm_sqr() * d).sum())
            .collect();
        partial.iter().sum()
    } else {
        amps.iter()
            .zip(diag.values())
            .map(|(a, d)| a.norm_sqr() * d)
            .sum()
    };
    Ok(value)
}

/// Draws `shots` basis labels i.i.d. from `|amp_k|^2`.
///
/// The histogram maps basis labels (not entry indices) to counts. The draw
/// sequence depends only on `seed` and the amplitudes.
pub fn sample<S: QuantumState + ?Sized>(
    state: &S,
    shots: usize,
    seed: u64,
) -> Result<BTreeMap<u64, usize>> {
    if shots == 0 {
        return Err(QaoaError::invalid("shots must be at least 1"));
    }
    let mut cumulative = Vec::with_capacity(state.dimension());
    let mut total = 0.0;
    let mut last_positive = 0;
    for (k, a) in state.amplitudes().iter().enumerate() {
        let p = a.norm_sqr();
        if p > 0.0 {
            last_positive = k;
        }
        total += p;
        cumulative.push(total);
    }
    if total <= 0.0 {
        return Err(QaoaError::invalid("cannot sample from a zero state"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut histogram = BTreeMap::new();
    for _ in 0..shots {
        let u = rng.gen::<f64>() * total;
        let k = cumulative.partition_point(|&c| c <= u).min(last_positive);
        *histogram.entry(state.label(k)).or_insert(0) += 1;
    }
    Ok(histogram)
}

/// Applies `exp(-i beta |t><t|)` as the rank-1 update
/// `psi += (exp(-i beta) - 1) <t|psi> t`.
pub fn apply_grover_mixer<S: QuantumState + ?Sized>(
    state: &mut S,
    beta: f64,
    target: &S,
) -> Result<()> {
    check_len(state.dimension(), target.dimension())?;
    if state.num_qubits() != target.num_qubits() {
        return Err(QaoaError::invalid("target register width differs from state"));
    }
    if validation_enabled() {
        let n = target.norm_sqr();
        if (n - 1.0).abs() > 1e-10 {
            return Err(QaoaError::invalid(format!(
                "grover target must have unit norm, got {n}"
            )));
        }
    }
    let overlap: C64 = target
        .amplitudes()
        .iter()
        .zip(state.amplitudes())
        .map(|(t, a)| t.conj() * a)
        .sum();
    let factor = (C64::from_polar(1.0, -beta) - 1.0) * overlap;
    for (a, t) in state.amplitudes_mut().iter_mut().zip(target.amplitudes()) {
        *a += factor * t;
    }
    Ok(())
}
