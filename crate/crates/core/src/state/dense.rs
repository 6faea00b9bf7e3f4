use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::hopping::HopTerm;
use super::{validation_enabled, QuantumState, PAR_MIN_LEN};
use crate::error::{QaoaError, Result};
use crate::gates::{self, Matrix2};

/// Largest register simulated densely (`2^26` amplitudes, 1 GiB).
pub const MAX_DENSE_QUBITS: usize = 26;

/// All `2^q` amplitudes of a `q`-qubit register. Entry `k` is the basis state
/// whose qubit `j` equals bit `j` of `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amps: Vec<C64>,
}

fn check_width(num_qubits: usize) -> Result<()> {
    if num_qubits > MAX_DENSE_QUBITS {
        return Err(QaoaError::resource(format!(
            "{num_qubits} qubits exceeds the dense limit of {MAX_DENSE_QUBITS}"
        )));
    }
    Ok(())
}

impl Statevector {
    pub fn new_basis_state(num_qubits: usize, index: u64) -> Result<Self> {
        check_width(num_qubits)?;
        let dim = 1u64 << num_qubits;
        if index >= dim {
            return Err(QaoaError::invalid(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim as usize];
        amps[index as usize] = C64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// The plus state `|+>^q`.
    pub fn uniform(num_qubits: usize) -> Result<Self> {
        check_width(num_qubits)?;
        let dim = 1usize << num_qubits;
        let a = C64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self {
            num_qubits,
            amps: vec![a; dim],
        })
    }

    pub fn from_amplitudes(num_qubits: usize, amps: Vec<C64>) -> Result<Self> {
        check_width(num_qubits)?;
        if amps.len() != 1usize << num_qubits {
            return Err(QaoaError::invalid(format!(
                "expected {} amplitudes for {num_qubits} qubits, got {}",
                1usize << num_qubits,
                amps.len()
            )));
        }
        Ok(Self { num_qubits, amps })
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(QaoaError::invalid(format!(
                "qubit {qubit} out of range for {} qubits",
                self.num_qubits
            )));
        }
        Ok(())
    }

    fn check_pair(&self, q1: usize, q2: usize) -> Result<()> {
        self.check_qubit(q1)?;
        self.check_qubit(q2)?;
        if q1 == q2 {
            return Err(QaoaError::invalid("two-qubit gate needs distinct qubits"));
        }
        Ok(())
    }

    /// Applies the 2x2 unitary `u` to `qubit` in place.
    pub fn apply_single_qubit(&mut self, qubit: usize, u: &Matrix2) -> Result<()> {
        self.check_qubit(qubit)?;
        if validation_enabled() && !gates::is_unitary(u, 1e-12) {
            return Err(QaoaError::invalid("gate matrix is not unitary"));
        }
        let [[a, b], [c, d]] = *u;
        let stride = 1usize << qubit;
        let pair = move |(x0, x1): (&mut C64, &mut C64)| {
            let (v0, v1) = (*x0, *x1);
            *x0 = a * v0 + b * v1;
            *x1 = c * v0 + d * v1;
        };
        let kernel = |chunk: &mut [C64]| {
            let (lo, hi) = chunk.split_at_mut(stride);
            if stride >= PAR_MIN_LEN {
                lo.par_iter_mut().zip(hi.par_iter_mut()).for_each(pair);
            } else {
                lo.iter_mut().zip(hi.iter_mut()).for_each(pair);
            }
        };
        if self.amps.len() >= PAR_MIN_LEN {
            self.amps.par_chunks_mut(2 * stride).for_each(kernel);
        } else {
            self.amps.chunks_mut(2 * stride).for_each(kernel);
        }
        Ok(())
    }

    /// `R_ZZ(theta) = exp(-i theta/2 Z_q1 Z_q2)`.
    pub fn apply_rzz(&mut self, q1: usize, q2: usize, theta: f64) -> Result<()> {
        self.check_pair(q1, q2)?;
        let same = C64::from_polar(1.0, -theta / 2.0);
        let differ = C64::from_polar(1.0, theta / 2.0);
        let kernel = |(k, a): (usize, &mut C64)| {
            if ((k >> q1) ^ (k >> q2)) & 1 == 0 {
                *a *= same;
            } else {
                *a *= differ;
            }
        };
        if self.amps.len() >= PAR_MIN_LEN {
            self.amps.par_iter_mut().enumerate().for_each(kernel);
        } else {
            self.amps.iter_mut().enumerate().for_each(kernel);
        }
        Ok(())
    }

    /// `exp(-i beta (X_q1 X_q2 + Y_q1 Y_q2))`, the two-qubit XY mixer factor.
    pub fn apply_xy(&mut self, q1: usize, q2: usize, beta: f64) -> Result<()> {
        self.check_pair(q1, q2)?;
        self.apply_hop_exponential(&HopTerm::xy(q1, q2), beta)
    }

    /// Applies `exp(-i beta T)` for a single hopping term `T`, which acts as
    /// `coeff * sigma_x` on each pair of basis states it connects.
    pub fn apply_hop_exponential(&mut self, term: &HopTerm, beta: f64) -> Result<()> {
        if term.highest_qubit() >= self.num_qubits {
            return Err(QaoaError::invalid("hopping term acts outside the register"));
        }
        let (c, s) = term.rotation(beta);
        let chunk_len = 1usize << (term.highest_qubit() + 1);
        let kernel = |(ci, chunk): (usize, &mut [C64])| {
            let base = (ci * chunk_len) as u64;
            for off in 0..chunk.len() {
                let k = base + off as u64;
                if term.is_source(k) {
                    let j = (term.partner_unchecked(k) - base) as usize;
                    let (v0, v1) = (chunk[off], chunk[j]);
                    chunk[off] = c * v0 + s * v1;
                    chunk[j] = s * v0 + c * v1;
                }
            }
        };
        if self.amps.len() >= PAR_MIN_LEN && self.amps.len() > chunk_len {
            self.amps.par_chunks_mut(chunk_len).enumerate().for_each(kernel);
        } else {
            self.amps.chunks_mut(chunk_len).enumerate().for_each(kernel);
        }
        Ok(())
    }

    /// Applies `exp(-i beta X)` to every qubit.
    pub fn apply_transverse_field(&mut self, beta: f64) -> Result<()> {
        let u = gates::x_rotation(beta);
        for q in 0..self.num_qubits {
            self.apply_single_qubit(q, &u)?;
        }
        Ok(())
    }

    /// Total probability on basis labels rejected by `feasible`.
    pub fn leakage(&self, feasible: impl Fn(u64) -> bool) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(k, _)| !feasible(*k as u64))
            .fold(0.0, |acc, (_, a)| acc + a.norm_sqr())
    }
}

impl QuantumState for Statevector {
    fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    fn label(&self, k: usize) -> u64 {
        k as u64
    }
}
