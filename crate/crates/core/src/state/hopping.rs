//! Hamiltonians built from "hopping" terms.
//!
//! A [`HopTerm`] connects basis states in pairs: every label whose masked
//! bits equal pattern `a` is mapped to the label with those bits replaced by
//! pattern `b`, and back, with a real coefficient. On each connected pair the
//! term acts as `coeff * sigma_x` and it annihilates every other label. Both
//! `X_i X_j + Y_i Y_j` (coefficient 2, patterns `1_i` and `1_j`) and the TSP
//! partial swap `H_PS(i,u,v)` (coefficient 1, patterns `{(i,v),(i+1,u)}` and
//! `{(i,u),(i+1,v)}`) have this shape, so the exact two-level rotation, the
//! full-space action and the restriction to a feasible basis are written
//! once here.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::{QuantumState, Statevector, SubspaceState, PAR_MIN_LEN};
use crate::error::{QaoaError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopTerm {
    mask: u64,
    a: u64,
    b: u64,
    coeff: f64,
}

impl HopTerm {
    pub fn new(a: u64, b: u64, coeff: f64) -> Result<Self> {
        if a == 0 || b == 0 || a & b != 0 {
            return Err(QaoaError::invalid(
                "hopping patterns must be nonzero and disjoint",
            ));
        }
        if !coeff.is_finite() {
            return Err(QaoaError::invalid("hopping coefficient must be finite"));
        }
        Ok(Self {
            mask: a | b,
            a,
            b,
            coeff,
        })
    }

    /// `X_i X_j + Y_i Y_j`, which is `2 * SWAP` on `{|01>, |10>}`.
    pub fn xy(i: usize, j: usize) -> Self {
        debug_assert_ne!(i, j);
        Self {
            mask: (1 << i) | (1 << j),
            a: 1 << i,
            b: 1 << j,
            coeff: 2.0,
        }
    }

    /// `H_PS(i,u,v)` on the one-hot register of `n` cities, qubit
    /// `(position, city)` at `position * n + city`. Position `i + 1` wraps to 0.
    pub fn tsp_swap(n: usize, position: usize, u: usize, v: usize) -> Self {
        debug_assert!(u != v && u < n && v < n && position < n);
        let next = (position + 1) % n;
        let q = |pos: usize, city: usize| 1u64 << (pos * n + city);
        let a = q(position, v) | q(next, u);
        let b = q(position, u) | q(next, v);
        Self {
            mask: a | b,
            a,
            b,
            coeff: 1.0,
        }
    }

    pub fn coeff(&self) -> f64 {
        self.coeff
    }

    pub fn highest_qubit(&self) -> usize {
        63 - self.mask.leading_zeros() as usize
    }

    #[inline]
    pub(crate) fn is_source(&self, k: u64) -> bool {
        k & self.mask == self.a
    }

    #[inline]
    pub(crate) fn partner_unchecked(&self, k: u64) -> u64 {
        k ^ self.mask
    }

    /// Label connected to `k`, if the term acts on `k` at all.
    #[inline]
    pub fn partner(&self, k: u64) -> Option<u64> {
        let m = k & self.mask;
        (m == self.a || m == self.b).then_some(k ^ self.mask)
    }

    /// Diagonal and off-diagonal entries of `exp(-i beta coeff sigma_x)`.
    pub(crate) fn rotation(&self, beta: f64) -> (C64, C64) {
        let t = beta * self.coeff;
        (C64::new(t.cos(), 0.0), C64::new(0.0, -t.sin()))
    }
}

/// A real symmetric sum of hopping terms on `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct HoppingHamiltonian {
    num_qubits: usize,
    terms: Vec<HopTerm>,
}

impl HoppingHamiltonian {
    pub fn new(num_qubits: usize, terms: Vec<HopTerm>) -> Result<Self> {
        if num_qubits > 64 {
            return Err(QaoaError::invalid("at most 64 qubits can be labelled"));
        }
        if let Some(t) = terms.iter().find(|t| t.highest_qubit() >= num_qubits) {
            return Err(QaoaError::invalid(format!(
                "term touches qubit {} on a {num_qubits}-qubit register",
                t.highest_qubit()
            )));
        }
        Ok(Self { num_qubits, terms })
    }

    /// Nearest-neighbour XY ring `sum_i (X_i X_{i+1} + Y_i Y_{i+1})`, indices
    /// mod `n`. Each unordered bond appears once, so `n = 2` has a single bond.
    pub fn xy_ring(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(QaoaError::invalid("xy ring needs at least two qubits"));
        }
        let mut bonds: Vec<(usize, usize)> = (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                (i.min(j), i.max(j))
            })
            .collect();
        bonds.sort_unstable();
        bonds.dedup();
        Self::new(n, bonds.into_iter().map(|(i, j)| HopTerm::xy(i, j)).collect())
    }

    /// All-to-all XY mixer `sum_{i<j} (X_i X_j + Y_i Y_j)`.
    pub fn xy_clique(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(QaoaError::invalid("xy clique needs at least two qubits"));
        }
        let terms = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| HopTerm::xy(i, j)))
            .collect();
        Self::new(n, terms)
    }

    /// `sum_i H_PS(i)` with `H_PS(i) = sum_{u<v} H_PS(i,u,v)`, ordered by
    /// position and then by city pair.
    pub fn tsp_simultaneous_swap(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(QaoaError::invalid("tsp swap mixer needs at least two cities"));
        }
        if n * n > 64 {
            return Err(QaoaError::resource(format!(
                "{n} cities need {} qubits, more than 64",
                n * n
            )));
        }
        let mut terms = Vec::new();
        for i in 0..n {
            for u in 0..n {
                for v in u + 1..n {
                    terms.push(HopTerm::tsp_swap(n, i, u, v));
                }
            }
        }
        Self::new(n * n, terms)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> &[HopTerm] {
        &self.terms
    }

    /// Upper bound on the operator norm (sum of term norms).
    pub fn norm_bound(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.abs()).sum()
    }

    /// `out = H input` over the full `2^q` space.
    pub fn apply_dense(&self, input: &[C64], out: &mut [C64]) -> Result<()> {
        let dim = 1usize
            .checked_shl(self.num_qubits as u32)
            .ok_or_else(|| QaoaError::resource("register too wide for a dense vector"))?;
        if input.len() != dim || out.len() != dim {
            return Err(QaoaError::invalid("dense vector length does not match register"));
        }
        let row = |(k, o): (usize, &mut C64)| {
            let mut acc = C64::new(0.0, 0.0);
            for t in &self.terms {
                if let Some(j) = t.partner(k as u64) {
                    acc += t.coeff * input[j as usize];
                }
            }
            *o = acc;
        };
        if dim >= PAR_MIN_LEN {
            out.par_iter_mut().enumerate().for_each(row);
        } else {
            out.iter_mut().enumerate().for_each(row);
        }
        Ok(())
    }

    /// `psi <- exp(-i beta H) psi` on a dense state by a scaled Taylor series.
    ///
    /// The interval is split so that each step has `|tau| * norm_bound <= 1/2`
    /// and each step's series is summed until the term is below `1e-18`.
    pub fn exp_apply_dense(&self, state: &mut Statevector, beta: f64) -> Result<()> {
        if state.num_qubits() != self.num_qubits {
            return Err(QaoaError::invalid("state width does not match Hamiltonian"));
        }
        if beta == 0.0 || self.terms.is_empty() {
            return Ok(());
        }
        let steps = (2.0 * beta.abs() * self.norm_bound()).ceil().max(1.0) as usize;
        let tau = beta / steps as f64;
        let amps = state.amplitudes_mut();
        let mut term = vec![C64::new(0.0, 0.0); amps.len()];
        let mut next = term.clone();
        for _ in 0..steps {
            term.copy_from_slice(amps);
            for m in 1..=64 {
                self.apply_dense(&term, &mut next)?;
                let factor = C64::new(0.0, -tau / m as f64);
                let mut largest = 0.0f64;
                for ((t, n), a) in term.iter_mut().zip(&next).zip(amps.iter_mut()) {
                    *t = factor * n;
                    *a += *t;
                    largest = largest.max(t.norm_sqr());
                }
                if largest < 1e-36 {
                    break;
                }
            }
        }
        Ok(())
    }

    /// Ordered product `prod_t exp(-i beta T_t)` on a dense state, first term
    /// applied first.
    pub fn product_apply_dense(&self, state: &mut Statevector, beta: f64) -> Result<()> {
        for t in &self.terms {
            state.apply_hop_exponential(t, beta)?;
        }
        Ok(())
    }

    /// Restriction to the span of `basis` (sorted labels) as a dense real
    /// symmetric matrix. Fails if some term maps a basis label outside it.
    pub fn subspace_matrix(&self, basis: &[u64]) -> Result<DMatrix<f64>> {
        let n = basis.len();
        let mut m = DMatrix::zeros(n, n);
        for (col, &k) in basis.iter().enumerate() {
            for t in &self.terms {
                if let Some(j) = t.partner(k) {
                    let row = basis.binary_search(&j).map_err(|_| {
                        QaoaError::invalid(format!(
                            "hopping term maps basis label {k} outside the subspace"
                        ))
                    })?;
                    m[(row, col)] += t.coeff;
                }
            }
        }
        Ok(m)
    }

    /// For every term, the `(source, partner)` entry pairs inside `basis`.
    pub fn subspace_pairs(&self, basis: &[u64]) -> Result<Vec<Vec<(usize, usize)>>> {
        self.terms
            .iter()
            .map(|t| {
                let mut pairs = Vec::new();
                for (i, &k) in basis.iter().enumerate() {
                    if t.is_source(k) {
                        let j = basis.binary_search(&t.partner_unchecked(k)).map_err(|_| {
                            QaoaError::invalid(format!(
                                "hopping term maps basis label {k} outside the subspace"
                            ))
                        })?;
                        pairs.push((i, j));
                    } else if t.partner(k).is_some()
                        && basis.binary_search(&t.partner_unchecked(k)).is_err()
                    {
                        return Err(QaoaError::invalid(format!(
                            "hopping term maps basis label {k} outside the subspace"
                        )));
                    }
                }
                Ok(pairs)
            })
            .collect()
    }

    /// Ordered product of exact term exponentials on a subspace state, using
    /// pair lists from [`Self::subspace_pairs`] for the state's basis.
    pub fn product_apply_subspace(
        &self,
        state: &mut SubspaceState,
        pairs: &[Vec<(usize, usize)>],
        beta: f64,
    ) -> Result<()> {
        if pairs.len() != self.terms.len() {
            return Err(QaoaError::invalid("pair table does not match term list"));
        }
        let amps = state.amplitudes_mut();
        for (t, list) in self.terms.iter().zip(pairs) {
            let (c, s) = t.rotation(beta);
            for &(i, j) in list {
                let (v0, v1) = (amps[i], amps[j]);
                amps[i] = c * v0 + s * v1;
                amps[j] = s * v0 + c * v1;
            }
        }
        Ok(())
    }
}
