use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;

use super::{validation_enabled, QuantumState, Statevector};
use crate::error::{QaoaError, Result};

/// Amplitudes over an explicit feasible basis.
///
/// `basis` holds distinct labels in ascending order; amplitude `k` belongs to
/// the computational basis state `basis[k]`. The basis is shared between
/// clones.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceState {
    num_qubits: usize,
    basis: Arc<[u64]>,
    amps: Vec<C64>,
}

impl SubspaceState {
    pub fn new(num_qubits: usize, basis: Arc<[u64]>, amps: Vec<C64>) -> Result<Self> {
        if num_qubits > 64 {
            return Err(QaoaError::invalid("at most 64 qubits can be labelled"));
        }
        if basis.is_empty() {
            return Err(QaoaError::invalid("subspace basis is empty"));
        }
        if basis.len() != amps.len() {
            return Err(QaoaError::invalid(format!(
                "{} basis labels but {} amplitudes",
                basis.len(),
                amps.len()
            )));
        }
        if basis.windows(2).any(|w| w[0] >= w[1]) {
            return Err(QaoaError::invalid(
                "basis labels must be distinct and sorted ascending",
            ));
        }
        let last = *basis.last().unwrap();
        if num_qubits < 64 && last >> num_qubits != 0 {
            return Err(QaoaError::invalid(format!(
                "basis label {last} does not fit in {num_qubits} qubits"
            )));
        }
        Ok(Self {
            num_qubits,
            basis,
            amps,
        })
    }

    /// Equal-weight superposition of every basis label.
    pub fn uniform(num_qubits: usize, basis: Arc<[u64]>) -> Result<Self> {
        let a = C64::new((basis.len() as f64).sqrt().recip(), 0.0);
        let amps = vec![a; basis.len()];
        Self::new(num_qubits, basis, amps)
    }

    pub fn basis_state(num_qubits: usize, basis: Arc<[u64]>, label: u64) -> Result<Self> {
        let k = basis.binary_search(&label).map_err(|_| {
            QaoaError::invalid(format!("label {label} is not in the subspace basis"))
        })?;
        let mut amps = vec![C64::new(0.0, 0.0); basis.len()];
        amps[k] = C64::new(1.0, 0.0);
        Self::new(num_qubits, basis, amps)
    }

    pub fn basis(&self) -> &Arc<[u64]> {
        &self.basis
    }

    pub fn index_of(&self, label: u64) -> Option<usize> {
        self.basis.binary_search(&label).ok()
    }

    /// Embeds into the full `2^q` space with zeros off the basis.
    pub fn to_dense(&self) -> Result<Statevector> {
        let mut dense = Statevector::new_basis_state(self.num_qubits, 0)?;
        let amps = dense.amplitudes_mut();
        amps[0] = C64::new(0.0, 0.0);
        for (&label, &a) in self.basis.iter().zip(&self.amps) {
            amps[label as usize] = a;
        }
        Ok(dense)
    }

    /// Restricts a dense state to this state's basis (amplitudes copied,
    /// nothing renormalized).
    pub fn project_from(&self, dense: &Statevector) -> Result<Self> {
        if dense.num_qubits() != self.num_qubits {
            return Err(QaoaError::invalid("dense state width differs from subspace"));
        }
        let amps = self
            .basis
            .iter()
            .map(|&l| dense.amplitudes()[l as usize])
            .collect();
        Self::new(self.num_qubits, self.basis.clone(), amps)
    }
}

impl QuantumState for SubspaceState {
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
        self.basis[k]
    }
}

/// Eigendecomposition `H = V diag(lambda) V^T` of a real symmetric matrix,
/// kept so that `exp(-i beta H)` can be applied for many `beta`.
#[derive(Debug, Clone)]
pub struct SubspaceExponential {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl SubspaceExponential {
    pub fn new(hamiltonian: &DMatrix<f64>) -> Result<Self> {
        if !hamiltonian.is_square() {
            return Err(QaoaError::invalid("hamiltonian must be square"));
        }
        let n = hamiltonian.nrows();
        for i in 0..n {
            for j in i + 1..n {
                if (hamiltonian[(i, j)] - hamiltonian[(j, i)]).abs() > 1e-10 {
                    return Err(QaoaError::invalid(format!(
                        "hamiltonian is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let eig = SymmetricEigen::new(hamiltonian.clone());
        Ok(Self {
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// `amps <- exp(-i beta H) amps`.
    pub fn apply_to(&self, amps: &mut [C64], beta: f64) -> Result<()> {
        if amps.len() != self.dimension() {
            return Err(QaoaError::invalid(format!(
                "state has {} amplitudes, hamiltonian is {}x{}",
                amps.len(),
                self.dimension(),
                self.dimension()
            )));
        }
        if beta == 0.0 {
            return Ok(());
        }
        let re = DVector::from_iterator(amps.len(), amps.iter().map(|a| a.re));
        let im = DVector::from_iterator(amps.len(), amps.iter().map(|a| a.im));
        let v = &self.eigenvectors;
        let mut c_re = v.tr_mul(&re);
        let mut c_im = v.tr_mul(&im);
        for ((r, i), &lambda) in c_re.iter_mut().zip(c_im.iter_mut()).zip(&self.eigenvalues) {
            let rotated = C64::new(*r, *i) * C64::from_polar(1.0, -beta * lambda);
            *r = rotated.re;
            *i = rotated.im;
        }
        let out_re = v * c_re;
        let out_im = v * c_im;
        for ((a, r), i) in amps.iter_mut().zip(out_re.iter()).zip(out_im.iter()) {
            *a = C64::new(*r, *i);
        }
        Ok(())
    }

    pub fn apply(&self, state: &mut SubspaceState, beta: f64) -> Result<()> {
        self.apply_to(state.amplitudes_mut(), beta)?;
        if validation_enabled() {
            let n = state.norm_sqr();
            if (n - 1.0).abs() > 1e-9 {
                return Err(QaoaError::invalid(format!(
                    "subspace exponential lost normalization: {n}"
                )));
            }
        }
        Ok(())
    }
}

/// One-shot `state <- exp(-i beta H) state` for a symmetric matrix over the
/// state's basis.
pub fn subspace_exponential_apply(
    state: &mut SubspaceState,
    hamiltonian: &DMatrix<f64>,
    beta: f64,
) -> Result<()> {
    SubspaceExponential::new(hamiltonian)?.apply_to(state.amplitudes_mut(), beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(v: &[u64]) -> Arc<[u64]> {
        v.to_vec().into()
    }

    #[test]
    fn constructor_enforces_sorted_distinct_basis() {
        let amps = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        assert!(SubspaceState::new(2, basis(&[2, 1]), amps.clone()).is_err());
        assert!(SubspaceState::new(2, basis(&[1, 1]), amps.clone()).is_err());
        assert!(SubspaceState::new(2, basis(&[1, 4]), amps.clone()).is_err());
        assert!(SubspaceState::new(2, basis(&[1, 2]), amps).is_ok());
    }

    #[test]
    fn zero_beta_is_identity() {
        let mut s = SubspaceState::uniform(3, basis(&[1, 2, 4])).unwrap();
        let before = s.clone();
        let h = DMatrix::from_row_slice(3, 3, &[0.0, 2.0, 0.0, 2.0, 0.0, 2.0, 0.0, 2.0, 0.0]);
        subspace_exponential_apply(&mut s, &h, 0.0).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn asymmetric_matrix_is_rejected() {
        let mut s = SubspaceState::uniform(2, basis(&[1, 2])).unwrap();
        let h = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.5, 0.0]);
        assert!(matches!(
            subspace_exponential_apply(&mut s, &h, 0.3),
            Err(QaoaError::InvalidArgument(_))
        ));
    }

    #[test]
    fn embedding_round_trip() {
        let s = SubspaceState::basis_state(3, basis(&[3, 5, 6]), 5).unwrap();
        let d = s.to_dense().unwrap();
        assert_eq!(d.amplitudes()[5], C64::new(1.0, 0.0));
        assert_eq!(s.project_from(&d).unwrap(), s);
        assert!(SubspaceState::basis_state(3, basis(&[3, 5, 6]), 4).is_err());
    }
}
