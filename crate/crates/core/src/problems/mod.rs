//! Problem definitions: cost functions, feasibility predicates and feasible
//! basis enumeration for MaxCut, MaxBisection and the TSP.

mod enumerate;
mod graph;
mod tsp;

use rayon::prelude::*;

use crate::error::{QaoaError, Result};
use crate::state::{DiagonalObservable, MAX_DENSE_QUBITS};

pub use enumerate::{binomial, fixed_weight_labels, next_permutation, Permutations};
pub use graph::{maxbis_feasible, maxcut_cost, Edge, Graph, MaxBisection, MaxCut};
pub use tsp::{tsp_cost, tsp_decode, tsp_encode, tsp_phase_diagonal, Tsp, TspInstance};

/// Largest feasible set materialized or enumerated.
pub const MAX_FEASIBLE: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Maximize,
    Minimize,
}

impl Sense {
    /// True when `a` is strictly better than `b`.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Maximize => a > b,
            Sense::Minimize => a < b,
        }
    }

    /// `+1` for maximization, `-1` for minimization.
    pub fn sign(self) -> f64 {
        match self {
            Sense::Maximize => 1.0,
            Sense::Minimize => -1.0,
        }
    }
}

/// An optimization instance over bitstring labels of a fixed register.
///
/// Labels use the register convention of [`crate::state`]: qubit `j` is
/// bit `j`.
pub trait Problem: Send + Sync {
    fn num_qubits(&self) -> usize;

    fn sense(&self) -> Sense;

    /// Objective value of a feasible label.
    fn cost(&self, z: u64) -> Result<f64>;

    fn is_feasible(&self, z: u64) -> bool;

    /// Size of the feasible set, saturating at `usize::MAX`.
    fn feasible_count(&self) -> usize;

    /// Visits every feasible label exactly once, in an unspecified order.
    fn for_each_feasible(&self, f: &mut dyn FnMut(u64));

    /// Whether some label of the register is infeasible.
    fn is_constrained(&self) -> bool {
        self.num_qubits() >= usize::BITS as usize
            || self.feasible_count() != 1usize << self.num_qubits()
    }

    /// Feasible labels in ascending order.
    fn feasible_basis(&self) -> Result<Vec<u64>> {
        let count = self.feasible_count();
        if count > MAX_FEASIBLE {
            return Err(QaoaError::resource(format!(
                "feasible set has {count} elements, limit is {MAX_FEASIBLE}"
            )));
        }
        let mut basis = Vec::with_capacity(count);
        self.for_each_feasible(&mut |z| basis.push(z));
        basis.sort_unstable();
        Ok(basis)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    MaxCut,
    MaxBisection,
    Tsp,
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProblemKind::MaxCut => "maxcut",
            ProblemKind::MaxBisection => "maxbis",
            ProblemKind::Tsp => "tsp",
        })
    }
}

/// Closed set of concrete problems understood by the ansatz builder.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemInstance {
    MaxCut(MaxCut),
    MaxBisection(MaxBisection),
    Tsp(Tsp),
}

impl ProblemInstance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemInstance::MaxCut(_) => ProblemKind::MaxCut,
            ProblemInstance::MaxBisection(_) => ProblemKind::MaxBisection,
            ProblemInstance::Tsp(_) => ProblemKind::Tsp,
        }
    }

    fn inner(&self) -> &dyn Problem {
        match self {
            ProblemInstance::MaxCut(p) => p,
            ProblemInstance::MaxBisection(p) => p,
            ProblemInstance::Tsp(p) => p,
        }
    }

    /// Graph of a cut problem.
    pub fn graph(&self) -> Option<&Graph> {
        match self {
            ProblemInstance::MaxCut(p) => Some(p.graph()),
            ProblemInstance::MaxBisection(p) => Some(p.graph()),
            ProblemInstance::Tsp(_) => None,
        }
    }

    /// Size of the underlying instance: vertices or cities.
    pub fn size(&self) -> usize {
        match self {
            ProblemInstance::MaxCut(p) => p.graph().num_vertices(),
            ProblemInstance::MaxBisection(p) => p.graph().num_vertices(),
            ProblemInstance::Tsp(p) => p.instance().num_cities(),
        }
    }

    /// Whether every feasible cost is an integer, which makes the diagonal
    /// phase `2 pi`-periodic in gamma.
    pub fn has_integer_costs(&self) -> bool {
        let integral = |w: f64| w.fract() == 0.0;
        match self {
            ProblemInstance::MaxCut(p) => p.graph().edges().iter().all(|e| integral(e.w)),
            ProblemInstance::MaxBisection(p) => {
                p.graph().edges().iter().all(|e| integral(e.w))
            }
            ProblemInstance::Tsp(p) => p.instance().entries().iter().all(|&d| integral(d)),
        }
    }
}

impl Problem for ProblemInstance {
    fn num_qubits(&self) -> usize {
        self.inner().num_qubits()
    }
    fn sense(&self) -> Sense {
        self.inner().sense()
    }
    fn cost(&self, z: u64) -> Result<f64> {
        self.inner().cost(z)
    }
    fn is_feasible(&self, z: u64) -> bool {
        self.inner().is_feasible(z)
    }
    fn feasible_count(&self) -> usize {
        self.inner().feasible_count()
    }
    fn for_each_feasible(&self, f: &mut dyn FnMut(u64)) {
        self.inner().for_each_feasible(f)
    }
    fn is_constrained(&self) -> bool {
        self.inner().is_constrained()
    }
    fn feasible_basis(&self) -> Result<Vec<u64>> {
        self.inner().feasible_basis()
    }
}

impl From<MaxCut> for ProblemInstance {
    fn from(p: MaxCut) -> Self {
        ProblemInstance::MaxCut(p)
    }
}

impl From<MaxBisection> for ProblemInstance {
    fn from(p: MaxBisection) -> Self {
        ProblemInstance::MaxBisection(p)
    }
}

impl From<Tsp> for ProblemInstance {
    fn from(p: Tsp) -> Self {
        ProblemInstance::Tsp(p)
    }
}

/// Which amplitudes a diagonal is laid out over.
#[derive(Debug, Clone, Copy)]
pub enum Representation<'a> {
    /// All `2^q` labels in index order.
    Dense,
    /// The given sorted feasible labels.
    Subspace(&'a [u64]),
}

/// `H_C` as a diagonal: entry `k` is the cost of the label at `k`.
///
/// In dense layout, infeasible labels of a constrained problem get the
/// sentinel `min feasible - 1` (maximization) or `max feasible + 1`
/// (minimization).
pub fn cost_diagonal(
    problem: &dyn Problem,
    representation: Representation<'_>,
) -> Result<DiagonalObservable> {
    match representation {
        Representation::Subspace(basis) => {
            let values = basis
                .par_iter()
                .map(|&z| problem.cost(z))
                .collect::<Result<Vec<_>>>()?;
            DiagonalObservable::new(values)
        }
        Representation::Dense => {
            let q = problem.num_qubits();
            if q > MAX_DENSE_QUBITS {
                return Err(QaoaError::resource(format!(
                    "{q} qubits exceeds the dense limit of {MAX_DENSE_QUBITS}"
                )));
            }
            let values: Vec<Option<f64>> = (0..1u64 << q)
                .into_par_iter()
                .map(|z| {
                    if problem.is_feasible(z) {
                        problem.cost(z).map(Some)
                    } else {
                        Ok(None)
                    }
                })
                .collect::<Result<_>>()?;
            let feasible = values.iter().flatten();
            let sentinel = match problem.sense() {
                Sense::Maximize => feasible.copied().fold(f64::INFINITY, f64::min) - 1.0,
                Sense::Minimize => feasible.copied().fold(f64::NEG_INFINITY, f64::max) + 1.0,
            };
            DiagonalObservable::new(values.into_iter().map(|v| v.unwrap_or(sentinel)).collect())
        }
    }
}
