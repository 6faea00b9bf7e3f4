//! Simulation and classical optimization of quantum alternating operator
//! ansatz (QAOA) instances for MaxCut, MaxBisection and the TSP.
//!
//! The crate is layered bottom-up:
//!
//! * [`state`]: dense and feasible-subspace statevectors with in-place gate
//!   kernels, diagonal observables and sampling.
//! * [`problems`]: cost functions, feasibility predicates and encodings.
//! * [`ansatz`]: initial states, phase separators, mixers and the alternating
//!   `p`-layer circuit.
//! * [`vqa`]: derivative-free angle optimization (grid and Nelder-Mead).
//! * [`oracle`]: brute-force ground truth and the fixed instance catalog.

pub mod ansatz;
pub mod bits;
pub mod error;
pub mod gates;
pub mod oracle;
pub mod problems;
pub mod state;
pub mod vqa;

pub use ansatz::{Angles, Ansatz, AnsatzSpec, InitialState, MixerKind, PhaseKind, SimulationMode, State};
pub use bits::Bitstring;
pub use num_complex::Complex64 as C64;
pub use error::{QaoaError, Result};
pub use oracle::{OracleReport, ApproximationRatio};
pub use problems::{Graph, MaxBisection, MaxCut, Problem, ProblemInstance, ProblemKind, Sense, Tsp, TspInstance};
pub use state::{DiagonalObservable, QuantumState, Statevector, SubspaceState};
pub use vqa::{OptimizerConfig, OptimizerMethod, EvaluationMode, RunResult};
