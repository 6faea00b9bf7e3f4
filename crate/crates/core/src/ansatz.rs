//! The alternating operator ansatz: initial state, `p` rounds of phase
//! separator and mixer, and expectation of the problem cost.
//!
//! [`Ansatz::new`] validates an [`AnsatzSpec`] against a problem and does all
//! angle-independent work once (feasible basis, diagonals, mixer
//! eigendecomposition), so that [`Ansatz::run`] and [`Ansatz::expectation`]
//! only pay for the `2p` unitaries. Every evaluation allocates its own state,
//! so one `Ansatz` can be shared across threads.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{QaoaError, Result};
use crate::problems::{
    cost_diagonal, fixed_weight_labels, tsp_encode, Permutations, Problem, ProblemInstance,
    ProblemKind, Representation,
};
use crate::state::{
    self, apply_diagonal_phase, expectation_diagonal, DiagonalObservable, HopTerm,
    HoppingHamiltonian, QuantumState, Statevector, SubspaceExponential, SubspaceState,
    MAX_DENSE_QUBITS,
};

/// Largest basis for which a mixer exponential is eigendecomposed.
pub const MAX_EXACT_SUBSPACE: usize = 5040;

/// Largest feasible set accepted by the transition-condition check.
pub const MAX_TRANSITION_BASIS: usize = 10_000;

/// Amplitude threshold (squared) for "reachable" in the transition check.
const TRANSITION_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialState {
    /// `|+>^q`, every label with equal amplitude.
    Plus,
    /// Uniform superposition of the weight-`k` labels.
    Dicke(usize),
    /// One-hot encoding of a single tour.
    FixedPermutation(Vec<usize>),
    /// Uniform superposition of all one-hot tour encodings.
    PermutationSuperposition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MixerKind {
    /// `prod_j exp(-i beta X_j)`.
    TransverseField,
    /// `exp(-i beta sum_ring (XX + YY))`, applied exactly.
    XyRing,
    /// Even/odd bond layers of two-qubit XY gates; agrees with `XyRing` to
    /// first order in beta.
    XyRingProduct,
    /// `exp(-i beta sum_{i<j} (XX + YY))`, applied exactly.
    XyClique,
    /// `exp(-i beta |S><S|)` with `|S>` the uniform superposition of
    /// feasible labels.
    Grover,
    /// `exp(-i beta sum_i H_PS(i))`, applied exactly.
    TspSimultaneousSwap,
    /// Ordered product of `exp(-i beta H_PS(i,u,v))` over `i`, then `u < v`.
    TspPartialSwapProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseKind {
    /// `exp(-i gamma C)` with `C` the problem cost.
    CostDiagonal,
    /// `prod_E R_ZZ(2 gamma w)`, i.e. `exp(-i gamma sum_E w Z_u Z_v)`.
    ZzGates,
    /// `exp(-i gamma H_TSP)` whose eigenvalue on a tour is
    /// `4 C + (n - 4) sum d`.
    TspGDiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimulationMode {
    Dense,
    Subspace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzSpec {
    pub initial: InitialState,
    pub mixer: MixerKind,
    pub phase: PhaseKind,
    pub depth: usize,
    pub mode: SimulationMode,
}

impl AnsatzSpec {
    /// Plus state, cost-diagonal separator, transverse-field mixer.
    pub fn farhi(depth: usize) -> Self {
        Self {
            initial: InitialState::Plus,
            mixer: MixerKind::TransverseField,
            phase: PhaseKind::CostDiagonal,
            depth,
            mode: SimulationMode::Dense,
        }
    }

    /// The default construction for each problem family.
    pub fn designated(problem: &ProblemInstance, depth: usize) -> Self {
        match problem {
            ProblemInstance::MaxCut(_) => Self::farhi(depth),
            ProblemInstance::MaxBisection(p) => Self {
                initial: InitialState::Dicke(p.part_size()),
                mixer: MixerKind::XyRing,
                phase: PhaseKind::CostDiagonal,
                depth,
                mode: SimulationMode::Subspace,
            },
            ProblemInstance::Tsp(_) => Self {
                initial: InitialState::PermutationSuperposition,
                mixer: MixerKind::TspSimultaneousSwap,
                phase: PhaseKind::TspGDiagonal,
                depth,
                mode: SimulationMode::Subspace,
            },
        }
    }

    pub fn with_depth(&self, depth: usize) -> Self {
        Self {
            depth,
            ..self.clone()
        }
    }

    pub fn with_mode(&self, mode: SimulationMode) -> Self {
        Self {
            mode,
            ..self.clone()
        }
    }

    /// Checks the pairing rules between this spec and `problem`.
    pub fn validate(&self, problem: &ProblemInstance) -> Result<()> {
        use MixerKind::*;
        use ProblemKind::*;
        let kind = problem.kind();
        if self.depth == 0 {
            return Err(QaoaError::config("depth p must be at least 1"));
        }
        match (&self.initial, kind) {
            (InitialState::Plus, MaxCut) => {}
            (InitialState::Dicke(k), MaxBisection) => {
                let want = problem.size() / 2;
                if *k != want {
                    return Err(QaoaError::config(format!(
                        "bisection of {} vertices needs dicke({want}), got dicke({k})",
                        problem.size()
                    )));
                }
            }
            (InitialState::FixedPermutation(sigma), Tsp) => {
                if sigma.len() != problem.size() {
                    return Err(QaoaError::config(format!(
                        "initial tour has {} cities, instance has {}",
                        sigma.len(),
                        problem.size()
                    )));
                }
                tsp_encode(sigma).map_err(|e| QaoaError::config(e.to_string()))?;
            }
            (InitialState::PermutationSuperposition, Tsp) => {}
            (init, kind) => {
                return Err(QaoaError::config(format!(
                    "initial state {init} does not prepare feasible states of {kind}"
                )))
            }
        }
        let mixer_ok = match self.mixer {
            TransverseField => kind == MaxCut,
            XyRing | XyRingProduct | XyClique => kind == MaxBisection,
            Grover => true,
            TspSimultaneousSwap | TspPartialSwapProduct => kind == Tsp,
        };
        if !mixer_ok {
            return Err(QaoaError::config(format!(
                "mixer {} does not preserve the feasible set of {kind}",
                self.mixer
            )));
        }
        if self.mixer == TransverseField && self.mode == SimulationMode::Subspace {
            return Err(QaoaError::config(
                "the transverse-field mixer is only simulated in dense mode",
            ));
        }
        let phase_ok = match self.phase {
            PhaseKind::CostDiagonal => true,
            PhaseKind::ZzGates => matches!(kind, MaxCut | MaxBisection),
            PhaseKind::TspGDiagonal => kind == Tsp,
        };
        if !phase_ok {
            return Err(QaoaError::config(format!(
                "phase separator {} is not defined for {kind}",
                self.phase
            )));
        }
        if self.mode == SimulationMode::Dense && problem.num_qubits() > MAX_DENSE_QUBITS {
            return Err(QaoaError::resource(format!(
                "{} qubits exceeds the dense limit of {MAX_DENSE_QUBITS}",
                problem.num_qubits()
            )));
        }
        Ok(())
    }
}

/// Angles `gamma_1..gamma_p` and `beta_1..beta_p` in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct Angles {
    pub gamma: Vec<f64>,
    pub beta: Vec<f64>,
}

impl Angles {
    pub fn new(gamma: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        if gamma.len() != beta.len() {
            return Err(QaoaError::invalid(format!(
                "{} gammas but {} betas",
                gamma.len(),
                beta.len()
            )));
        }
        if gamma.iter().chain(&beta).any(|a| !a.is_finite()) {
            return Err(QaoaError::invalid("angles must be finite"));
        }
        Ok(Self { gamma, beta })
    }

    pub fn zeros(depth: usize) -> Self {
        Self {
            gamma: vec![0.0; depth],
            beta: vec![0.0; depth],
        }
    }

    /// Splits `[gamma_1..gamma_p, beta_1..beta_p]`.
    pub fn from_flat(x: &[f64]) -> Result<Self> {
        if !x.len().is_multiple_of(2) {
            return Err(QaoaError::invalid("flat angle vector must have even length"));
        }
        let (g, b) = x.split_at(x.len() / 2);
        Self::new(g.to_vec(), b.to_vec())
    }

    pub fn to_flat(&self) -> Vec<f64> {
        self.gamma.iter().chain(&self.beta).copied().collect()
    }

    pub fn depth(&self) -> usize {
        self.gamma.len()
    }
}

/// A state in whichever representation the ansatz simulates.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Dense(Statevector),
    Subspace(SubspaceState),
}

impl State {
    pub fn mode(&self) -> SimulationMode {
        match self {
            State::Dense(_) => SimulationMode::Dense,
            State::Subspace(_) => SimulationMode::Subspace,
        }
    }

    /// Dense form; subspace states are embedded with zeros off the basis.
    pub fn to_dense(&self) -> Result<Statevector> {
        match self {
            State::Dense(s) => Ok(s.clone()),
            State::Subspace(s) => s.to_dense(),
        }
    }

    /// Amplitude of basis label `z` (zero when `z` is outside a subspace).
    pub fn amplitude_of(&self, z: u64) -> C64 {
        match self {
            State::Dense(s) => s
                .amplitudes()
                .get(z as usize)
                .copied()
                .unwrap_or_default(),
            State::Subspace(s) => s
                .index_of(z)
                .map(|k| s.amplitudes()[k])
                .unwrap_or_default(),
        }
    }
}

impl QuantumState for State {
    fn num_qubits(&self) -> usize {
        match self {
            State::Dense(s) => s.num_qubits(),
            State::Subspace(s) => s.num_qubits(),
        }
    }

    fn amplitudes(&self) -> &[C64] {
        match self {
            State::Dense(s) => s.amplitudes(),
            State::Subspace(s) => s.amplitudes(),
        }
    }

    fn amplitudes_mut(&mut self) -> &mut [C64] {
        match self {
            State::Dense(s) => s.amplitudes_mut(),
            State::Subspace(s) => s.amplitudes_mut(),
        }
    }

    fn label(&self, k: usize) -> u64 {
        match self {
            State::Dense(s) => s.label(k),
            State::Subspace(s) => s.label(k),
        }
    }
}

#[derive(Debug, Clone)]
enum PhaseOp {
    Diagonal(DiagonalObservable),
    /// `(u, v, w)` per edge, applied as `R_ZZ(2 gamma w)` gates.
    ZzGates(Vec<(usize, usize, f64)>),
}

#[derive(Debug, Clone)]
enum MixerOp {
    Transverse,
    /// Exact exponential of a hopping sum on the full register.
    DenseExact(HoppingHamiltonian),
    /// Exact exponential restricted to the feasible basis.
    SubspaceExact(SubspaceExponential),
    /// Ordered product of exact term exponentials.
    Product {
        hamiltonian: HoppingHamiltonian,
        pairs: Option<Vec<Vec<(usize, usize)>>>,
    },
    /// Rank-1 phase on the uniform feasible superposition.
    Grover(State),
}

/// A validated ansatz with all angle-independent data precomputed.
#[derive(Debug, Clone)]
pub struct Ansatz {
    spec: AnsatzSpec,
    problem: ProblemInstance,
    basis: Option<Arc<[u64]>>,
    initial: State,
    cost: DiagonalObservable,
    phase: PhaseOp,
    mixer: MixerOp,
}

fn mixer_hamiltonian(kind: MixerKind, problem: &ProblemInstance) -> Result<HoppingHamiltonian> {
    let n = problem.size();
    match kind {
        MixerKind::XyRing => HoppingHamiltonian::xy_ring(n),
        MixerKind::XyRingProduct => xy_ring_layers(n),
        MixerKind::XyClique => HoppingHamiltonian::xy_clique(n),
        MixerKind::TspSimultaneousSwap | MixerKind::TspPartialSwapProduct => {
            HoppingHamiltonian::tsp_simultaneous_swap(n)
        }
        MixerKind::TransverseField | MixerKind::Grover => {
            Err(QaoaError::config(format!("mixer {kind} is not a hopping sum")))
        }
    }
}

/// Ring bonds ordered as even layer, odd layer, then the closing bond when
/// `n` is odd.
fn xy_ring_layers(n: usize) -> Result<HoppingHamiltonian> {
    let ring = HoppingHamiltonian::xy_ring(n)?;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    let mut closing = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        if n == 2 && i == 1 {
            break;
        }
        let term = HopTerm::xy(i.min(j), i.max(j));
        if j == 0 && n % 2 == 1 {
            closing.push(term);
        } else if i % 2 == 0 {
            even.push(term);
        } else {
            odd.push(term);
        }
    }
    even.extend(odd);
    even.extend(closing);
    debug_assert_eq!(even.len(), ring.terms().len());
    HoppingHamiltonian::new(n, even)
}

fn prepare(spec: &AnsatzSpec, problem: &ProblemInstance, basis: Option<&Arc<[u64]>>) -> Result<State> {
    let q = problem.num_qubits();
    match (spec.mode, basis) {
        (SimulationMode::Subspace, Some(basis)) => {
            let s = match &spec.initial {
                InitialState::FixedPermutation(sigma) => {
                    SubspaceState::basis_state(q, basis.clone(), tsp_encode(sigma)?)?
                }
                // the feasible basis is exactly the support of the remaining states
                _ => SubspaceState::uniform(q, basis.clone())?,
            };
            Ok(State::Subspace(s))
        }
        _ => {
            let s = match &spec.initial {
                InitialState::Plus => Statevector::uniform(q)?,
                InitialState::FixedPermutation(sigma) => {
                    Statevector::new_basis_state(q, tsp_encode(sigma)?)?
                }
                InitialState::Dicke(k) => {
                    let labels: Vec<u64> = fixed_weight_labels(q, *k).collect();
                    uniform_over(q, &labels)?
                }
                InitialState::PermutationSuperposition => {
                    let n = problem.size();
                    let labels = Permutations::new(n)
                        .map(|sigma| tsp_encode(&sigma))
                        .collect::<Result<Vec<_>>>()?;
                    uniform_over(q, &labels)?
                }
            };
            Ok(State::Dense(s))
        }
    }
}

fn feasible_superposition(problem: &ProblemInstance, basis: Option<&Arc<[u64]>>) -> Result<State> {
    let q = problem.num_qubits();
    Ok(match basis {
        Some(b) => State::Subspace(SubspaceState::uniform(q, b.clone())?),
        None if !problem.is_constrained() => State::Dense(Statevector::uniform(q)?),
        None => State::Dense(uniform_over(q, &problem.feasible_basis()?)?),
    })
}

fn uniform_over(q: usize, labels: &[u64]) -> Result<Statevector> {
    let mut s = Statevector::new_basis_state(q, 0)?;
    let a = C64::new((labels.len() as f64).sqrt().recip(), 0.0);
    let amps = s.amplitudes_mut();
    amps[0] = C64::new(0.0, 0.0);
    for &z in labels {
        amps[z as usize] = a;
    }
    Ok(s)
}

fn representation(basis: Option<&Arc<[u64]>>) -> Representation<'_> {
    match basis {
        Some(b) => Representation::Subspace(b),
        None => Representation::Dense,
    }
}

fn build_phase(
    kind: PhaseKind,
    problem: &ProblemInstance,
    basis: Option<&Arc<[u64]>>,
) -> Result<PhaseOp> {
    Ok(match kind {
        PhaseKind::CostDiagonal => PhaseOp::Diagonal(cost_diagonal(problem, representation(basis))?),
        PhaseKind::ZzGates => {
            let graph = problem
                .graph()
                .ok_or_else(|| QaoaError::config("zz separator needs a graph problem"))?;
            match basis {
                None => PhaseOp::ZzGates(graph.edges().iter().map(|e| (e.u, e.v, e.w)).collect()),
                Some(b) => PhaseOp::Diagonal(DiagonalObservable::new(
                    b.iter().map(|&z| graph.zz_eigenvalue(z)).collect(),
                )?),
            }
        }
        PhaseKind::TspGDiagonal => {
            let ProblemInstance::Tsp(tsp) = problem else {
                return Err(QaoaError::config("tsp separator needs a TSP instance"));
            };
            let values: Vec<f64> = match basis {
                Some(b) => b.par_iter().map(|&z| tsp.phase_eigenvalue(z)).collect(),
                None => (0..1u64 << problem.num_qubits())
                    .into_par_iter()
                    .map(|z| tsp.phase_eigenvalue(z))
                    .collect(),
            };
            PhaseOp::Diagonal(DiagonalObservable::new(values)?)
        }
    })
}

fn build_mixer(
    kind: MixerKind,
    problem: &ProblemInstance,
    basis: Option<&Arc<[u64]>>,
) -> Result<MixerOp> {
    Ok(match kind {
        MixerKind::TransverseField => MixerOp::Transverse,
        MixerKind::Grover => MixerOp::Grover(feasible_superposition(problem, basis)?),
        MixerKind::XyRing | MixerKind::XyClique | MixerKind::TspSimultaneousSwap => {
            let h = mixer_hamiltonian(kind, problem)?;
            match basis {
                None => MixerOp::DenseExact(h),
                Some(b) => {
                    if b.len() > MAX_EXACT_SUBSPACE {
                        return Err(QaoaError::resource(format!(
                            "exact mixer on a {}-state basis exceeds the limit of {MAX_EXACT_SUBSPACE}",
                            b.len()
                        )));
                    }
                    MixerOp::SubspaceExact(SubspaceExponential::new(&h.subspace_matrix(b)?)?)
                }
            }
        }
        MixerKind::XyRingProduct | MixerKind::TspPartialSwapProduct => {
            let hamiltonian = mixer_hamiltonian(kind, problem)?;
            let pairs = basis.map(|b| hamiltonian.subspace_pairs(b)).transpose()?;
            MixerOp::Product { hamiltonian, pairs }
        }
    })
}

impl Ansatz {
    pub fn new(spec: &AnsatzSpec, problem: &ProblemInstance) -> Result<Self> {
        spec.validate(problem)?;
        let basis: Option<Arc<[u64]>> = match spec.mode {
            SimulationMode::Subspace => Some(problem.feasible_basis()?.into()),
            SimulationMode::Dense => None,
        };
        let initial = prepare(spec, problem, basis.as_ref())?;
        let cost = cost_diagonal(problem, representation(basis.as_ref()))?;
        let phase = match (spec.phase, &basis) {
            // reuse the cost diagonal rather than recomputing it
            (PhaseKind::CostDiagonal, _) => PhaseOp::Diagonal(cost.clone()),
            (kind, b) => build_phase(kind, problem, b.as_ref())?,
        };
        let mixer = build_mixer(spec.mixer, problem, basis.as_ref())?;
        Ok(Self {
            spec: spec.clone(),
            problem: problem.clone(),
            basis,
            initial,
            cost,
            phase,
            mixer,
        })
    }

    pub fn spec(&self) -> &AnsatzSpec {
        &self.spec
    }

    pub fn problem(&self) -> &ProblemInstance {
        &self.problem
    }

    /// Sorted feasible basis in subspace mode.
    pub fn basis(&self) -> Option<&Arc<[u64]>> {
        self.basis.as_ref()
    }

    pub fn initial_state(&self) -> &State {
        &self.initial
    }

    /// Problem cost laid out over this ansatz's representation.
    pub fn cost_diagonal(&self) -> &DiagonalObservable {
        &self.cost
    }

    fn check_state(&self, state: &State) -> Result<()> {
        let ok = match (state, &self.initial) {
            (State::Dense(s), State::Dense(i)) => s.num_qubits() == i.num_qubits(),
            (State::Subspace(s), State::Subspace(i)) => s.basis() == i.basis(),
            _ => false,
        };
        if !ok {
            return Err(QaoaError::config(
                "state representation does not match the ansatz",
            ));
        }
        Ok(())
    }

    pub fn apply_phase_separator(&self, state: &mut State, gamma: f64) -> Result<()> {
        self.check_state(state)?;
        match (&self.phase, state) {
            (PhaseOp::Diagonal(d), s) => apply_diagonal_phase(s, gamma, d),
            (PhaseOp::ZzGates(edges), State::Dense(s)) => {
                for &(u, v, w) in edges {
                    s.apply_rzz(u, v, 2.0 * gamma * w)?;
                }
                Ok(())
            }
            (PhaseOp::ZzGates(_), State::Subspace(_)) => {
                Err(QaoaError::config("zz gates are applied to dense states only"))
            }
        }
    }

    pub fn apply_mixer(&self, state: &mut State, beta: f64) -> Result<()> {
        self.check_state(state)?;
        match (&self.mixer, state) {
            (MixerOp::Transverse, State::Dense(s)) => s.apply_transverse_field(beta),
            (MixerOp::DenseExact(h), State::Dense(s)) => h.exp_apply_dense(s, beta),
            (MixerOp::SubspaceExact(e), State::Subspace(s)) => e.apply(s, beta),
            (MixerOp::Product { hamiltonian, .. }, State::Dense(s)) => {
                hamiltonian.product_apply_dense(s, beta)
            }
            (
                MixerOp::Product {
                    hamiltonian,
                    pairs: Some(pairs),
                },
                State::Subspace(s),
            ) => hamiltonian.product_apply_subspace(s, pairs, beta),
            (MixerOp::Grover(State::Dense(t)), State::Dense(s)) => {
                state::apply_grover_mixer(s, beta, t)
            }
            (MixerOp::Grover(State::Subspace(t)), State::Subspace(s)) => {
                state::apply_grover_mixer(s, beta, t)
            }
            _ => Err(QaoaError::config("mixer cannot act on this representation")),
        }
    }

    /// Initial state followed by `p` rounds of separator then mixer.
    pub fn run(&self, angles: &Angles) -> Result<State> {
        if angles.depth() != self.spec.depth {
            return Err(QaoaError::invalid(format!(
                "ansatz depth is {} but {} angle pairs were given",
                self.spec.depth,
                angles.depth()
            )));
        }
        let mut state = self.initial.clone();
        for (&gamma, &beta) in angles.gamma.iter().zip(&angles.beta) {
            self.apply_phase_separator(&mut state, gamma)?;
            self.apply_mixer(&mut state, beta)?;
        }
        if state::validation_enabled() {
            let n = state.norm_sqr();
            if (n - 1.0).abs() > 1e-9 {
                return Err(QaoaError::invalid(format!("ansatz output norm drifted to {n}")));
            }
        }
        Ok(state)
    }

    /// `<psi(angles)| C |psi(angles)>`, computed exactly.
    pub fn expectation(&self, angles: &Angles) -> Result<f64> {
        self.expectation_of(&self.run(angles)?)
    }

    pub fn expectation_of(&self, state: &State) -> Result<f64> {
        expectation_diagonal(state, &self.cost)
    }

    /// Probability mass on infeasible labels (always zero for subspace
    /// states by construction).
    pub fn leakage(&self, state: &State) -> f64 {
        match state {
            State::Dense(s) => s.leakage(|z| self.problem.is_feasible(z)),
            State::Subspace(_) => 0.0,
        }
    }

    /// Whether every ordered pair of feasible labels `(x, y)` has
    /// `|<x| U_M(beta)^r |y>|^2 > 1e-12` for some `1 <= r <= r_max`.
    pub fn transition_condition(&self, beta: f64, r_max: usize) -> Result<bool> {
        if r_max == 0 {
            return Err(QaoaError::invalid("r_max must be at least 1"));
        }
        let count = self.problem.feasible_count();
        if count > MAX_TRANSITION_BASIS {
            return Err(QaoaError::resource(format!(
                "transition check over {count} feasible states exceeds {MAX_TRANSITION_BASIS}"
            )));
        }
        let feasible = self.problem.feasible_basis()?;
        let q = self.problem.num_qubits();
        let columns: Vec<bool> = feasible
            .par_iter()
            .map(|&y| -> Result<bool> {
                let mut state = match &self.initial {
                    State::Dense(_) => State::Dense(Statevector::new_basis_state(q, y)?),
                    State::Subspace(s) => {
                        State::Subspace(SubspaceState::basis_state(q, s.basis().clone(), y)?)
                    }
                };
                let mut reached = vec![false; feasible.len()];
                for _ in 0..r_max {
                    self.apply_mixer(&mut state, beta)?;
                    for (flag, &x) in reached.iter_mut().zip(&feasible) {
                        if state.amplitude_of(x).norm_sqr() > TRANSITION_EPS {
                            *flag = true;
                        }
                    }
                    if reached.iter().all(|&r| r) {
                        return Ok(true);
                    }
                }
                Ok(false)
            })
            .collect::<Result<_>>()?;
        Ok(columns.into_iter().all(|c| c))
    }
}

/// Initial state of `spec` for `problem`.
pub fn prepare_initial(spec: &AnsatzSpec, problem: &ProblemInstance) -> Result<State> {
    Ok(Ansatz::new(spec, problem)?.initial)
}

/// Applies one phase separator of the given kind. The representation is
/// taken from `state`; subspace states must carry the problem's feasible
/// basis.
pub fn apply_phase_separator(
    state: &mut State,
    problem: &ProblemInstance,
    kind: PhaseKind,
    gamma: f64,
) -> Result<()> {
    let basis = match &*state {
        State::Dense(_) => None,
        State::Subspace(s) => Some(s.basis().clone()),
    };
    match build_phase(kind, problem, basis.as_ref())? {
        PhaseOp::Diagonal(d) => apply_diagonal_phase(state, gamma, &d),
        PhaseOp::ZzGates(edges) => {
            let State::Dense(s) = state else {
                unreachable!("zz gates are only built for dense states")
            };
            for (u, v, w) in edges {
                s.apply_rzz(u, v, 2.0 * gamma * w)?;
            }
            Ok(())
        }
    }
}

/// Applies one mixer of `spec` to `state`.
pub fn apply_mixer(
    state: &mut State,
    spec: &AnsatzSpec,
    problem: &ProblemInstance,
    beta: f64,
) -> Result<()> {
    if state.mode() != spec.mode {
        return Err(QaoaError::config("state representation does not match spec mode"));
    }
    Ansatz::new(spec, problem)?.apply_mixer(state, beta)
}

pub fn run_ansatz(spec: &AnsatzSpec, problem: &ProblemInstance, angles: &Angles) -> Result<State> {
    Ansatz::new(spec, problem)?.run(angles)
}

pub fn ansatz_expectation(
    spec: &AnsatzSpec,
    problem: &ProblemInstance,
    angles: &Angles,
) -> Result<f64> {
    Ansatz::new(spec, problem)?.expectation(angles)
}

pub fn transition_condition_check(
    spec: &AnsatzSpec,
    problem: &ProblemInstance,
    beta: f64,
    r_max: usize,
) -> Result<bool> {
    Ansatz::new(spec, problem)?.transition_condition(beta, r_max)
}

/// Default search box `(gamma_max, beta_max)` for one layer: `gamma` in
/// `[0, 2 pi)` and `beta` in `[0, pi)`, with the Grover mixer's `beta` in
/// `[0, 2 pi)` since `exp(-i pi |s><s|)` is not a global phase.
pub fn angle_domain(spec: &AnsatzSpec) -> (f64, f64) {
    let beta_max = match spec.mixer {
        MixerKind::Grover => 2.0 * PI,
        _ => PI,
    };
    (2.0 * PI, beta_max)
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialState::Plus => f.write_str("plus"),
            InitialState::Dicke(k) => write!(f, "dicke:{k}"),
            InitialState::FixedPermutation(sigma) => {
                let s: Vec<String> = sigma.iter().map(|c| c.to_string()).collect();
                write!(f, "perm:{}", s.join(","))
            }
            InitialState::PermutationSuperposition => f.write_str("perm-superposition"),
        }
    }
}

impl FromStr for InitialState {
    type Err = QaoaError;

    /// `plus`, `dicke:<k>`, `identity`, `perm:<c0>,<c1>,...` (0-based) or
    /// `perm-superposition`. `dicke` and `identity` without arguments are
    /// resolved later against the problem size.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || QaoaError::config(format!("unknown initial state {s:?}"));
        match s {
            "plus" => Ok(InitialState::Plus),
            "perm-superposition" | "superposition" => Ok(InitialState::PermutationSuperposition),
            _ => {
                if let Some(k) = s.strip_prefix("dicke:") {
                    k.parse().map(InitialState::Dicke).map_err(|_| bad())
                } else if let Some(list) = s.strip_prefix("perm:") {
                    list.split(',')
                        .map(|c| c.trim().parse::<usize>().map_err(|_| bad()))
                        .collect::<Result<Vec<_>>>()
                        .map(InitialState::FixedPermutation)
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl fmt::Display for MixerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MixerKind::TransverseField => "transverse",
            MixerKind::XyRing => "xy-ring",
            MixerKind::XyRingProduct => "xy-ring-product",
            MixerKind::XyClique => "xy-clique",
            MixerKind::Grover => "grover",
            MixerKind::TspSimultaneousSwap => "tsp-swap",
            MixerKind::TspPartialSwapProduct => "tsp-partial-swap",
        })
    }
}

impl FromStr for MixerKind {
    type Err = QaoaError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "transverse" | "transverse-field" => MixerKind::TransverseField,
            "xy-ring" => MixerKind::XyRing,
            "xy-ring-product" => MixerKind::XyRingProduct,
            "xy-clique" => MixerKind::XyClique,
            "grover" => MixerKind::Grover,
            "tsp-swap" | "tsp-simultaneous-swap" => MixerKind::TspSimultaneousSwap,
            "tsp-partial-swap" | "tsp-partial-swap-product" => MixerKind::TspPartialSwapProduct,
            _ => return Err(QaoaError::config(format!("unknown mixer {s:?}"))),
        })
    }
}

impl fmt::Display for PhaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhaseKind::CostDiagonal => "cost",
            PhaseKind::ZzGates => "zz",
            PhaseKind::TspGDiagonal => "tsp-g",
        })
    }
}

impl FromStr for PhaseKind {
    type Err = QaoaError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cost" | "cost-diagonal" => PhaseKind::CostDiagonal,
            "zz" | "zz-gates" => PhaseKind::ZzGates,
            "tsp-g" | "tsp-g-diagonal" => PhaseKind::TspGDiagonal,
            _ => return Err(QaoaError::config(format!("unknown phase separator {s:?}"))),
        })
    }
}

impl fmt::Display for SimulationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SimulationMode::Dense => "dense",
            SimulationMode::Subspace => "subspace",
        })
    }
}

impl FromStr for SimulationMode {
    type Err = QaoaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(SimulationMode::Dense),
            "subspace" => Ok(SimulationMode::Subspace),
            _ => Err(QaoaError::config(format!("unknown simulation mode {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{Graph, MaxBisection, MaxCut, Tsp, TspInstance};

    fn k3() -> ProblemInstance {
        MaxCut::new(Graph::new(3, vec![(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()).into()
    }

    fn c4_bisection() -> ProblemInstance {
        let g = Graph::new(4, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0)]).unwrap();
        MaxBisection::new(g).unwrap().into()
    }

    fn tsp3_unit() -> ProblemInstance {
        let inst = TspInstance::new(3, vec![0., 1., 1., 1., 0., 1., 1., 1., 0.]).unwrap();
        Tsp::new(inst).unwrap().into()
    }

    #[test]
    fn initial_states() {
        let plus = prepare_initial(&AnsatzSpec::farhi(1), &MaxCut::new(
            Graph::new(2, vec![(0, 1, 1.0)]).unwrap(),
        ).into())
        .unwrap();
        for a in plus.amplitudes() {
            assert!((a - C64::new(0.5, 0.0)).norm() < 1e-15);
        }

        let spec = AnsatzSpec::designated(&c4_bisection(), 1).with_mode(SimulationMode::Dense);
        let dicke = prepare_initial(&spec, &c4_bisection()).unwrap();
        for (k, a) in dicke.amplitudes().iter().enumerate() {
            let want = if (k as u64).count_ones() == 2 { 6f64.sqrt().recip() } else { 0.0 };
            assert!((a.re - want).abs() < 1e-15 && a.im == 0.0);
        }

        let spec = AnsatzSpec {
            initial: InitialState::FixedPermutation(vec![0, 1, 2]),
            ..AnsatzSpec::designated(&tsp3_unit(), 1)
        };
        let s = prepare_initial(&spec.with_mode(SimulationMode::Dense), &tsp3_unit()).unwrap();
        let z: crate::bits::Bitstring = "100010001".parse().unwrap();
        assert_eq!(s.amplitude_of(z.value()), C64::new(1.0, 0.0));
    }

    #[test]
    fn pairing_rules() {
        let bad = [
            (AnsatzSpec { initial: InitialState::Dicke(2), ..AnsatzSpec::farhi(1) }, k3()),
            (AnsatzSpec::farhi(1), c4_bisection()),
            (AnsatzSpec::farhi(0), k3()),
            (AnsatzSpec { mixer: MixerKind::XyRing, ..AnsatzSpec::farhi(1) }, k3()),
            (AnsatzSpec { phase: PhaseKind::TspGDiagonal, ..AnsatzSpec::farhi(1) }, k3()),
            (AnsatzSpec::farhi(1).with_mode(SimulationMode::Subspace), k3()),
            (
                AnsatzSpec { initial: InitialState::Dicke(1), ..AnsatzSpec::designated(&c4_bisection(), 1) },
                c4_bisection(),
            ),
            (
                AnsatzSpec {
                    initial: InitialState::FixedPermutation(vec![0, 0, 1]),
                    ..AnsatzSpec::designated(&tsp3_unit(), 1)
                },
                tsp3_unit(),
            ),
        ];
        for (spec, problem) in bad {
            assert!(
                matches!(Ansatz::new(&spec, &problem), Err(QaoaError::Configuration(_))),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn zero_angles_return_initial_state() {
        for (spec, problem) in [
            (AnsatzSpec::farhi(2), k3()),
            (AnsatzSpec::designated(&c4_bisection(), 2), c4_bisection()),
            (AnsatzSpec::designated(&tsp3_unit(), 2), tsp3_unit()),
        ] {
            let a = Ansatz::new(&spec, &problem).unwrap();
            assert_eq!(&a.run(&Angles::zeros(2)).unwrap(), a.initial_state());
        }
    }

    #[test]
    fn zero_angle_expectations() {
        assert!((ansatz_expectation(&AnsatzSpec::farhi(1), &k3(), &Angles::zeros(1)).unwrap() - 1.5).abs() < 1e-14);
        let spec = AnsatzSpec {
            initial: InitialState::FixedPermutation(vec![0, 1, 2]),
            ..AnsatzSpec::designated(&tsp3_unit(), 1)
        };
        assert_eq!(ansatz_expectation(&spec, &tsp3_unit(), &Angles::zeros(1)).unwrap(), 3.0);
    }

    #[test]
    fn angle_count_must_match_depth() {
        let a = Ansatz::new(&AnsatzSpec::farhi(2), &k3()).unwrap();
        assert!(a.run(&Angles::zeros(1)).is_err());
        assert!(Angles::new(vec![0.0], vec![]).is_err());
        assert!(Angles::new(vec![f64::NAN], vec![0.0]).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["plus", "dicke:3", "perm:2,0,1", "perm-superposition"] {
            assert_eq!(s.parse::<InitialState>().unwrap().to_string(), s);
        }
        for m in ["transverse", "xy-ring", "xy-ring-product", "xy-clique", "grover", "tsp-swap", "tsp-partial-swap"] {
            assert_eq!(m.parse::<MixerKind>().unwrap().to_string(), m);
        }
        assert!("nope".parse::<PhaseKind>().is_err());
    }

    #[test]
    fn ring_layers_cover_every_bond_once() {
        for n in 2..8 {
            let layered = xy_ring_layers(n).unwrap();
            let mut a: Vec<_> = layered.terms().iter().map(|t| format!("{t:?}")).collect();
            let mut b: Vec<_> = HoppingHamiltonian::xy_ring(n).unwrap().terms().iter().map(|t| format!("{t:?}")).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }
}
