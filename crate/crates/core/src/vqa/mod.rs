//! Classical outer loop: derivative-free optimization of the `2p` angles
//! against the ansatz expectation.

mod grid;
mod nelder_mead;

pub use grid::{grid_search, lattice_point, MAX_GRID_POINTS};
pub use nelder_mead::{nelder_mead, Minimum, SimplexOptions, CONVERGENCE_WINDOW};

use std::collections::BTreeMap;
use std::sync::Mutex;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ansatz::{angle_domain, Angles, Ansatz, AnsatzSpec, State};
use crate::error::{QaoaError, Result};
use crate::oracle::{approximation_ratio, ApproximationRatio, OracleReport};
use crate::problems::{Problem, ProblemInstance};
use crate::state;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizerMethod {
    NelderMead,
    Grid,
    /// Grid seeding for `p = 1`, multi-start simplex otherwise.
    GridThenNelderMead,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvaluationMode {
    /// Exact expectation from the statevector.
    Exact,
    /// Sample mean of the cost over `shots` measurements.
    Sampled { shots: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub method: OptimizerMethod,
    pub max_iter: usize,
    /// Relative objective spread counted as converged.
    pub tolerance: f64,
    /// Random simplex starts used for `p >= 2` (and for plain Nelder-Mead).
    pub restarts: usize,
    /// Grid points per axis.
    pub grid_resolution: usize,
    pub seed: u64,
    pub evaluation_mode: EvaluationMode,
    /// Measurements of the final state in exact mode.
    pub final_shots: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            method: OptimizerMethod::GridThenNelderMead,
            max_iter: 500,
            tolerance: 1e-6,
            restarts: 4,
            grid_resolution: 64,
            seed: 0,
            evaluation_mode: EvaluationMode::Exact,
            final_shots: 1024,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iter == 0 {
            return Err(QaoaError::config("max_iter must be at least 1"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(QaoaError::config("tolerance must be positive and finite"));
        }
        if self.grid_resolution < 2 {
            return Err(QaoaError::config("grid resolution must be at least 2"));
        }
        if matches!(self.evaluation_mode, EvaluationMode::Sampled { shots: 0 }) {
            return Err(QaoaError::config("sampled mode needs at least one shot"));
        }
        if self.final_shots == 0 {
            return Err(QaoaError::config("final_shots must be at least 1"));
        }
        Ok(())
    }

    fn shots(&self) -> usize {
        match self.evaluation_mode {
            EvaluationMode::Exact => self.final_shots,
            EvaluationMode::Sampled { shots } => shots,
        }
    }
}

/// Lowest-cost (per sense) feasible label among the final measurements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestSample {
    pub label: u64,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_angles: Angles,
    /// Exact expectation at `best_angles`, in either evaluation mode.
    pub best_expectation: f64,
    /// `None` only if no measured label was feasible.
    pub best_sample: Option<BestSample>,
    /// Measurement counts of the final state keyed by basis label.
    pub histogram: BTreeMap<u64, usize>,
    pub approximation_ratio: Option<ApproximationRatio>,
    pub oracle_optimum: Option<f64>,
    pub evaluations: usize,
    pub iterations: usize,
    pub converged: bool,
    pub seed: u64,
    pub elapsed_ms: u64,
    /// Best objective value, in the problem's own sense, after each
    /// iteration of the winning start.
    pub trace: Vec<f64>,
}

/// Independent 64-bit seed for `(stream, index)` under `seed`, built from
/// two SplitMix64 rounds.
pub fn derive_seed(seed: u64, stream: u64, index: u64) -> u64 {
    let mut z = seed;
    for word in [stream, index] {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(word);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
    }
    z
}

const STREAM_RESTART: u64 = 1;
const STREAM_EVAL: u64 = 2;
const STREAM_GRID: u64 = 3;
const STREAM_FINAL: u64 = 4;

/// Mean cost over `shots` measurements of `state`.
pub fn sampled_mean(ansatz: &Ansatz, state: &State, shots: usize, seed: u64) -> Result<f64> {
    let histogram = state::sample(state, shots, seed)?;
    let costs = ansatz.cost_diagonal().values();
    let mut total = 0.0;
    for (&label, &count) in &histogram {
        let index = match state {
            State::Dense(_) => label as usize,
            State::Subspace(s) => s
                .index_of(label)
                .ok_or_else(|| QaoaError::invalid("sampled label outside the basis"))?,
        };
        total += costs[index] * count as f64;
    }
    Ok(total / shots as f64)
}

/// Linear interpolation of depth-`p` angles onto a depth-`p + 1` schedule.
pub fn interpolate_angles(angles: &Angles) -> Angles {
    let p = angles.depth();
    let stretch = |v: &[f64]| -> Vec<f64> {
        (0..=p)
            .map(|i| {
                let left = if i > 0 { v[i - 1] } else { 0.0 };
                let right = if i < p { v[i] } else { 0.0 };
                (i as f64 * left + (p - i) as f64 * right) / p as f64
            })
            .collect()
    };
    Angles {
        gamma: stretch(&angles.gamma),
        beta: stretch(&angles.beta),
    }
}

/// Depth-`p` angles with one identity layer appended.
pub fn pad_angles(angles: &Angles) -> Angles {
    let mut padded = angles.clone();
    padded.gamma.push(0.0);
    padded.beta.push(0.0);
    padded
}

/// Annealing-like ramp: `gamma` rising and `beta` falling across layers.
fn ramp_start(p: usize) -> Vec<f64> {
    let t = |k: usize| (k as f64 + 0.5) / p as f64;
    let gamma = (0..p).map(|k| 0.8 * t(k));
    let beta = (0..p).map(|k| 0.8 * (1.0 - t(k)));
    gamma.chain(beta).collect()
}

struct Objective<'a> {
    ansatz: &'a Ansatz,
    sign: f64,
    mode: EvaluationMode,
}

impl Objective<'_> {
    /// Minimization value at `x`; `sample_seed` is used in sampled mode.
    fn value(&self, x: &[f64], sample_seed: u64) -> Result<f64> {
        let angles = Angles::from_flat(x)?;
        let state = self.ansatz.run(&angles)?;
        let value = match self.mode {
            EvaluationMode::Exact => self.ansatz.expectation_of(&state)?,
            EvaluationMode::Sampled { shots } => {
                sampled_mean(self.ansatz, &state, shots, sample_seed)?
            }
        };
        if !value.is_finite() {
            return Err(QaoaError::NonFinite(format!(
                "expectation is {value} at {angles:?}"
            )));
        }
        Ok(-self.sign * value)
    }
}

fn x_seed(seed: u64, x: &[f64]) -> u64 {
    x.iter()
        .fold(derive_seed(seed, STREAM_GRID, 0), |h, v| {
            derive_seed(h, STREAM_GRID, v.to_bits())
        })
}

fn run_simplex(
    objective: &Objective,
    x0: &[f64],
    config: &OptimizerConfig,
    start: u64,
) -> Result<Minimum> {
    let mut failure = None;
    let mut counter = 0u64;
    let options = SimplexOptions {
        max_iter: config.max_iter,
        tolerance: config.tolerance,
        initial_step: 0.25,
    };
    let stream = derive_seed(config.seed, STREAM_EVAL, start);
    let result = nelder_mead(
        |x| {
            counter += 1;
            match objective.value(x, derive_seed(stream, STREAM_EVAL, counter)) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        x0,
        &options,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    result
}

fn run_grid(
    objective: &Objective,
    bounds: &[(f64, f64)],
    config: &OptimizerConfig,
) -> Result<(Vec<f64>, f64, usize)> {
    let failure = Mutex::new(None);
    let result = grid_search(
        |x| match objective.value(x, x_seed(config.seed, x)) {
            Ok(v) => v,
            Err(e) => {
                failure.lock().expect("poisoned").get_or_insert(e);
                f64::NAN
            }
        },
        bounds,
        config.grid_resolution,
    );
    if let Some(e) = failure.into_inner().expect("poisoned") {
        return Err(e);
    }
    result
}

/// Optimizes the angles of `spec` on `problem`.
///
/// `p = 1` with a grid method evaluates the full lattice first; the simplex
/// then refines the best lattice point. Otherwise simplex runs start from
/// the ramp schedule plus `restarts` uniform-random points. With an oracle
/// report, the approximation ratio is filled in.
pub fn vqa_loop(
    spec: &AnsatzSpec,
    problem: &ProblemInstance,
    config: &OptimizerConfig,
    oracle: Option<&OracleReport>,
) -> Result<RunResult> {
    vqa_loop_from(spec, problem, config, oracle, &[])
}

/// [`vqa_loop`] with extra simplex starting points tried before the random
/// restarts.
pub fn vqa_loop_from(
    spec: &AnsatzSpec,
    problem: &ProblemInstance,
    config: &OptimizerConfig,
    oracle: Option<&OracleReport>,
    seeds: &[Angles],
) -> Result<RunResult> {
    let clock = Instant::now();
    config.validate()?;
    let ansatz = Ansatz::new(spec, problem)?;
    let p = spec.depth;
    for s in seeds {
        if s.depth() != p {
            return Err(QaoaError::invalid(format!(
                "seed angles have depth {}, ansatz has depth {p}",
                s.depth()
            )));
        }
    }
    let sense = problem.sense();
    let objective = Objective {
        ansatz: &ansatz,
        sign: sense.sign(),
        mode: config.evaluation_mode,
    };
    let (gamma_max, beta_max) = angle_domain(spec);
    let bounds: Vec<(f64, f64)> = (0..2 * p)
        .map(|i| (0.0, if i < p { gamma_max } else { beta_max }))
        .collect();

    let mut evaluations = 0;
    let mut iterations = 0;
    let mut grid_best = None;
    let use_grid = match config.method {
        OptimizerMethod::Grid => true,
        OptimizerMethod::GridThenNelderMead => p == 1,
        OptimizerMethod::NelderMead => false,
    };
    if use_grid {
        let (x, f, n) = run_grid(&objective, &bounds, config)?;
        evaluations += n;
        iterations += 1;
        grid_best = Some((x, f));
    }

    let mut starts: Vec<Vec<f64>> = seeds.iter().map(Angles::to_flat).collect();
    let (best_x, converged, trace) = if config.method == OptimizerMethod::Grid {
        let (x, f) = grid_best.expect("grid ran");
        (x, true, vec![f])
    } else {
        match grid_best {
            Some((x, _)) => starts.insert(0, x),
            None => {
                starts.push(ramp_start(p));
                for r in 0..config.restarts {
                    let mut rng =
                        ChaCha8Rng::seed_from_u64(derive_seed(config.seed, STREAM_RESTART, r as u64));
                    starts.push(bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect());
                }
            }
        }
        let outcomes: Vec<Minimum> = starts
            .par_iter()
            .enumerate()
            .map(|(i, x0)| run_simplex(&objective, x0, config, i as u64))
            .collect::<Result<_>>()?;
        let mut winner = 0;
        for (i, o) in outcomes.iter().enumerate() {
            evaluations += o.evaluations;
            iterations += o.iterations;
            if o.f < outcomes[winner].f {
                winner = i;
            }
        }
        let m = outcomes.into_iter().nth(winner).expect("at least one start");
        (m.x, m.converged, m.trace)
    };

    let best_angles = Angles::from_flat(&best_x)?;
    let state = ansatz.run(&best_angles)?;
    let best_expectation = ansatz.expectation_of(&state)?;
    let histogram = state::sample(&state, config.shots(), derive_seed(config.seed, STREAM_FINAL, 0))?;
    let best_sample = best_measured(problem, &histogram)?;
    let approximation = match oracle {
        Some(report) => match approximation_ratio(best_expectation, report, sense) {
            Ok(r) => Some(r),
            Err(QaoaError::UndefinedRatio(_)) => None,
            Err(e) => return Err(e),
        },
        None => None,
    };
    Ok(RunResult {
        best_angles,
        best_expectation,
        best_sample,
        histogram,
        approximation_ratio: approximation,
        oracle_optimum: oracle.map(|r| r.optimum),
        evaluations,
        iterations,
        converged,
        seed: config.seed,
        elapsed_ms: clock.elapsed().as_millis() as u64,
        trace: trace.into_iter().map(|f| -sense.sign() * f).collect(),
    })
}

fn best_measured(
    problem: &ProblemInstance,
    histogram: &BTreeMap<u64, usize>,
) -> Result<Option<BestSample>> {
    let sense = problem.sense();
    let mut best: Option<BestSample> = None;
    for &label in histogram.keys() {
        if !problem.is_feasible(label) {
            continue;
        }
        let cost = problem.cost(label)?;
        if best.is_none_or(|b| sense.better(cost, b.cost)) {
            best = Some(BestSample { label, cost });
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DepthSweep {
    /// `runs[k]` is the result at depth `k + 1`.
    pub runs: Vec<RunResult>,
    /// Whether the best expectation never got worse (within 1e-9) as `p`
    /// grew.
    pub monotone: bool,
}

/// Tolerance on the depth monotonicity diagnostic.
pub const MONOTONE_TOLERANCE: f64 = 1e-9;

/// Runs [`vqa_loop`] for `p = 1..=p_max`. Each depth after the first starts
/// from the interpolated and the zero-padded previous optimum.
pub fn depth_sweep(
    spec: &AnsatzSpec,
    problem: &ProblemInstance,
    config: &OptimizerConfig,
    p_max: usize,
    oracle: Option<&OracleReport>,
) -> Result<DepthSweep> {
    if p_max == 0 {
        return Err(QaoaError::config("p_max must be at least 1"));
    }
    let sense = problem.sense();
    let mut runs: Vec<RunResult> = Vec::with_capacity(p_max);
    let mut monotone = true;
    for p in 1..=p_max {
        let seeds = match runs.last() {
            Some(prev) => vec![
                interpolate_angles(&prev.best_angles),
                pad_angles(&prev.best_angles),
            ],
            None => Vec::new(),
        };
        let run = vqa_loop_from(&spec.with_depth(p), problem, config, oracle, &seeds)?;
        if let Some(prev) = runs.last() {
            let slack = sense.sign() * (run.best_expectation - prev.best_expectation);
            if slack < -MONOTONE_TOLERANCE {
                monotone = false;
            }
        }
        runs.push(run);
    }
    Ok(DepthSweep { runs, monotone })
}
