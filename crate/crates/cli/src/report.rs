//! JSON documents written by the commands.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use qaoa_core::oracle::OracleReport;
use qaoa_core::vqa::RunResult;
use qaoa_core::{Bitstring, Problem, ProblemInstance, Sense};

#[derive(Debug, Clone, Serialize)]
pub struct AnglesOut {
    pub gamma: Vec<f64>,
    pub beta: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleOut {
    pub bitstring: String,
    pub cost: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizerOut {
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// One optimization run. Field order is the output order.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub problem: String,
    pub kind: String,
    pub num_qubits: usize,
    pub p: usize,
    pub angles: AnglesOut,
    pub expectation: f64,
    pub best_sample: Option<SampleOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<BTreeMap<String, usize>>,
    pub approximation_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_optimum: Option<f64>,
    pub optimizer: OptimizerOut,
    pub seed: u64,
    pub elapsed_ms: u64,
}

fn bitstring(label: u64, len: usize) -> String {
    Bitstring::new(label, len)
        .expect("labels produced by the simulator fit the register")
        .to_string()
}

impl SolveReport {
    pub fn new(name: &str, problem: &ProblemInstance, run: &RunResult, sampled: bool) -> Self {
        let q = problem.num_qubits();
        Self {
            problem: name.to_string(),
            kind: problem.kind().to_string(),
            num_qubits: q,
            p: run.best_angles.depth(),
            angles: AnglesOut {
                gamma: run.best_angles.gamma.clone(),
                beta: run.best_angles.beta.clone(),
            },
            expectation: run.best_expectation,
            best_sample: run.best_sample.map(|s| SampleOut {
                bitstring: bitstring(s.label, q),
                cost: s.cost,
            }),
            histogram: sampled.then(|| {
                run.histogram
                    .iter()
                    .map(|(&z, &count)| (bitstring(z, q), count))
                    .collect()
            }),
            approximation_ratio: run.approximation_ratio.map(|r| r.reported),
            oracle_optimum: run.oracle_optimum,
            optimizer: OptimizerOut {
                iterations: run.iterations,
                evaluations: run.evaluations,
                converged: run.converged,
            },
            seed: run.seed,
            elapsed_ms: run.elapsed_ms,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub runs: Vec<SolveReport>,
    pub monotone: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleOut {
    pub problem: String,
    pub kind: String,
    pub sense: &'static str,
    pub optimum: f64,
    pub argopt: Vec<String>,
    pub feasible_count: usize,
    pub uniform_mean: f64,
    pub worst: f64,
}

impl OracleOut {
    pub fn new(name: &str, problem: &ProblemInstance, report: &OracleReport) -> Self {
        let q = problem.num_qubits();
        Self {
            problem: name.to_string(),
            kind: problem.kind().to_string(),
            sense: match report.sense {
                Sense::Maximize => "maximize",
                Sense::Minimize => "minimize",
            },
            optimum: report.optimum,
            argopt: report.argopt.iter().map(|&z| bitstring(z, q)).collect(),
            feasible_count: report.feasible_count,
            uniform_mean: report.uniform_mean,
            worst: report.worst,
        }
    }
}

/// Pretty JSON followed by a newline, to `out` or standard output. Files are
/// written to a temporary sibling and renamed into place.
pub fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
    text.push('\n');
    match out {
        None => std::io::stdout().lock().write_all(text.as_bytes()),
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}
