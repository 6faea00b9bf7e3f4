//! Brute-force ground truth and the fixed instance catalog.

use crate::ansatz::AnsatzSpec;
use crate::error::{QaoaError, Result};
use crate::problems::{
    Graph, MaxBisection, MaxCut, Problem, ProblemInstance, Sense, Tsp, TspInstance, MAX_FEASIBLE,
};

/// Exact statistics of the cost over the feasible set.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub sense: Sense,
    pub optimum: f64,
    /// Every feasible label attaining `optimum`, ascending.
    pub argopt: Vec<u64>,
    pub feasible_count: usize,
    /// Mean cost under the uniform distribution on feasible labels.
    pub uniform_mean: f64,
    /// The opposite extreme to `optimum`.
    pub worst: f64,
}

/// Enumerates every feasible label of `problem`.
pub fn brute_force(problem: &dyn Problem) -> Result<OracleReport> {
    let count = problem.feasible_count();
    if count > MAX_FEASIBLE {
        return Err(QaoaError::resource(format!(
            "feasible set has {count} elements, oracle limit is {MAX_FEASIBLE}"
        )));
    }
    let sense = problem.sense();
    let mut costs = Vec::with_capacity(count);
    let mut failure = None;
    problem.for_each_feasible(&mut |z| match problem.cost(z) {
        Ok(c) => costs.push((z, c)),
        Err(e) => failure = Some(e),
    });
    if let Some(e) = failure {
        return Err(e);
    }
    if costs.is_empty() {
        return Err(QaoaError::invalid("problem has no feasible labels"));
    }
    let (mut lo, mut hi, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    for &(_, c) in &costs {
        lo = lo.min(c);
        hi = hi.max(c);
        sum += c;
    }
    let (optimum, worst) = match sense {
        Sense::Maximize => (hi, lo),
        Sense::Minimize => (lo, hi),
    };
    let mut argopt: Vec<u64> = costs
        .iter()
        .filter(|(_, c)| *c == optimum)
        .map(|(z, _)| *z)
        .collect();
    argopt.sort_unstable();
    Ok(OracleReport {
        sense,
        optimum,
        argopt,
        feasible_count: costs.len(),
        uniform_mean: sum / costs.len() as f64,
        worst,
    })
}

/// Raw ratio and the value clamped to `[0, 1]` for reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproximationRatio {
    pub raw: f64,
    pub reported: f64,
}

/// `expectation / optimum` when maximizing (optimum must be positive), and
/// `(worst - expectation) / (worst - optimum)` when minimizing.
pub fn approximation_ratio(
    expectation: f64,
    report: &OracleReport,
    sense: Sense,
) -> Result<ApproximationRatio> {
    let raw = match sense {
        Sense::Maximize => {
            if report.optimum <= 0.0 {
                return Err(QaoaError::UndefinedRatio(format!(
                    "maximization optimum {} is not positive",
                    report.optimum
                )));
            }
            expectation / report.optimum
        }
        Sense::Minimize => {
            let span = report.worst - report.optimum;
            if span == 0.0 {
                return Err(QaoaError::UndefinedRatio(
                    "every feasible solution has the same cost".into(),
                ));
            }
            (report.worst - expectation) / span
        }
    };
    Ok(ApproximationRatio {
        raw,
        reported: raw.clamp(0.0, 1.0),
    })
}

/// A named instance with its designated ansatz and frozen optimum.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub problem: ProblemInstance,
    /// Optimum recorded when the instance was added; re-derived in tests.
    pub optimum: f64,
}

impl CatalogEntry {
    /// Ansatz used for this instance unless overridden.
    pub fn designated_spec(&self, depth: usize) -> AnsatzSpec {
        AnsatzSpec::designated(&self.problem, depth)
    }

    /// Whether this is one of the 3-regular MaxCut graphs.
    pub fn is_cubic_maxcut(&self) -> bool {
        matches!(&self.problem, ProblemInstance::MaxCut(p) if {
            let g = p.graph();
            let mut degree = vec![0usize; g.num_vertices()];
            for e in g.edges() {
                degree[e.u] += 1;
                degree[e.v] += 1;
            }
            degree.iter().all(|&d| d == 3)
        })
    }
}

const K3: &[(usize, usize)] = &[(0, 1), (0, 2), (1, 2)];
const K4: &[(usize, usize)] = &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
/// Triangles 0-1-2 and 3-4-5 joined by the matching 0-3, 1-4, 2-5.
const PRISM3: &[(usize, usize)] = &[
    (0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5),
];
const K33: &[(usize, usize)] = &[
    (0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5),
];
/// Vertices are 3-bit labels, edges join labels at Hamming distance 1.
const CUBE: &[(usize, usize)] = &[
    (0, 1), (0, 2), (0, 4), (1, 3), (1, 5), (2, 3), (2, 6), (3, 7), (4, 5), (4, 6), (5, 7), (6, 7),
];
/// Outer 5-cycle 0..4, spokes i-(i+5), inner pentagram on 5..9.
const PETERSEN: &[(usize, usize)] = &[
    (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
];
const C4: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 3), (0, 3)];

#[rustfmt::skip]
const TSP3_UNIT: [f64; 9] = [
    0.0, 1.0, 1.0,
    1.0, 0.0, 1.0,
    1.0, 1.0, 0.0,
];
#[rustfmt::skip]
const TSP3_ASYM: [f64; 9] = [
    0.0, 1.0, 4.0,
    2.0, 0.0, 1.0,
    1.0, 5.0, 0.0,
];
#[rustfmt::skip]
const TSP4_ASYM: [f64; 16] = [
    0.0, 3.0, 8.0, 5.0,
    4.0, 0.0, 2.0, 9.0,
    7.0, 6.0, 0.0, 1.0,
    2.0, 8.0, 5.0, 0.0,
];

fn unit_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges.iter().map(|&(u, v)| (u, v, 1.0)).collect())
        .expect("catalog graphs are valid")
}

fn tsp(n: usize, costs: &[f64]) -> ProblemInstance {
    Tsp::new(TspInstance::new(n, costs.to_vec()).expect("catalog matrices are valid"))
        .expect("catalog TSP sizes are valid")
        .into()
}

/// The fixed set of test instances.
pub fn instance_catalog() -> Vec<CatalogEntry> {
    let maxcut = |n, edges| ProblemInstance::from(MaxCut::new(unit_graph(n, edges)));
    vec![
        CatalogEntry {
            name: "k3",
            description: "MaxCut on the triangle",
            problem: maxcut(3, K3),
            optimum: 2.0,
        },
        CatalogEntry {
            name: "k4",
            description: "MaxCut on K4 (3-regular)",
            problem: maxcut(4, K4),
            optimum: 4.0,
        },
        CatalogEntry {
            name: "prism3",
            description: "MaxCut on the triangular prism (3-regular)",
            problem: maxcut(6, PRISM3),
            optimum: 7.0,
        },
        CatalogEntry {
            name: "k33",
            description: "MaxCut on K_{3,3} (3-regular, bipartite)",
            problem: maxcut(6, K33),
            optimum: 9.0,
        },
        CatalogEntry {
            name: "q3",
            description: "MaxCut on the cube graph (3-regular, bipartite)",
            problem: maxcut(8, CUBE),
            optimum: 12.0,
        },
        CatalogEntry {
            name: "petersen",
            description: "MaxCut on the Petersen graph (3-regular)",
            problem: maxcut(10, PETERSEN),
            optimum: 12.0,
        },
        CatalogEntry {
            name: "c4-bisection",
            description: "MaxBisection on the 4-cycle",
            problem: MaxBisection::new(unit_graph(4, C4))
                .expect("even cycle")
                .into(),
            optimum: 4.0,
        },
        CatalogEntry {
            name: "tsp3-unit",
            description: "Symmetric TSP on 3 cities with unit costs",
            problem: tsp(3, &TSP3_UNIT),
            optimum: 3.0,
        },
        CatalogEntry {
            name: "tsp3-asym",
            description: "Asymmetric TSP on 3 cities with two distinct tour costs",
            problem: tsp(3, &TSP3_ASYM),
            optimum: 3.0,
        },
        CatalogEntry {
            name: "tsp4-asym",
            description: "Asymmetric TSP on 4 cities, integer costs",
            problem: tsp(4, &TSP4_ASYM),
            optimum: 8.0,
        },
    ]
}

pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    instance_catalog().into_iter().find(|e| e.name == name)
}
