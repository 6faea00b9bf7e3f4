use std::collections::HashSet;

use super::enumerate::{binomial, fixed_weight_labels};
use super::{Problem, Sense};
use crate::bits::{mask, Bitstring};
use crate::error::{QaoaError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Undirected weighted graph; each unordered pair appears at most once.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        if num_vertices > 64 {
            return Err(QaoaError::invalid(format!(
                "{num_vertices} vertices exceeds the 64-qubit label width"
            )));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u >= num_vertices || v >= num_vertices {
                return Err(QaoaError::invalid(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{num_vertices}"
                )));
            }
            if u == v {
                return Err(QaoaError::invalid(format!("self-loop at vertex {u}")));
            }
            if !w.is_finite() {
                return Err(QaoaError::invalid(format!("edge ({u}, {v}) has non-finite weight")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(QaoaError::invalid(format!("duplicate edge ({u}, {v})")));
            }
            out.push(Edge { u, v, w });
        }
        Ok(Self {
            num_vertices,
            edges: out,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// Weight of edges whose endpoints carry different bits of `z`.
    #[inline]
    pub fn cut_value(&self, z: u64) -> f64 {
        self.edges
            .iter()
            .filter(|e| ((z >> e.u) ^ (z >> e.v)) & 1 == 1)
            .map(|e| e.w)
            .sum()
    }

    /// Eigenvalue of `sum_E w Z_u Z_v` on `|z>`, with `Z|1> = -|1>`.
    pub fn zz_eigenvalue(&self, z: u64) -> f64 {
        self.edges
            .iter()
            .map(|e| {
                if ((z >> e.u) ^ (z >> e.v)) & 1 == 1 {
                    -e.w
                } else {
                    e.w
                }
            })
            .sum()
    }
}

fn check_len(z: &Bitstring, n: usize) -> Result<()> {
    if z.len() != n {
        return Err(QaoaError::invalid(format!(
            "bitstring has {} bits, expected {n}",
            z.len()
        )));
    }
    Ok(())
}

/// Weighted cut value of `z` on `graph`.
pub fn maxcut_cost(graph: &Graph, z: &Bitstring) -> Result<f64> {
    check_len(z, graph.num_vertices())?;
    Ok(graph.cut_value(z.value()))
}

/// True iff `z` has Hamming weight `n / 2`.
pub fn maxbis_feasible(z: &Bitstring, n: usize) -> Result<bool> {
    if !n.is_multiple_of(2) {
        return Err(QaoaError::invalid(format!("bisection needs an even size, got {n}")));
    }
    check_len(z, n)?;
    Ok(z.weight() as usize == n / 2)
}

/// Unconstrained maximum cut.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxCut {
    graph: Graph,
}

impl MaxCut {
    pub fn new(graph: Graph) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

impl Problem for MaxCut {
    fn num_qubits(&self) -> usize {
        self.graph.num_vertices
    }

    fn sense(&self) -> Sense {
        Sense::Maximize
    }

    fn cost(&self, z: u64) -> Result<f64> {
        Ok(self.graph.cut_value(z))
    }

    fn is_feasible(&self, z: u64) -> bool {
        z & !mask(self.graph.num_vertices) == 0
    }

    fn feasible_count(&self) -> usize {
        1usize.checked_shl(self.graph.num_vertices as u32).unwrap_or(usize::MAX)
    }

    fn for_each_feasible(&self, f: &mut dyn FnMut(u64)) {
        let n = self.graph.num_vertices;
        let mut z = 0u64;
        loop {
            f(z);
            if z == mask(n) {
                break;
            }
            z += 1;
        }
    }

    fn is_constrained(&self) -> bool {
        false
    }
}

/// Maximum cut restricted to balanced partitions (weight `n/2` labels).
#[derive(Debug, Clone, PartialEq)]
pub struct MaxBisection {
    graph: Graph,
}

impl MaxBisection {
    pub fn new(graph: Graph) -> Result<Self> {
        if !graph.num_vertices.is_multiple_of(2) {
            return Err(QaoaError::invalid(format!(
                "bisection needs an even number of vertices, got {}",
                graph.num_vertices
            )));
        }
        Ok(Self { graph })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Required Hamming weight of feasible labels.
    pub fn part_size(&self) -> usize {
        self.graph.num_vertices / 2
    }

    pub fn feasible(&self, z: &Bitstring) -> Result<bool> {
        maxbis_feasible(z, self.graph.num_vertices)
    }
}

impl Problem for MaxBisection {
    fn num_qubits(&self) -> usize {
        self.graph.num_vertices
    }

    fn sense(&self) -> Sense {
        Sense::Maximize
    }

    fn cost(&self, z: u64) -> Result<f64> {
        Ok(self.graph.cut_value(z))
    }

    fn is_feasible(&self, z: u64) -> bool {
        z & !mask(self.graph.num_vertices) == 0 && z.count_ones() as usize == self.part_size()
    }

    fn feasible_count(&self) -> usize {
        binomial(self.graph.num_vertices, self.part_size())
    }

    fn for_each_feasible(&self, f: &mut dyn FnMut(u64)) {
        fixed_weight_labels(self.graph.num_vertices, self.part_size()).for_each(f)
    }
}
