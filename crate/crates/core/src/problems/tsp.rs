//! Traveling salesperson instances in the one-hot permutation encoding.
//!
//! A tour is a permutation `sigma` of `0..n` (position `i` visits city
//! `sigma[i]`), closed by the leg `sigma[n-1] -> sigma[0]`. Qubit
//! `(i, u)` at flat index `i * n + u` is set iff city `u` occupies position
//! `i`, so a feasible label has exactly one set bit per position block and
//! per city.

use super::enumerate::Permutations;
use super::{Problem, Sense, MAX_FEASIBLE};
use crate::bits::Bitstring;
use crate::error::{QaoaError, Result};
use crate::state::DiagonalObservable;

/// Travel costs `d(u, v)` between `n` cities, possibly asymmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct TspInstance {
    num_cities: usize,
    costs: Vec<f64>,
}

impl TspInstance {
    /// `costs` is the row-major `n x n` matrix with `costs[u * n + v] = d(u, v)`.
    pub fn new(num_cities: usize, costs: Vec<f64>) -> Result<Self> {
        if costs.len() != num_cities * num_cities {
            return Err(QaoaError::invalid(format!(
                "{num_cities} cities need {} matrix entries, got {}",
                num_cities * num_cities,
                costs.len()
            )));
        }
        for u in 0..num_cities {
            for v in 0..num_cities {
                let d = costs[u * num_cities + v];
                if !d.is_finite() || d < 0.0 {
                    return Err(QaoaError::invalid(format!(
                        "d({u}, {v}) = {d} must be finite and nonnegative"
                    )));
                }
                if u == v && d != 0.0 {
                    return Err(QaoaError::invalid(format!("d({u}, {u}) must be zero")));
                }
            }
        }
        Ok(Self { num_cities, costs })
    }

    pub fn num_cities(&self) -> usize {
        self.num_cities
    }

    #[inline]
    pub fn distance(&self, u: usize, v: usize) -> f64 {
        self.costs[u * self.num_cities + v]
    }

    pub fn entries(&self) -> &[f64] {
        &self.costs
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.num_cities;
        (0..n).all(|u| (0..n).all(|v| self.distance(u, v) == self.distance(v, u)))
    }

    /// `sum_{u != v} d(u, v)` over ordered pairs.
    pub fn total_cost(&self) -> f64 {
        self.costs.iter().sum()
    }

    /// Cost of the closed tour with no validation of `sigma`.
    fn cycle_cost(&self, sigma: &[usize]) -> f64 {
        let n = sigma.len();
        (0..n)
            .map(|i| self.distance(sigma[i], sigma[(i + 1) % n]))
            .sum()
    }

    /// Every entry multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.num_cities, self.costs.iter().map(|d| d * factor).collect())
    }
}

fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    if sigma.len() != n {
        return Err(QaoaError::invalid(format!(
            "permutation has {} entries, expected {n}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; n];
    for &c in sigma {
        if c >= n || std::mem::replace(&mut seen[c], true) {
            return Err(QaoaError::invalid(format!("{sigma:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

/// `sum_i d(sigma_i, sigma_{i+1})` with `sigma_n = sigma_0`.
pub fn tsp_cost(instance: &TspInstance, sigma: &[usize]) -> Result<f64> {
    check_permutation(sigma, instance.num_cities)?;
    Ok(instance.cycle_cost(sigma))
}

/// One-hot label of `sigma`.
pub fn tsp_encode(sigma: &[usize]) -> Result<u64> {
    let n = sigma.len();
    check_permutation(sigma, n)?;
    if n * n > 64 {
        return Err(QaoaError::resource(format!("{n} cities need more than 64 qubits")));
    }
    Ok(encode_unchecked(sigma))
}

fn encode_unchecked(sigma: &[usize]) -> u64 {
    let n = sigma.len();
    sigma
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &u)| acc | 1u64 << (i * n + u))
}

fn decode_label(z: u64, n: usize) -> Option<Vec<usize>> {
    let block = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut used = 0u64;
    let mut sigma = Vec::with_capacity(n);
    for i in 0..n {
        let row = (z >> (i * n)) & block;
        if row.count_ones() != 1 {
            return None;
        }
        if used & row != 0 {
            return None;
        }
        used |= row;
        sigma.push(row.trailing_zeros() as usize);
    }
    Some(sigma)
}

/// Decodes a one-hot string of `n * n` bits; `None` for infeasible strings.
pub fn tsp_decode(z: &Bitstring, n: usize) -> Result<Option<Vec<usize>>> {
    if z.len() != n * n {
        return Err(QaoaError::invalid(format!(
            "one-hot string for {n} cities needs {} bits, got {}",
            n * n,
            z.len()
        )));
    }
    Ok(decode_label(z.value(), n))
}

/// TSP as a minimization over one-hot permutation labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Tsp {
    instance: TspInstance,
}

impl Tsp {
    pub fn new(instance: TspInstance) -> Result<Self> {
        let n = instance.num_cities;
        if n < 2 {
            return Err(QaoaError::invalid("TSP needs at least two cities"));
        }
        if n * n > 64 {
            return Err(QaoaError::resource(format!(
                "{n} cities need {} qubits, more than 64",
                n * n
            )));
        }
        Ok(Self { instance })
    }

    pub fn instance(&self) -> &TspInstance {
        &self.instance
    }

    pub fn num_cities(&self) -> usize {
        self.instance.num_cities
    }

    pub fn decode(&self, z: u64) -> Option<Vec<usize>> {
        decode_label(z, self.instance.num_cities)
    }

    pub fn encode(&self, sigma: &[usize]) -> Result<u64> {
        check_permutation(sigma, self.instance.num_cities)?;
        Ok(encode_unchecked(sigma))
    }

    /// Eigenvalue of `sum_i sum_u sum_v d(u,v) Z'_{i,u} Z'_{i+1,v}` on `|z>`,
    /// where `Z'_{i,u}` is `+1` when bit `(i,u)` is set and `-1` otherwise.
    /// Defined for every label, feasible or not.
    pub fn phase_eigenvalue(&self, z: u64) -> f64 {
        let n = self.instance.num_cities;
        let sign = |pos: usize, city: usize| -> f64 {
            if (z >> (pos * n + city)) & 1 == 1 {
                1.0
            } else {
                -1.0
            }
        };
        let mut total = 0.0;
        for i in 0..n {
            let next = (i + 1) % n;
            for u in 0..n {
                let su = sign(i, u);
                for v in 0..n {
                    let d = self.instance.distance(u, v);
                    if d != 0.0 {
                        total += d * su * sign(next, v);
                    }
                }
            }
        }
        total
    }

    /// `4 C(sigma) + (n - 4) sum_{u != v} d(u, v)`.
    pub fn phase_closed_form(&self, sigma: &[usize]) -> Result<f64> {
        let n = self.instance.num_cities as f64;
        Ok(4.0 * tsp_cost(&self.instance, sigma)? + (n - 4.0) * self.instance.total_cost())
    }
}

impl Problem for Tsp {
    fn num_qubits(&self) -> usize {
        self.instance.num_cities * self.instance.num_cities
    }

    fn sense(&self) -> Sense {
        Sense::Minimize
    }

    fn cost(&self, z: u64) -> Result<f64> {
        let sigma = self
            .decode(z)
            .ok_or_else(|| QaoaError::invalid(format!("label {z} is not a tour encoding")))?;
        Ok(self.instance.cycle_cost(&sigma))
    }

    fn is_feasible(&self, z: u64) -> bool {
        let q = self.num_qubits();
        (q == 64 || z >> q == 0) && self.decode(z).is_some()
    }

    fn feasible_count(&self) -> usize {
        (1..=self.instance.num_cities).fold(1usize, |acc, k| acc.saturating_mul(k))
    }

    fn for_each_feasible(&self, f: &mut dyn FnMut(u64)) {
        for sigma in Permutations::new(self.instance.num_cities) {
            f(encode_unchecked(&sigma));
        }
    }
}

/// Eigenvalues of the TSP phase Hamiltonian over the sorted feasible basis
/// of `tsp` (aligned with [`Problem::feasible_basis`]).
pub fn tsp_phase_diagonal(tsp: &Tsp) -> Result<DiagonalObservable> {
    if tsp.feasible_count() > MAX_FEASIBLE {
        return Err(QaoaError::resource("permutation basis too large"));
    }
    let basis = tsp.feasible_basis()?;
    DiagonalObservable::new(basis.iter().map(|&z| tsp.phase_eigenvalue(z)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize) -> TspInstance {
        let costs = (0..n * n).map(|k| if k / n == k % n { 0.0 } else { 1.0 }).collect();
        TspInstance::new(n, costs).unwrap()
    }

    #[test]
    fn decode_worked_example() {
        let z: Bitstring = "010001100".parse().unwrap();
        // 1-based (2, 3, 1)
        assert_eq!(tsp_decode(&z, 3).unwrap(), Some(vec![1, 2, 0]));
        assert_eq!(tsp_decode(&"1001".parse().unwrap(), 2).unwrap(), Some(vec![0, 1]));
        assert_eq!(tsp_decode(&"1100".parse().unwrap(), 2).unwrap(), None);
        assert_eq!(tsp_decode(&"1010".parse().unwrap(), 2).unwrap(), None);
        assert!(tsp_decode(&"100".parse().unwrap(), 2).is_err());
    }

    #[test]
    fn identity_encoding() {
        let tsp = Tsp::new(unit(3)).unwrap();
        let z = tsp.encode(&[0, 1, 2]).unwrap();
        assert_eq!(Bitstring::new(z, 9).unwrap().to_string(), "100010001");
    }

    #[test]
    fn tour_costs() {
        assert_eq!(tsp_cost(&unit(3), &[2, 0, 1]).unwrap(), 3.0);
        let big = 100.0;
        let d = vec![0.0, 5.0, big, big, 0.0, 7.0, 2.0, big, 0.0];
        let inst = TspInstance::new(3, d).unwrap();
        assert_eq!(tsp_cost(&inst, &[0, 1, 2]).unwrap(), 14.0);
        assert!(tsp_cost(&inst, &[0, 0, 2]).is_err());
        assert!(tsp_cost(&inst, &[0, 1]).is_err());
    }

    #[test]
    fn instance_validation() {
        assert!(TspInstance::new(2, vec![0.0, 1.0, 1.0, 1.0]).is_err());
        assert!(TspInstance::new(2, vec![0.0, -1.0, 1.0, 0.0]).is_err());
        assert!(TspInstance::new(2, vec![0.0, 1.0, 1.0]).is_err());
        let asym = TspInstance::new(2, vec![0.0, 1.0, 3.0, 0.0]).unwrap();
        assert!(!asym.is_symmetric());
        assert!(Tsp::new(TspInstance::new(9, vec![0.0; 81]).unwrap()).is_err());
    }

    #[test]
    fn unit_phase_eigenvalue_is_six() {
        let tsp = Tsp::new(unit(3)).unwrap();
        let d = tsp_phase_diagonal(&tsp).unwrap();
        assert!(d.values().iter().all(|&v| v == 6.0));
        assert_eq!(tsp.phase_closed_form(&[0, 1, 2]).unwrap(), 6.0);
    }
}
