use rayon::prelude::*;

use crate::error::{QaoaError, Result};

/// Largest lattice [`grid_search`] will evaluate.
pub const MAX_GRID_POINTS: usize = 1_000_000;

/// Coordinates of lattice point `index` (first axis most significant).
pub fn lattice_point(bounds: &[(f64, f64)], resolution: usize, mut index: usize) -> Vec<f64> {
    let mut x = vec![0.0; bounds.len()];
    for (axis, &(lo, hi)) in bounds.iter().enumerate().rev() {
        let k = index % resolution;
        index /= resolution;
        x[axis] = lo + (hi - lo) * k as f64 / resolution as f64;
    }
    x
}

/// Minimizes `objective` over the lattice with `resolution` points per axis
/// on each half-open interval `[lo, hi)`.
///
/// Ties go to the lowest lexicographic lattice index. Returns the best point,
/// its value and the number of evaluations.
pub fn grid_search<F>(
    objective: F,
    bounds: &[(f64, f64)],
    resolution: usize,
) -> Result<(Vec<f64>, f64, usize)>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if bounds.is_empty() {
        return Err(QaoaError::invalid("grid search needs at least one axis"));
    }
    if resolution < 2 {
        return Err(QaoaError::invalid("grid resolution must be at least 2"));
    }
    if bounds.iter().any(|(lo, hi)| !(lo.is_finite() && hi.is_finite() && hi > lo)) {
        return Err(QaoaError::invalid("grid bounds must be finite with hi > lo"));
    }
    let total = (0..bounds.len()).try_fold(1usize, |acc, _| acc.checked_mul(resolution));
    let total = match total {
        Some(t) if t <= MAX_GRID_POINTS => t,
        _ => {
            return Err(QaoaError::resource(format!(
                "{resolution}^{} lattice points exceeds {MAX_GRID_POINTS}",
                bounds.len()
            )))
        }
    };
    let values: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|i| objective(&lattice_point(bounds, resolution, i)))
        .collect();
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(QaoaError::NonFinite(format!(
                "objective returned {v} at lattice point {i}"
            )));
        }
        if *v < values[best] {
            best = i;
        }
    }
    Ok((lattice_point(bounds, resolution, best), values[best], total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sine_minimum() {
        let (x, f, n) = grid_search(|x| x[0].sin(), &[(0.0, 2.0 * PI)], 64).unwrap();
        assert!((x[0] - 1.5 * PI).abs() <= 2.0 * PI / 64.0);
        assert!((f + 1.0).abs() < 1e-12);
        assert_eq!(n, 64);
    }

    #[test]
    fn constant_objective_returns_first_point() {
        let (x, _, _) = grid_search(|_| 1.0, &[(0.5, 1.0), (-1.0, 1.0)], 8).unwrap();
        assert_eq!(x, vec![0.5, -1.0]);
    }

    #[test]
    fn lexicographic_order() {
        let b = [(0.0, 4.0), (0.0, 4.0)];
        assert_eq!(lattice_point(&b, 4, 1), vec![0.0, 1.0]);
        assert_eq!(lattice_point(&b, 4, 4), vec![1.0, 0.0]);
    }

    #[test]
    fn budget_and_argument_errors() {
        let b = [(0.0, 1.0); 4];
        assert!(matches!(grid_search(|_| 0.0, &b, 64), Err(QaoaError::Resource(_))));
        assert!(grid_search(|_| 0.0, &b[..1], 1).is_err());
        assert!(grid_search(|_| 0.0, &[(1.0, 1.0)], 4).is_err());
        assert!(matches!(
            grid_search(|x| if x[0] > 0.5 { f64::INFINITY } else { 0.0 }, &b[..1], 4),
            Err(QaoaError::NonFinite(_))
        ));
    }
}
