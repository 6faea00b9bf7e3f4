use crate::error::{QaoaError, Result};

/// Settings for [`nelder_mead`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub max_iter: usize,
    /// Relative spread of simplex values below which an iteration counts
    /// towards convergence.
    pub tolerance: f64,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_iter: 500,
            tolerance: 1e-6,
            initial_step: 0.25,
        }
    }
}

/// Consecutive iterations under tolerance required to stop.
pub const CONVERGENCE_WINDOW: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Best value after each iteration.
    pub trace: Vec<f64>,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

struct Counted<F> {
    f: F,
    evaluations: usize,
}

impl<F: FnMut(&[f64]) -> f64> Counted<F> {
    fn eval(&mut self, x: &[f64]) -> Result<f64> {
        self.evaluations += 1;
        let v = (self.f)(x);
        if !v.is_finite() {
            return Err(QaoaError::NonFinite(format!("objective returned {v} at {x:?}")));
        }
        Ok(v)
    }
}

fn lerp(from: &[f64], to: &[f64], t: f64) -> Vec<f64> {
    from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
}

/// Minimizes `objective` with the Nelder-Mead simplex method from `x0`.
///
/// Standard coefficients (reflection 1, expansion 2, contraction 1/2, shrink
/// 1/2). Stops when the relative spread `(f_worst - f_best) / max(|f_best|, 1)`
/// stays below `tolerance` for [`CONVERGENCE_WINDOW`] consecutive
/// iterations, or after `max_iter` iterations. The returned value never
/// exceeds `objective(x0)`.
pub fn nelder_mead<F>(objective: F, x0: &[f64], options: &SimplexOptions) -> Result<Minimum>
where
    F: FnMut(&[f64]) -> f64,
{
    if x0.is_empty() {
        return Err(QaoaError::invalid("nelder-mead needs at least one dimension"));
    }
    if options.max_iter == 0 || options.tolerance <= 0.0 || options.initial_step == 0.0 {
        return Err(QaoaError::invalid(
            "max_iter must be >= 1, tolerance > 0 and initial_step nonzero",
        ));
    }
    let dim = x0.len();
    let mut obj = Counted {
        f: objective,
        evaluations: 0,
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), obj.eval(x0)?));
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += options.initial_step;
        let f = obj.eval(&x)?;
        simplex.push((x, f));
    }
    // stable sort keeps ties in insertion order, so x0 wins ties
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));

    let mut trace = Vec::new();
    let mut calm = 0;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < options.max_iter {
        iterations += 1;
        let worst = simplex[dim].clone();
        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }
        let reflected = lerp(&centroid, &worst.0, -REFLECT);
        let fr = obj.eval(&reflected)?;
        let best_f = simplex[0].1;
        let second_worst_f = simplex[dim - 1].1;

        let mut replacement = None;
        if fr < best_f {
            let expanded = lerp(&centroid, &reflected, EXPAND);
            let fe = obj.eval(&expanded)?;
            replacement = Some(if fe < fr { (expanded, fe) } else { (reflected, fr) });
        } else if fr < second_worst_f {
            replacement = Some((reflected, fr));
        } else if fr < worst.1 {
            let outside = lerp(&centroid, &reflected, CONTRACT);
            let fc = obj.eval(&outside)?;
            if fc <= fr {
                replacement = Some((outside, fc));
            }
        } else {
            let inside = lerp(&centroid, &worst.0, CONTRACT);
            let fc = obj.eval(&inside)?;
            if fc < worst.1 {
                replacement = Some((inside, fc));
            }
        }
        match replacement {
            Some(point) => simplex[dim] = point,
            None => {
                let best = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    let x = lerp(&best, &vertex.0, SHRINK);
                    let f = obj.eval(&x)?;
                    *vertex = (x, f);
                }
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        trace.push(simplex[0].1);

        let spread = (simplex[dim].1 - simplex[0].1) / simplex[0].1.abs().max(1.0);
        if spread < options.tolerance {
            calm += 1;
            if calm >= CONVERGENCE_WINDOW {
                converged = true;
                break;
            }
        } else {
            calm = 0;
        }
    }
    let (x, f) = simplex.swap_remove(0);
    Ok(Minimum {
        x,
        f,
        iterations,
        evaluations: obj.evaluations,
        converged,
        trace,
    })
}
