use qaoa_core::ansatz::ansatz_expectation;
use qaoa_core::oracle::{brute_force, catalog_entry};
use qaoa_core::vqa::{depth_sweep, grid_search, vqa_loop};
use qaoa_core::{
    AnsatzSpec, Angles, EvaluationMode, OptimizerConfig, OptimizerMethod, QaoaError, RunResult,
};
use std::f64::consts::PI;

fn without_timing(mut r: RunResult) -> RunResult {
    r.elapsed_ms = 0;
    r
}

#[test]
fn k3_grid_landscape_beats_random() {
    let problem = catalog_entry("k3").unwrap().problem;
    let spec = AnsatzSpec::farhi(1);
    let (x, f, n) = grid_search(
        |x| -ansatz_expectation(&spec, &problem, &Angles::from_flat(x).unwrap()).unwrap(),
        &[(0.0, 2.0 * PI), (0.0, PI)],
        64,
    )
    .unwrap();
    assert_eq!(n, 64 * 64);
    assert!(-f > 1.5, "best grid expectation {}", -f);
    assert_eq!(x.len(), 2);
}

#[test]
fn k4_reaches_the_ratio_bound() {
    let entry = catalog_entry("k4").unwrap();
    let report = brute_force(&entry.problem).unwrap();
    let r = vqa_loop(&AnsatzSpec::farhi(1), &entry.problem, &OptimizerConfig::default(), Some(&report)).unwrap();
    let ratio = r.approximation_ratio.unwrap();
    assert!(ratio.raw >= 0.6924, "ratio {}", ratio.raw);
    assert!(r.converged);
    assert!(r.evaluations >= r.iterations);
}

#[test]
fn exact_objective_is_the_ansatz_expectation() {
    let entry = catalog_entry("prism3").unwrap();
    let spec = AnsatzSpec::farhi(1);
    let r = vqa_loop(&spec, &entry.problem, &OptimizerConfig::default(), None).unwrap();
    let again = ansatz_expectation(&spec, &entry.problem, &r.best_angles).unwrap();
    assert_eq!(r.best_expectation.to_bits(), again.to_bits());
    assert_eq!(r.trace.last().copied().unwrap().to_bits(), again.to_bits());
    assert!(r.approximation_ratio.is_none() && r.oracle_optimum.is_none());
}

#[test]
fn sampled_runs_are_reproducible() {
    let entry = catalog_entry("c4-bisection").unwrap();
    let config = OptimizerConfig {
        evaluation_mode: EvaluationMode::Sampled { shots: 256 },
        seed: 42,
        max_iter: 60,
        restarts: 2,
        ..OptimizerConfig::default()
    };
    let spec = entry.designated_spec(2);
    let a = vqa_loop(&spec, &entry.problem, &config, None).unwrap();
    let b = vqa_loop(&spec, &entry.problem, &config, None).unwrap();
    assert_eq!(without_timing(a.clone()), without_timing(b));
    assert_eq!(a.histogram.values().sum::<usize>(), 256);
    let c = vqa_loop(&spec, &entry.problem, &OptimizerConfig { seed: 43, ..config }, None).unwrap();
    assert_ne!(a.best_angles, c.best_angles);
}

#[test]
fn exact_runs_are_bit_identical() {
    let entry = catalog_entry("tsp3-asym").unwrap();
    let spec = entry.designated_spec(2);
    let config = OptimizerConfig { seed: 9, max_iter: 80, ..OptimizerConfig::default() };
    let a = vqa_loop(&spec, &entry.problem, &config, None).unwrap();
    let b = vqa_loop(&spec, &entry.problem, &config, None).unwrap();
    assert_eq!(without_timing(a), without_timing(b));
}

#[test]
fn zero_depth_is_rejected() {
    let entry = catalog_entry("k3").unwrap();
    let err = vqa_loop(&AnsatzSpec::farhi(0), &entry.problem, &OptimizerConfig::default(), None);
    assert!(matches!(err, Err(QaoaError::Configuration(_))));
    let err = depth_sweep(&AnsatzSpec::farhi(1), &entry.problem, &OptimizerConfig::default(), 0, None);
    assert!(matches!(err, Err(QaoaError::Configuration(_))));
}

#[test]
fn k3_depth_sweep_is_monotone() {
    let entry = catalog_entry("k3").unwrap();
    let sweep = depth_sweep(&AnsatzSpec::farhi(1), &entry.problem, &OptimizerConfig::default(), 3, None).unwrap();
    assert!(sweep.monotone);
    assert_eq!(sweep.runs.len(), 3);
    for (k, pair) in sweep.runs.windows(2).enumerate() {
        assert!(pair[1].best_expectation >= pair[0].best_expectation - 1e-9, "p={}", k + 2);
    }
    for (k, run) in sweep.runs.iter().enumerate() {
        assert_eq!(run.best_angles.depth(), k + 1);
    }
}

#[test]
fn flat_tsp_landscape_is_optimal_at_depth_one() {
    let entry = catalog_entry("tsp3-unit").unwrap();
    let report = brute_force(&entry.problem).unwrap();
    let r = vqa_loop(&entry.designated_spec(1), &entry.problem, &OptimizerConfig::default(), Some(&report)).unwrap();
    assert!((r.best_expectation - 3.0).abs() < 1e-12);
    assert!(r.approximation_ratio.is_none());
    assert_eq!(r.best_sample.unwrap().cost, 3.0);
}

#[test]
fn bisection_sweep_samples_an_optimal_coloring() {
    let entry = catalog_entry("c4-bisection").unwrap();
    let sweep = depth_sweep(&entry.designated_spec(1), &entry.problem, &OptimizerConfig::default(), 3, None).unwrap();
    let best = sweep.runs.last().unwrap().best_sample.unwrap();
    assert!(best.label == 0b0101 || best.label == 0b1010, "{best:?}");
    assert!(sweep.monotone);
}

#[test]
fn all_methods_run_at_depth_two() {
    let entry = catalog_entry("k4").unwrap();
    for method in [OptimizerMethod::NelderMead, OptimizerMethod::Grid, OptimizerMethod::GridThenNelderMead] {
        let config = OptimizerConfig { method, grid_resolution: 8, max_iter: 100, ..OptimizerConfig::default() };
        let r = vqa_loop(&AnsatzSpec::farhi(2), &entry.problem, &config, None).unwrap();
        assert!(r.best_expectation > 3.0, "{method:?}: {}", r.best_expectation);
        assert!(r.best_expectation <= 4.0 + 1e-12);
        assert_eq!(r.best_angles.depth(), 2);
        assert!(r.evaluations >= r.iterations);
    }
}

#[test]
fn minimization_improves_on_the_uniform_mean() {
    let entry = catalog_entry("tsp4-asym").unwrap();
    let report = brute_force(&entry.problem).unwrap();
    let r = vqa_loop(&entry.designated_spec(1), &entry.problem, &OptimizerConfig::default(), Some(&report)).unwrap();
    assert!(r.best_expectation < report.uniform_mean - 1e-6);
    assert!(r.best_expectation >= report.optimum - 1e-9);
    let ratio = r.approximation_ratio.unwrap();
    assert!(ratio.raw > 0.0 && ratio.raw <= 1.0);
}
