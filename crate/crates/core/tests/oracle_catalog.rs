use qaoa_core::oracle::{approximation_ratio, brute_force, catalog_entry, instance_catalog};
use qaoa_core::{Problem, ProblemInstance, Sense};

/// All permutations of `0..n` by recursive insertion.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// (optimum, worst, mean) enumerated without the library's feasibility code.
fn independent_stats(problem: &ProblemInstance) -> (f64, f64, f64) {
    let costs: Vec<f64> = match problem {
        ProblemInstance::MaxCut(p) => {
            let g = p.graph();
            (0..1u64 << g.num_vertices())
                .map(|z| g.edges().iter().filter(|e| (z >> e.u ^ z >> e.v) & 1 == 1).map(|e| e.w).sum())
                .collect()
        }
        ProblemInstance::MaxBisection(p) => {
            let g = p.graph();
            let n = g.num_vertices();
            (0..1u64 << n)
                .filter(|z| z.count_ones() as usize * 2 == n)
                .map(|z| g.edges().iter().filter(|e| (z >> e.u ^ z >> e.v) & 1 == 1).map(|e| e.w).sum())
                .collect()
        }
        ProblemInstance::Tsp(t) => {
            let inst = t.instance();
            let n = inst.num_cities();
            permutations(n)
                .iter()
                .map(|s| (0..n).map(|i| inst.distance(s[i], s[(i + 1) % n])).sum())
                .collect()
        }
    };
    let lo = costs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = costs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = costs.iter().sum::<f64>() / costs.len() as f64;
    match problem.sense() {
        Sense::Maximize => (hi, lo, mean),
        Sense::Minimize => (lo, hi, mean),
    }
}

#[test]
fn catalog_matches_independent_enumeration() {
    for entry in instance_catalog() {
        let report = brute_force(&entry.problem).unwrap();
        let (opt, worst, mean) = independent_stats(&entry.problem);
        assert_eq!(report.optimum, opt, "{}", entry.name);
        assert_eq!(entry.optimum, opt, "{}", entry.name);
        assert_eq!(report.worst, worst, "{}", entry.name);
        assert!((report.uniform_mean - mean).abs() < 1e-12, "{}", entry.name);
        assert_eq!(report.feasible_count, entry.problem.feasible_count());
        for &z in &report.argopt {
            assert_eq!(entry.problem.cost(z).unwrap(), opt);
        }
    }
}

#[test]
fn tabulated_statistics() {
    // (name, optimum, uniform mean, worst)
    let table = [
        ("k3", 2.0, 1.5, 0.0),
        ("k4", 4.0, 3.0, 0.0),
        ("prism3", 7.0, 4.5, 0.0),
        ("k33", 9.0, 4.5, 0.0),
        ("q3", 12.0, 6.0, 0.0),
        ("petersen", 12.0, 7.5, 0.0),
        ("c4-bisection", 4.0, 8.0 / 3.0, 2.0),
        ("tsp3-unit", 3.0, 3.0, 3.0),
        ("tsp3-asym", 3.0, 7.0, 11.0),
        ("tsp4-asym", 8.0, 20.0, 25.0),
    ];
    for (name, opt, mean, worst) in table {
        let r = brute_force(&catalog_entry(name).unwrap().problem).unwrap();
        assert_eq!(r.optimum, opt, "{name}");
        assert!((r.uniform_mean - mean).abs() < 1e-12, "{name}");
        assert_eq!(r.worst, worst, "{name}");
    }
}

#[test]
fn bisection_optima_are_the_alternating_colorings() {
    let r = brute_force(&catalog_entry("c4-bisection").unwrap().problem).unwrap();
    assert_eq!(r.argopt, vec![0b0101, 0b1010]);
}

#[test]
fn triangle_has_six_optimal_cuts() {
    let r = brute_force(&catalog_entry("k3").unwrap().problem).unwrap();
    assert_eq!(r.argopt, vec![1, 2, 3, 4, 5, 6]);
}

#[test]
fn approximation_ratio_endpoints() {
    let r = brute_force(&catalog_entry("petersen").unwrap().problem).unwrap();
    assert_eq!(approximation_ratio(12.0, &r, Sense::Maximize).unwrap().raw, 1.0);
    assert_eq!(approximation_ratio(7.5, &r, Sense::Maximize).unwrap().raw, 0.625);
    assert!(catalog_entry("nope").is_none());
}
