use proptest::prelude::*;
use qaoa_cli::formats::{graph_to_text, parse_graph, parse_problem, parse_tsp, tsp_to_text, ProblemFile};
use qaoa_core::{Graph, TspInstance};

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..10).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        (Just(n), Just(pairs), prop::collection::vec((any::<bool>(), any::<bool>(), 1e-3..1e3f64), m))
    })
    .prop_map(|(n, pairs, picks)| {
        let edges = pairs
            .into_iter()
            .zip(picks)
            .filter(|(_, (keep, _, _))| *keep)
            .map(|((u, v), (_, flip, w))| if flip { (v, u, w) } else { (u, v, w) })
            .collect();
        Graph::new(n, edges).unwrap()
    })
}

fn tsp_strategy() -> impl Strategy<Value = TspInstance> {
    (2usize..7).prop_flat_map(|n| (Just(n), prop::collection::vec(0.0..100.0f64, n * n))).prop_map(|(n, mut d)| {
        for u in 0..n {
            d[u * n + u] = 0.0;
        }
        TspInstance::new(n, d).unwrap()
    })
}

proptest! {
    #[test]
    fn graph_canonical_form_round_trips(g in graph_strategy()) {
        let text = graph_to_text(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(graph_to_text(&back), text);
    }

    #[test]
    fn tsp_canonical_form_round_trips(t in tsp_strategy()) {
        let text = tsp_to_text(&t);
        let back = parse_tsp(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(parse_problem(&text).unwrap(), ProblemFile::Tsp(t));
    }
}
