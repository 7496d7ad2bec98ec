mod common;

use common::{brute_reliability, graph_with_probs};
use netrel::graph::Graph;
use netrel::simulation::{
    estimate_reliability, generate_configuration_model, inverse_percolation_sweep, sample_degree_sequence,
};
use netrel::DegreeDistribution;
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let g = Graph::complete(5);
    let probs: Vec<f64> = (0..10).map(|i| 0.3 + 0.05 * i as f64).collect();
    let one = in_pool(1, || estimate_reliability(&g, &probs, 50_000, 11).unwrap());
    let four = in_pool(4, || estimate_reliability(&g, &probs, 50_000, 11).unwrap());
    assert_eq!(one.estimate.to_bits(), four.estimate.to_bits());

    let h = Graph::cycle(40);
    let fractions = [0.0, 0.1, 0.3, 0.6];
    let a = in_pool(1, || inverse_percolation_sweep(&h, &fractions, 20, 5).unwrap());
    let b = in_pool(3, || inverse_percolation_sweep(&h, &fractions, 20, 5).unwrap());
    assert_eq!(a, b);
}

#[test]
fn estimates_fall_within_four_standard_errors() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strategy = graph_with_probs(6, 14);
    let (mut inside, mut total) = (0, 0);
    for seed in 0..200u64 {
        let (g, probs) = strategy.new_tree(&mut runner).unwrap().current();
        let exact = brute_reliability(&g, &probs);
        let r = estimate_reliability(&g, &probs, 20_000, seed).unwrap();
        // Degenerate configurations have zero variance and must be exact.
        let se = (exact * (1.0 - exact) / r.trials as f64).sqrt();
        if se == 0.0 {
            assert_eq!(r.estimate, exact.round());
        }
        total += 1;
        if (r.estimate - exact).abs() <= 4.0 * se.max(1e-12) {
            inside += 1;
        }
    }
    assert!(inside as f64 >= 0.99 * total as f64, "{inside}/{total}");
}

proptest! {
    #[test]
    fn configuration_graphs_are_simple(degrees in proptest::collection::vec(0usize..8, 2..60), seed in any::<u64>()) {
        let mut degrees = degrees;
        if degrees.iter().sum::<usize>() % 2 == 1 {
            degrees[0] += 1;
        }
        let (g, stats) = generate_configuration_model(&degrees, seed).unwrap();
        // Graph::new rejects loops and duplicates, so re-validate from scratch.
        prop_assert!(Graph::new(g.node_count(), g.edges().to_vec()).is_ok());
        prop_assert_eq!(g.edge_count() + stats.self_loops + stats.multi_edges, stats.stub_pairs);
        for (got, want) in g.degree_sequence().iter().zip(&degrees) {
            prop_assert!(got <= want);
        }
    }

    #[test]
    fn sampled_sequences_are_reproducible(seed in any::<u64>()) {
        let d = DegreeDistribution::poisson(3.0).unwrap();
        let a = sample_degree_sequence(&d, 200, seed).unwrap();
        prop_assert_eq!(&a, &sample_degree_sequence(&d, 200, seed).unwrap());
        prop_assert_eq!(a.iter().sum::<usize>() % 2, 0);
    }
}
