//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use netrel::Graph;
use proptest::prelude::*;

/// Depth-first connectivity of `(V, {e : mask bit e set})`.
pub fn connected_by_dfs(g: &Graph, mask: u64) -> bool {
    let n = g.node_count();
    if n <= 1 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if mask >> i & 1 == 1 {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

pub fn state_weight(probs: &[f64], mask: u64) -> f64 {
    probs
        .iter()
        .enumerate()
        .map(|(i, &p)| if mask >> i & 1 == 1 { p } else { 1.0 - p })
        .product()
}

/// Sum of state probabilities over connected states.
pub fn brute_reliability(g: &Graph, probs: &[f64]) -> f64 {
    (0..1u64 << g.edge_count())
        .filter(|&m| connected_by_dfs(g, m))
        .map(|m| state_weight(probs, m))
        .sum()
}

/// `P(more than m_c of the independent trials succeed)` by subset enumeration.
pub fn brute_tail(probs: &[f64], m_c: usize) -> f64 {
    (0..1u64 << probs.len())
        .filter(|m| m.count_ones() as usize > m_c)
        .map(|m| state_weight(probs, m))
        .sum()
}

/// Exact Poisson-binomial pmf by subset enumeration.
pub fn brute_pmf(probs: &[f64]) -> Vec<f64> {
    let mut pmf = vec![0.0; probs.len() + 1];
    for m in 0..1u64 << probs.len() {
        pmf[m.count_ones() as usize] += state_weight(probs, m);
    }
    pmf
}

/// Poisson pmf by the running product `mu^k / k!`.
pub fn poisson_pmf_product(mu: f64, k: usize) -> f64 {
    (1..=k).fold((-mu).exp(), |acc, j| acc * mu / j as f64)
}

/// Random simple graph on up to `max_nodes` nodes with at most `max_edges` edges.
pub fn small_graph(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
    (1..=max_nodes).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let k = pairs.len().min(max_edges);
        proptest::sample::subsequence(pairs, 0..=k)
            .prop_shuffle()
            .prop_map(move |edges| Graph::new(n, edges).unwrap())
    })
}

/// Graph paired with one probability per edge.
pub fn graph_with_probs(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = (Graph, Vec<f64>)> {
    small_graph(max_nodes, max_edges).prop_flat_map(|g| {
        let m = g.edge_count();
        (Just(g), proptest::collection::vec(0.0..=1.0f64, m))
    })
}
