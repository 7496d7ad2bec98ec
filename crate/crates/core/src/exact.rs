//! Exact all-terminal reliability.
//!
//! Three routes are provided: summation over all `2^|E|` operational states,
//! the F-form polynomial built from counts of connected spanning subgraphs,
//! and deletion-contraction factoring. The first two share the block
//! enumerator below; factoring is independent of it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, Graph, UnionFind};

/// Default maximum edge count for state enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

// Hard limit from the u64 state masks.
const MASK_LIMIT: usize = 40;

// Low edges enumerated inside one block; the remaining high edges select the block.
const LOW_BITS: usize = 10;

/// `F_i` = number of connected spanning subgraphs with `|E| - i` edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FCoefficients(Vec<u64>);

impl FCoefficients {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn edge_count(&self) -> usize {
        self.0.len() - 1
    }

    /// Number of spanning trees, `F_{|E|-(n-1)}`; zero when `n - 1 > |E|`.
    pub fn spanning_trees(&self, node_count: usize) -> u64 {
        let m = self.edge_count();
        if node_count == 0 || node_count - 1 > m {
            return 0;
        }
        self.0[m - (node_count - 1)]
    }
}

pub(crate) fn check_probability(what: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange { what, value })
    }
}

fn check_probs(g: &Graph, probs: &[f64]) -> Result<()> {
    if probs.len() != g.edge_count() {
        return Err(Error::ProbsLength { expected: g.edge_count(), got: probs.len() });
    }
    probs.iter().try_for_each(|&p| check_probability("edge probability", p))
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    let cap = cap.min(MASK_LIMIT);
    if g.edge_count() > cap {
        Err(Error::TooLargeForEnumeration { edges: g.edge_count(), cap })
    } else {
        Ok(())
    }
}

/// Visits every connected state of `g`.
///
/// States are split into blocks by their high edges. Each block builds the
/// union-find of its high edges once, then copies it for each of the
/// `2^LOW_BITS` low masks. Blocks run in parallel; one accumulator is
/// returned per block in block order so reductions are deterministic.
fn connected_states<A, I, V>(g: &Graph, init: I, visit: V) -> Vec<A>
where
    A: Send,
    I: Fn(u64) -> A + Sync,
    V: Fn(&mut A, u64, u64) + Sync,
{
    let m = g.edge_count();
    let n = g.node_count();
    let low = m.min(LOW_BITS);
    let high = m - low;
    let blocks = 1u64 << high;

    // Too few edges or a disconnected graph: no state can be connected.
    let all = EdgeSubset::full(m);
    if n >= 2 && (n - 1 > m || !g.is_connected(&all).unwrap_or(false)) {
        return Vec::new();
    }

    (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut acc = init(block);
            let mut base = UnionFind::new(n);
            for j in 0..high {
                if block >> j & 1 == 1 {
                    let (u, v) = g.edge(low + j);
                    base.union(u, v);
                }
            }
            // Prune the block if even all low edges cannot finish the job.
            let mut probe = base.clone();
            for i in 0..low {
                let (u, v) = g.edge(i);
                probe.union(u, v);
            }
            if probe.components() > 1 {
                return acc;
            }
            let mut work = base.clone();
            for mask in 0..(1u64 << low) {
                work.copy_from(&base);
                let mut rest = mask;
                while rest != 0 && work.components() > 1 {
                    let i = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let (u, v) = g.edge(i);
                    work.union(u, v);
                }
                if work.components() <= 1 {
                    visit(&mut acc, block, mask);
                }
            }
            acc
        })
        .collect()
}

pub fn f_coefficients(g: &Graph) -> Result<FCoefficients> {
    f_coefficients_with_cap(g, DEFAULT_ENUMERATION_CAP)
}

/// Counts connected spanning subgraphs by size, enumerating all `2^|E|` states.
pub fn f_coefficients_with_cap(g: &Graph, cap: usize) -> Result<FCoefficients> {
    check_cap(g, cap)?;
    let m = g.edge_count();
    let partial = connected_states(
        g,
        |_| vec![0u64; m + 1],
        |hist, block, mask| {
            let present = (block.count_ones() + mask.count_ones()) as usize;
            hist[m - present] += 1;
        },
    );
    let mut counts = vec![0u64; m + 1];
    for hist in partial {
        for (c, h) in counts.iter_mut().zip(hist) {
            *c += h;
        }
    }
    Ok(FCoefficients(counts))
}

/// F-form evaluation `sum_i F_i (1-p)^i p^(|E|-i)`, clamped to `[0, 1]`.
pub fn reliability_homogeneous(f: &FCoefficients, p: f64) -> Result<f64> {
    check_probability("p", p)?;
    let m = f.edge_count() as i32;
    let q = 1.0 - p;
    let value: f64 = f
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| c as f64 * q.powi(i as i32) * p.powi(m - i as i32))
        .sum();
    Ok(value.clamp(0.0, 1.0))
}

/// Probability of exactly the state `s`: `prod_{e in s} p_e prod_{e not in s} (1-p_e)`.
pub fn state_probability(probs: &[f64], s: &EdgeSubset) -> f64 {
    probs
        .iter()
        .enumerate()
        .map(|(i, &p)| if s.contains(i) { p } else { 1.0 - p })
        .product()
}

pub fn reliability_heterogeneous(g: &Graph, probs: &[f64]) -> Result<f64> {
    reliability_heterogeneous_with_cap(g, probs, DEFAULT_ENUMERATION_CAP)
}

/// Sums the probabilities of all connected operational states.
pub fn reliability_heterogeneous_with_cap(g: &Graph, probs: &[f64], cap: usize) -> Result<f64> {
    check_probs(g, probs)?;
    check_cap(g, cap)?;
    if g.node_count() <= 1 {
        return Ok(1.0);
    }
    let m = g.edge_count();
    let low = m.min(LOW_BITS);
    let low_weights: Vec<f64> = (0..1u64 << low)
        .map(|mask| {
            (0..low)
                .map(|i| if mask >> i & 1 == 1 { probs[i] } else { 1.0 - probs[i] })
                .product()
        })
        .collect();
    let high_weight = |block: u64| -> f64 {
        (0..m - low)
            .map(|j| {
                let p = probs[low + j];
                if block >> j & 1 == 1 {
                    p
                } else {
                    1.0 - p
                }
            })
            .product()
    };
    let partial = connected_states(
        g,
        |block| (high_weight(block), 0.0f64),
        |(_, sum), _, mask| *sum += low_weights[mask as usize],
    );
    let total: f64 = partial.into_iter().map(|(w, s)| w * s).sum();
    Ok(total.clamp(0.0, 1.0))
}

/// Multigraph with merged parallel edges, used by the factoring recursion.
#[derive(Debug, Clone)]
struct Network {
    nodes: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl Network {
    /// Relabels nodes through `map` (into `0..nodes`), drops loops and
    /// merges parallel edges as `1 - (1-p1)(1-p2)`.
    fn rebuild(nodes: usize, map: &[usize], edges: impl Iterator<Item = (usize, usize, f64)>) -> Self {
        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (u, v, p) in edges {
            let (a, b) = (map[u], map[v]);
            if a == b || p == 0.0 {
                continue;
            }
            let key = (a.min(b), a.max(b));
            let q = merged.entry(key).or_insert(0.0);
            *q = 1.0 - (1.0 - *q) * (1.0 - p);
        }
        Network { nodes, edges: merged.into_iter().map(|((a, b), p)| (a, b, p)).collect() }
    }

    /// Contracts every edge in `chosen` (indices into `self.edges`).
    fn contract(&self, chosen: &[usize]) -> Network {
        let mut uf = UnionFind::new(self.nodes);
        for &i in chosen {
            let (u, v, _) = self.edges[i];
            uf.union(u, v);
        }
        let mut label = vec![usize::MAX; self.nodes];
        let mut map = vec![0; self.nodes];
        let mut next = 0;
        for x in 0..self.nodes {
            let r = uf.find(x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            map[x] = label[r];
        }
        let skip: std::collections::HashSet<usize> = chosen.iter().copied().collect();
        let rest = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !skip.contains(i))
            .map(|(_, &e)| e);
        Network::rebuild(next, &map, rest)
    }

    fn delete(&self, index: usize) -> Network {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Network { nodes: self.nodes, edges }
    }

    fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.nodes);
        for &(u, v, _) in &self.edges {
            uf.union(u, v);
        }
        uf.components() <= 1
    }

    /// Indices of bridge edges (Tarjan low-link).
    fn bridges(&self) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.nodes];
        for (i, &(u, v, _)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        let mut disc = vec![usize::MAX; self.nodes];
        let mut low = vec![0; self.nodes];
        let mut out = Vec::new();
        let mut time = 0;
        // Explicit stack: (node, parent edge, next adjacency position).
        for root in 0..self.nodes {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut stack = vec![(root, usize::MAX, 0usize)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(&mut (u, pe, ref mut pos)) = stack.last_mut() {
                if *pos < adj[u].len() {
                    let (w, ei) = adj[u][*pos];
                    *pos += 1;
                    if ei == pe {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, ei, 0));
                    } else {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[u]);
                        if low[u] > disc[parent] {
                            out.push(pe);
                        }
                    }
                }
            }
        }
        out
    }
}

fn factor(net: Network) -> f64 {
    if net.nodes <= 1 {
        return 1.0;
    }
    if !net.is_connected() {
        return 0.0;
    }
    let bridges = net.bridges();
    if !bridges.is_empty() {
        let weight: f64 = bridges.iter().map(|&i| net.edges[i].2).product();
        if weight == 0.0 {
            return 0.0;
        }
        return weight * factor(net.contract(&bridges));
    }
    // Every edge lies on a cycle; pivot on the most reliable one so the
    // contraction branch, which dominates the sum, is explored first.
    let pivot = net
        .edges
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .2.total_cmp(&b.1 .2))
        .map(|(i, _)| i)
        .expect("connected network on >= 2 nodes has an edge");
    let p = net.edges[pivot].2;
    let contracted = if p > 0.0 { p * factor(net.contract(&[pivot])) } else { 0.0 };
    let deleted = if p < 1.0 { (1.0 - p) * factor(net.delete(pivot)) } else { 0.0 };
    contracted + deleted
}

/// Deletion-contraction: `Rel(G) = p_e Rel(G/e) + (1 - p_e) Rel(G - e)`,
/// with bridges contracted in bulk and disconnected branches pruned.
pub fn reliability_factoring(g: &Graph, probs: &[f64]) -> Result<f64> {
    check_probs(g, probs)?;
    let identity: Vec<usize> = (0..g.node_count()).collect();
    let net = Network::rebuild(
        g.node_count(),
        &identity,
        g.edges().iter().zip(probs).map(|(&(u, v), &p)| (u, v, p)),
    );
    Ok(factor(net).clamp(0.0, 1.0))
}
