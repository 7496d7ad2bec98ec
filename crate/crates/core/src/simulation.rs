//! Monte Carlo oracles and random graph generators.
//!
//! Every random draw comes from a ChaCha8 generator seeded with the user
//! seed and positioned on its own stream (one per trial), so results do not
//! depend on how trials are scheduled across threads.

use std::collections::{BTreeMap, HashSet};

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::degree::{DegreeDistribution, DEFAULT_TAIL_TOLERANCE};
use crate::error::{Error, Result};
use crate::exact::check_probability;
use crate::graph::{Graph, UnionFind};

/// Recorded in outputs so runs can be reproduced.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.9), seed_from_u64(seed), one stream per trial";

/// Default giant-component disappearance level for sweeps.
pub const DEFAULT_GIANT_FRACTION: f64 = 0.05;

fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationResult {
    pub estimate: f64,
    /// `sqrt(est (1 - est) / trials)`.
    pub standard_error: f64,
    pub trials: u64,
    pub seed: u64,
    pub rng: &'static str,
}

/// Fraction of trials in which independently sampled working edges connect the graph.
pub fn estimate_reliability(g: &Graph, probs: &[f64], trials: u64, seed: u64) -> Result<SimulationResult> {
    if probs.len() != g.edge_count() {
        return Err(Error::ProbsLength { expected: g.edge_count(), got: probs.len() });
    }
    probs.iter().try_for_each(|&p| check_probability("edge probability", p))?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let n = g.node_count();
    let successes: u64 = (0..trials)
        .into_par_iter()
        .map_init(
            || UnionFind::new(n),
            |uf, trial| {
                uf.reset();
                let mut rng = substream(seed, trial);
                for (&(u, v), &p) in g.edges().iter().zip(probs) {
                    // Draw for every edge so the stream layout does not depend on state.
                    if rng.random::<f64>() < p {
                        uf.union(u, v);
                    }
                }
                u64::from(uf.components() <= 1)
            },
        )
        .sum();
    let estimate = successes as f64 / trials as f64;
    Ok(SimulationResult {
        estimate,
        standard_error: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
        trials,
        seed,
        rng: RNG_ALGORITHM,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PercolationSweep {
    pub fractions: Vec<f64>,
    /// Mean of (largest component size) / n at each removal fraction.
    pub mean_largest_fraction: Vec<f64>,
    /// Smallest swept fraction where the mean drops below `giant_fraction`.
    pub g_c: Option<f64>,
    pub giant_fraction: f64,
    pub trials: u64,
    pub seed: u64,
    pub rng: &'static str,
}

pub fn inverse_percolation_sweep(g: &Graph, fractions: &[f64], trials: u64, seed: u64) -> Result<PercolationSweep> {
    inverse_percolation_sweep_with(g, fractions, trials, seed, DEFAULT_GIANT_FRACTION)
}

/// Removes a uniformly random `ceil(g |E|)` edges per trial and records the
/// relative size of the largest surviving component.
pub fn inverse_percolation_sweep_with(
    g: &Graph,
    fractions: &[f64],
    trials: u64,
    seed: u64,
    giant_fraction: f64,
) -> Result<PercolationSweep> {
    if g.node_count() == 0 {
        return Err(Error::InvalidParameter("cannot sweep an empty graph".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    fractions.iter().try_for_each(|&f| check_probability("removal fraction", f))?;
    if fractions.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("removal fractions must be strictly increasing".into()));
    }
    let n = g.node_count();
    let m = g.edge_count();
    let jobs: Vec<(usize, u64)> =
        (0..fractions.len()).flat_map(|fi| (0..trials).map(move |t| (fi, t))).collect();
    let sizes: Vec<f64> = jobs
        .par_iter()
        .map_init(
            || UnionFind::new(n),
            |uf, &(fi, trial)| {
                let removed = ((fractions[fi] * m as f64 - 1e-9).ceil().max(0.0) as usize).min(m);
                let mut rng = substream(seed, (fi as u64) << 32 | trial);
                uf.reset();
                for i in index::sample(&mut rng, m, m - removed) {
                    let (u, v) = g.edge(i);
                    uf.union(u, v);
                }
                uf.largest() as f64 / n as f64
            },
        )
        .collect();
    let mean_largest_fraction: Vec<f64> = sizes
        .chunks(trials as usize)
        .map(|c| c.iter().sum::<f64>() / trials as f64)
        .collect();
    let g_c = fractions
        .iter()
        .zip(&mean_largest_fraction)
        .find(|(_, &s)| s < giant_fraction)
        .map(|(&f, _)| f);
    Ok(PercolationSweep {
        fractions: fractions.to_vec(),
        mean_largest_fraction,
        g_c,
        giant_fraction,
        trials,
        seed,
        rng: RNG_ALGORITHM,
    })
}

/// What erasure removed from a configuration-model pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ErasureStats {
    pub stub_pairs: usize,
    pub self_loops: usize,
    pub multi_edges: usize,
}

/// Uniform stub matching; self-loops and repeated pairs are dropped.
pub fn generate_configuration_model(degrees: &[usize], seed: u64) -> Result<(Graph, ErasureStats)> {
    let total: usize = degrees.iter().sum();
    if total % 2 == 1 {
        return Err(Error::InvalidParameter(format!("degree sum {total} is odd")));
    }
    let mut stubs: Vec<usize> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
        .collect();
    let mut rng = substream(seed, 0);
    stubs.shuffle(&mut rng);
    let mut seen = HashSet::with_capacity(total / 2);
    let mut edges = Vec::with_capacity(total / 2);
    let mut stats = ErasureStats { stub_pairs: total / 2, self_loops: 0, multi_edges: 0 };
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (pair[0], pair[1]);
        if u == v {
            stats.self_loops += 1;
        } else if !seen.insert((u.min(v), u.max(v))) {
            stats.multi_edges += 1;
        } else {
            edges.push((u.min(v), u.max(v)));
        }
    }
    Ok((Graph::new(degrees.len(), edges)?, stats))
}

/// Includes each listed pair independently with its own probability.
pub fn generate_inhomogeneous(n: usize, edge_probs: &BTreeMap<(usize, usize), f64>, seed: u64) -> Result<Graph> {
    let mut seen = HashSet::new();
    for (&(u, v), &p) in edge_probs {
        check_probability("pair probability", p)?;
        if u == v || u >= n || v >= n {
            return Err(Error::InvalidParameter(format!("pair ({u}, {v}) is not a valid node pair for n = {n}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::InvalidParameter(format!("pair ({u}, {v}) listed twice")));
        }
    }
    let mut rng = substream(seed, 0);
    let edges = edge_probs
        .iter()
        .filter(|(_, &p)| rng.random::<f64>() < p)
        .map(|(&pair, _)| pair)
        .collect();
    Graph::new(n, edges)
}

/// Binomial random graph: every pair with the same probability.
pub fn generate_binomial(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let pairs: BTreeMap<(usize, usize), f64> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| ((u, v), p))).collect();
    generate_inhomogeneous(n, &pairs, seed)
}

/// Inverse-CDF sampler over a (truncated) degree distribution.
struct DegreeSampler {
    cdf: Vec<f64>,
}

impl DegreeSampler {
    fn new(d: &DegreeDistribution) -> Result<Self> {
        let pmf = d.truncated_pmf_mass(DEFAULT_TAIL_TOLERANCE)?;
        let mut acc = 0.0;
        let cdf = pmf
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(DegreeSampler { cdf })
    }

    fn draw(&self, rng: &mut impl Rng) -> usize {
        let total = *self.cdf.last().unwrap();
        let u = rng.random::<f64>() * total;
        self.cdf.partition_point(|&c| c <= u).min(self.cdf.len() - 1)
    }
}

const PARITY_RETRIES: usize = 1000;

/// `n` i.i.d. degrees from `d`, with the last one redrawn until the sum is even.
pub fn sample_degree_sequence(d: &DegreeDistribution, n: usize, seed: u64) -> Result<Vec<usize>> {
    let sampler = DegreeSampler::new(d)?;
    let mut rng = substream(seed, 1);
    let mut degrees: Vec<usize> = (0..n).map(|_| sampler.draw(&mut rng)).collect();
    fix_parity(&sampler, &mut degrees, &mut rng)?;
    Ok(degrees)
}

fn fix_parity(sampler: &DegreeSampler, degrees: &mut [usize], rng: &mut ChaCha8Rng) -> Result<()> {
    let Some(last) = degrees.len().checked_sub(1) else { return Ok(()) };
    for _ in 0..PARITY_RETRIES {
        if degrees.iter().sum::<usize>() % 2 == 0 {
            return Ok(());
        }
        degrees[last] = sampler.draw(rng);
    }
    Err(Error::InvalidParameter("could not draw a degree sequence with even sum".into()))
}

/// Adds nodes with degrees drawn from `d` until the stubs can form
/// `target_edges` edges, then pairs them with the configuration model.
pub fn configuration_graph_with_edges(
    d: &DegreeDistribution,
    target_edges: usize,
    seed: u64,
) -> Result<(Graph, ErasureStats)> {
    let sampler = DegreeSampler::new(d)?;
    if sampler.cdf.len() < 2 {
        return Err(Error::InvalidParameter("distribution puts all mass on degree 0".into()));
    }
    let mut rng = substream(seed, 1);
    let mut degrees = Vec::new();
    let mut stubs = 0;
    while stubs < 2 * target_edges {
        let k = sampler.draw(&mut rng);
        stubs += k;
        degrees.push(k);
        if degrees.len() > 100 * target_edges.max(1) {
            return Err(Error::InvalidParameter("distribution too concentrated on degree 0".into()));
        }
    }
    fix_parity(&sampler, &mut degrees, &mut rng)?;
    generate_configuration_model(&degrees, seed)
}
