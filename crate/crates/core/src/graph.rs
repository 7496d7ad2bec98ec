//! Simple undirected graphs with indexed edges, union-find connectivity and
//! the plain-text edge-list format.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    /// Resets to `n` singletons, reusing the allocation.
    pub fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        self.size.iter_mut().for_each(|s| *s = 1);
        self.components = self.parent.len();
    }

    /// Overwrites this forest with a copy of `other` (same length).
    pub fn copy_from(&mut self, other: &UnionFind) {
        self.parent.copy_from_slice(&other.parent);
        self.size.copy_from_slice(&other.size);
        self.components = other.components;
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    /// Returns true if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Size of the largest set.
    pub fn largest(&mut self) -> usize {
        (0..self.len())
            .filter(|&i| self.parent[i] as usize == i)
            .map(|i| self.size[i] as usize)
            .max()
            .unwrap_or(0)
    }

    /// Sizes of all sets, in decreasing order.
    pub fn set_sizes(&mut self) -> Vec<usize> {
        let mut sizes: Vec<usize> = (0..self.len())
            .filter(|&i| self.parent[i] as usize == i)
            .map(|i| self.size[i] as usize)
            .collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

/// A simple undirected graph on nodes `0..n` with edges indexed `0..|E|`.
///
/// Self-loops and duplicate pairs are rejected at construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(node_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= node_count || v >= node_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {i} ({u}, {v}) references a node outside 0..{node_count}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {i} is a self-loop on node {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("edge {i} ({u}, {v}) is a duplicate")));
            }
        }
        Ok(Graph { node_count, edges })
    }

    pub fn empty(node_count: usize) -> Self {
        Graph { node_count, edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph { node_count: n, edges }
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        Graph { node_count: n, edges }
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.edges.push((n - 1, 0));
        }
        g
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// True iff all nodes lie in one component of `(V, s)`.
    pub fn is_connected(&self, s: &EdgeSubset) -> Result<bool> {
        self.check_subset(s)?;
        if self.node_count <= 1 {
            return Ok(true);
        }
        let mut uf = UnionFind::new(self.node_count);
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if s.contains(i) && uf.union(u, v) && uf.components() == 1 {
                return Ok(true);
            }
        }
        Ok(uf.components() == 1)
    }

    /// Component sizes of `(V, s)`, largest first.
    pub fn component_sizes(&self, s: &EdgeSubset) -> Result<Vec<usize>> {
        self.check_subset(s)?;
        let mut uf = self.union_find(s.iter_present());
        Ok(uf.set_sizes())
    }

    pub(crate) fn union_find(&self, edges: impl IntoIterator<Item = usize>) -> UnionFind {
        let mut uf = UnionFind::new(self.node_count);
        for i in edges {
            let (u, v) = self.edges[i];
            uf.union(u, v);
        }
        uf
    }

    fn check_subset(&self, s: &EdgeSubset) -> Result<()> {
        if s.len() != self.edges.len() {
            return Err(Error::SubsetLength { expected: self.edges.len(), got: s.len() });
        }
        Ok(())
    }
}

/// Membership flags over the edge indices of a graph: the operational state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSubset(Vec<bool>);

impl EdgeSubset {
    pub fn full(len: usize) -> Self {
        EdgeSubset(vec![true; len])
    }

    pub fn none(len: usize) -> Self {
        EdgeSubset(vec![false; len])
    }

    pub fn from_indices(len: usize, present: &[usize]) -> Self {
        let mut flags = vec![false; len];
        for &i in present {
            flags[i] = true;
        }
        EdgeSubset(flags)
    }

    /// Bit `i` of `mask` marks edge `i`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        EdgeSubset((0..len).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i] = true;
    }

    pub fn remove(&mut self, i: usize) {
        self.0[i] = false;
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn iter_present(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }
}

impl From<Vec<bool>> for EdgeSubset {
    fn from(flags: Vec<bool>) -> Self {
        EdgeSubset(flags)
    }
}

/// A parsed edge-list file.
#[derive(Debug, Clone)]
pub struct EdgeList {
    pub graph: Graph,
    /// Per-edge exponential decay rates, present when every line carried one.
    pub rates: Option<Vec<f64>>,
    /// `labels[i]` is the original token of node `i`.
    pub labels: Vec<String>,
    /// False when every token was a nonnegative integer and used as-is.
    pub remapped: bool,
}

/// Parses the edge-list text format: one `u v` or `u v rate` per line,
/// `#` starts a comment, blank lines are skipped.
///
/// If every node token is a nonnegative integer the integers are used as
/// node ids directly (so `n = max + 1`); otherwise tokens are remapped to
/// `0..n` in first-seen order.
pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut raw: Vec<(usize, &str, &str, Option<f64>)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let rate = match fields.len() {
            2 => None,
            3 => {
                let r: f64 = fields[2].parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    message: format!("rate '{}' is not a number", fields[2]),
                })?;
                if !(r >= 0.0 && r.is_finite()) {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!("rate {r} must be finite and nonnegative"),
                    });
                }
                Some(r)
            }
            k => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected 'u v' or 'u v rate', found {k} fields"),
                })
            }
        };
        raw.push((lineno + 1, fields[0], fields[1], rate));
    }

    let with_rate = raw.iter().filter(|r| r.3.is_some()).count();
    if with_rate != 0 && with_rate != raw.len() {
        let line = raw.iter().find(|r| r.3.is_none()).map(|r| r.0).unwrap_or(0);
        return Err(Error::Parse {
            line,
            message: "either every edge or no edge must carry a rate".into(),
        });
    }

    let numeric: Option<Vec<(usize, usize)>> = raw
        .iter()
        .map(|&(_, a, b, _)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
        .collect();

    let (edges, labels, remapped) = match numeric {
        Some(pairs) => {
            let n = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
            (pairs, (0..n).map(|i| i.to_string()).collect(), false)
        }
        None => {
            let mut index: HashMap<&str, usize> = HashMap::new();
            let mut labels = Vec::new();
            let mut pairs = Vec::with_capacity(raw.len());
            for &(_, a, b, _) in &raw {
                let mut id = |tok| {
                    *index.entry(tok).or_insert_with(|| {
                        labels.push(tok.to_string());
                        labels.len() - 1
                    })
                };
                let u = id(a);
                let v = id(b);
                pairs.push((u, v));
            }
            (pairs, labels, true)
        }
    };

    let rates = (with_rate > 0).then(|| raw.iter().map(|r| r.3.unwrap_or(0.0)).collect());
    let graph = Graph::new(labels.len(), edges)?;
    Ok(EdgeList { graph, rates, labels, remapped })
}

/// Renders a graph (and optional per-edge rates) in the edge-list format.
pub fn write_edge_list(graph: &Graph, rates: Option<&[f64]>) -> String {
    let mut out = String::new();
    for (i, &(u, v)) in graph.edges().iter().enumerate() {
        match rates {
            Some(r) => writeln!(out, "{u} {v} {}", r[i]).unwrap(),
            None => writeln!(out, "{u} {v}").unwrap(),
        }
    }
    out
}

/// Parses a whitespace- or newline-separated list of numbers, `#` comments allowed.
pub fn parse_number_list(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            out.push(tok.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                message: format!("'{tok}' is not a number"),
            })?);
        }
    }
    Ok(out)
}
