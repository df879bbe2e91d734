//! Seeded construction of host graphs, random perturbations, colorings,
//! edge splits, and k-out subgraphs.
//!
//! Every operation here is a pure function of its inputs and the RNG it is
//! handed: the same `ChaCha8Rng` state produces the same output bit-for-bit
//! on every platform. Callers derive independent streams with [`crate::seed`].

use std::collections::HashSet;

use rand::Rng;

use crate::graph::{Color, ColoredGraph, Edge, EdgeSet, Graph, Vertex};
use crate::{Error, Result};

/// Host graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HostKind {
    /// G(n, p) thickened and repaired up to minimum degree ⌈δn⌉.
    RandomDense,
    /// K_{⌈δn⌉, n−⌈δn⌉}, the extremal minimum-degree host.
    CompleteBipartite,
    /// Two disjoint sparse blobs; deliberately violates the δ contract and
    /// serves as the negative control for connectivity-style properties.
    TwoBlob,
}

impl std::str::FromStr for HostKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random_dense" => Ok(HostKind::RandomDense),
            "complete_bipartite" => Ok(HostKind::CompleteBipartite),
            "two_blob" => Ok(HostKind::TwoBlob),
            other => Err(Error::InvalidInput(format!(
                "unknown host kind {other:?} (expected random_dense, complete_bipartite, two_blob)"
            ))),
        }
    }
}

impl std::fmt::Display for HostKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HostKind::RandomDense => "random_dense",
            HostKind::CompleteBipartite => "complete_bipartite",
            HostKind::TwoBlob => "two_blob",
        })
    }
}

/// Parameters describing which host graph to build.
#[derive(Clone, Copy, Debug)]
pub struct HostSpec {
    pub kind: HostKind,
    pub n: usize,
    /// Minimum-degree fraction δ ∈ (0, 0.5).
    pub delta: f64,
    /// Edge probability inside each half of a two-blob host.
    pub blob_edge_prob: f64,
}

pub const DEFAULT_BLOB_EDGE_PROB: f64 = 0.22;

impl HostSpec {
    pub fn new(kind: HostKind, n: usize, delta: f64) -> Self {
        HostSpec { kind, n, delta, blob_edge_prob: DEFAULT_BLOB_EDGE_PROB }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(Error::InvalidInput(format!(
                "delta = {} outside (0, 0.5)",
                self.delta
            )));
        }
        if (self.n as f64) * self.delta < 1.0 {
            return Err(Error::Infeasible(format!(
                "delta*n = {} < 1: no graph meets the minimum-degree contract",
                self.n as f64 * self.delta
            )));
        }
        if self.kind == HostKind::TwoBlob {
            if self.n % 2 != 0 {
                return Err(Error::InvalidInput(format!(
                    "two_blob needs even n, got {}",
                    self.n
                )));
            }
            if !(0.0..=1.0).contains(&self.blob_edge_prob) {
                return Err(Error::InvalidInput(format!(
                    "blob_edge_prob = {} outside [0, 1]",
                    self.blob_edge_prob
                )));
            }
        }
        Ok(())
    }

    /// ⌈δn⌉, the minimum-degree target.
    pub fn degree_target(&self) -> usize {
        (self.delta * self.n as f64).ceil() as usize
    }
}

/// θ(δ) = −ln δ.
pub fn theta(delta: f64) -> f64 {
    -delta.ln()
}

/// t(n, δ) = ⌊min{δn/260, n/(1000+200θ)}⌋, clamped to at least 1.
pub fn t_value(n: usize, delta: f64) -> usize {
    let th = theta(delta);
    let a = delta * n as f64 / 260.0;
    let b = n as f64 / (1000.0 + 200.0 * th);
    (a.min(b).floor() as usize).max(1)
}

/// Default perturbation size m = (435 + 75θ)·t·n.
pub fn default_m(n: usize, delta: f64) -> usize {
    ((435.0 + 75.0 * theta(delta)) * t_value(n, delta) as f64 * n as f64).floor() as usize
}

/// Default palette size r = (120 + 20θ)·n.
pub fn default_r(n: usize, delta: f64) -> u32 {
    ((120.0 + 20.0 * theta(delta)) * n as f64).floor() as u32
}

/// Perturbation parameters: the random edge count m, palette size r, and the
/// derived constants θ and t.
///
/// The defaults produced by [`PerturbConfig::derive`] are the thresholds at
/// which the asymptotic guarantees kick in; desk-scale experiments override
/// m and r freely.
#[derive(Clone, Copy, Debug)]
pub struct PerturbConfig {
    pub m: usize,
    pub r: u32,
    pub seed: u64,
    pub theta: f64,
    pub t: usize,
}

impl PerturbConfig {
    pub fn derive(n: usize, delta: f64, seed: u64) -> Result<Self> {
        if !(delta > 0.0 && delta < 0.5) {
            return Err(Error::InvalidInput(format!("delta = {delta} outside (0, 0.5)")));
        }
        Ok(PerturbConfig {
            m: default_m(n, delta),
            r: default_r(n, delta),
            seed,
            theta: theta(delta),
            t: t_value(n, delta),
        })
    }

    /// Clamps m to the number of available non-edges of `h`, returning the
    /// clamped copy and whether clamping changed m.
    pub fn clamped_to(mut self, h: &Graph) -> (Self, bool) {
        let cap = h.complement_count();
        let clamped = self.m > cap;
        if clamped {
            self.m = cap;
        }
        (self, clamped)
    }
}

/// The H′/H″ partition of a host's edge set.
#[derive(Clone, Debug)]
pub struct SplitResult {
    pub h_prime: Graph,
    pub h_double_prime: Graph,
}

/// Builds a host graph according to `spec`.
pub fn gen_host(spec: &HostSpec, rng: &mut impl Rng) -> Result<Graph> {
    spec.validate()?;
    let n = spec.n;
    match spec.kind {
        HostKind::CompleteBipartite => {
            let a = spec.degree_target();
            let mut edges = Vec::with_capacity(a * (n - a));
            for u in 0..a as Vertex {
                for v in a as Vertex..n as Vertex {
                    edges.push(Edge::new(u, v));
                }
            }
            Graph::from_edges(n, edges)
        }
        HostKind::TwoBlob => {
            let half = n / 2;
            let mut edges = Vec::new();
            for base in [0, half] {
                for u in 0..half {
                    for v in (u + 1)..half {
                        if rng.random_bool(spec.blob_edge_prob) {
                            edges.push(Edge::new((base + u) as Vertex, (base + v) as Vertex));
                        }
                    }
                }
            }
            Graph::from_edges(n, edges)
        }
        HostKind::RandomDense => {
            let p = (1.2 * spec.delta + 10.0 * ((n as f64).ln() / n as f64).sqrt()).min(1.0);
            let mut edges = Vec::new();
            for u in 0..n as Vertex {
                for v in (u + 1)..n as Vertex {
                    if rng.random_bool(p) {
                        edges.push(Edge::new(u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges)?;
            repair_min_degree(g, spec.degree_target(), rng)
        }
    }
}

/// Adds edges to uniformly random non-neighbors until every vertex reaches
/// degree `target`.
fn repair_min_degree(g: Graph, target: usize, rng: &mut impl Rng) -> Result<Graph> {
    let n = g.n();
    debug_assert!(target <= n - 1);
    let mut adj: Vec<HashSet<Vertex>> = (0..n as Vertex)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut added: Vec<Edge> = Vec::new();
    for v in 0..n as Vertex {
        if adj[v as usize].len() >= target {
            continue;
        }
        let mut candidates: Vec<Vertex> = (0..n as Vertex)
            .filter(|&u| u != v && !adj[v as usize].contains(&u))
            .collect();
        let need = target - adj[v as usize].len();
        sample_prefix(&mut candidates, need, rng);
        for &u in &candidates[..need] {
            adj[v as usize].insert(u);
            adj[u as usize].insert(v);
            added.push(Edge::new(u, v));
        }
    }
    g.union(&added)
}

/// Partial Fisher–Yates: after the call, the first `k` slots hold a uniform
/// without-replacement sample, in random order.
pub(crate) fn sample_prefix<T>(items: &mut [T], k: usize, rng: &mut impl Rng) {
    assert!(k <= items.len());
    for i in 0..k {
        let j = rng.random_range(i..items.len());
        items.swap(i, j);
    }
}

/// Samples m distinct non-edges of `h` uniformly without replacement.
///
/// The sequence order is the sampling order, itself uniformly random; callers
/// that consume boosters or cut chunks rely on this order being part of the
/// deterministic output.
pub fn perturb(h: &Graph, m: usize, rng: &mut impl Rng) -> Result<EdgeSet> {
    let cap = h.complement_count();
    if m > cap {
        return Err(Error::Infeasible(format!(
            "m = {m} exceeds the {cap} available non-edges"
        )));
    }
    let n = h.n() as Vertex;
    // Dense complement: rejection sampling is O(m) expected. Sparse
    // complement: enumerate it and take a random prefix.
    if cap >= 2 * m {
        let mut chosen: HashSet<Edge> = HashSet::with_capacity(m);
        let mut out = Vec::with_capacity(m);
        while out.len() < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u == v {
                continue;
            }
            let e = Edge::new(u, v);
            if h.has_edge(e) || !chosen.insert(e) {
                continue;
            }
            out.push(e);
        }
        Ok(out)
    } else {
        let mut pairs = h.complement_pairs();
        sample_prefix(&mut pairs, m, rng);
        pairs.truncate(m);
        Ok(pairs)
    }
}

/// Colors every edge of `g` independently and uniformly from `1..=r`.
pub fn color_uniform(g: &Graph, r: Color, rng: &mut impl Rng) -> Result<ColoredGraph> {
    if r == 0 {
        if g.edge_count() > 0 {
            return Err(Error::InvalidInput(
                "r = 0 with a nonempty edge set".into(),
            ));
        }
        return Ok(ColoredGraph::uncolored(g.clone()));
    }
    let colors = g
        .edges()
        .iter()
        .map(|_| rng.random_range(1..=r))
        .collect();
    ColoredGraph::new(g.clone(), colors, r)
}

/// Sends each edge of `h` to `h_prime` independently with probability `p`,
/// and to `h_double_prime` otherwise.
pub fn split_host(h: &Graph, p: f64, rng: &mut impl Rng) -> Result<SplitResult> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("split probability {p} outside [0, 1]")));
    }
    let mut prime = Vec::new();
    let mut rest = Vec::new();
    for &e in h.edges() {
        if rng.random_bool(p) {
            prime.push(e);
        } else {
            rest.push(e);
        }
    }
    Ok(SplitResult {
        h_prime: Graph::from_sorted_dedup(h.n(), prime),
        h_double_prime: Graph::from_sorted_dedup(h.n(), rest),
    })
}

/// For every vertex, picks k distinct incident edges uniformly at random and
/// returns the union of all picks. Errors if some vertex has degree < k.
pub fn k_out(g: &Graph, k: usize, rng: &mut impl Rng) -> Result<Graph> {
    if g.min_degree() < k {
        return Err(Error::InvalidInput(format!(
            "k_out(k = {k}) on a graph with minimum degree {}",
            g.min_degree()
        )));
    }
    Ok(k_out_capped(g, k, rng))
}

/// Like [`k_out`], but a vertex with degree below k simply keeps all its
/// incident edges. Used on sparse split results where the strict minimum
/// degree precondition fails for a few vertices.
pub fn k_out_capped(g: &Graph, k: usize, rng: &mut impl Rng) -> Graph {
    let mut picked: Vec<Edge> = Vec::new();
    let mut scratch: Vec<Vertex> = Vec::new();
    for v in 0..g.n() as Vertex {
        scratch.clear();
        scratch.extend_from_slice(g.neighbors(v));
        let take = k.min(scratch.len());
        sample_prefix(&mut scratch, take, rng);
        for &u in &scratch[..take] {
            picked.push(Edge::new(u, v));
        }
    }
    picked.sort_unstable();
    picked.dedup();
    Graph::from_sorted_dedup(g.n(), picked)
}
