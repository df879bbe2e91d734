//! Exact rainbow-path and rainbow-connectivity decisions for small color
//! counts, plus the hub-set construction used as a structural diagnostic.
//!
//! The decision procedure runs a forward closure over states
//! `(vertex, ColorMask)`: state `(v, M)` is reachable from the source `u`
//! iff some rainbow path u→v uses exactly the colors in `M`. A rainbow path
//! has at most r edges, so the closure depth is bounded by r and the state
//! space by n·2^r; the `r <= 24` guard keeps the latter finite in practice.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::bitset::{AdjBitsets, BitSet};
use crate::graph::{ColoredGraph, Edge, Graph, Vertex};
use crate::{Error, Result};

/// Largest r for which the exact DP is allowed to run.
pub const MAX_DP_COLORS: u32 = 24;

fn guard_r(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidInput(
            "rainbow reachability needs a colored graph with r >= 1".into(),
        ));
    }
    if r > MAX_DP_COLORS {
        return Err(Error::InvalidInput(format!(
            "rainbow DP supports r <= {MAX_DP_COLORS}, got r = {r}; larger r would need a \
             sampling fallback this library does not provide"
        )));
    }
    Ok(())
}

fn guard_vertex(n: usize, v: Vertex, what: &str) -> Result<()> {
    if (v as usize) >= n {
        return Err(Error::InvalidInput(format!(
            "{what} {v} out of range for n = {n}"
        )));
    }
    Ok(())
}

/// Marks every vertex reachable from `u` by a rainbow path.
pub fn rainbow_reachable(cg: &ColoredGraph, u: Vertex) -> Result<Vec<bool>> {
    guard_r(cg.r())?;
    let n = cg.n();
    guard_vertex(n, u, "source vertex")?;

    let adj = cg.colored_adjacency();
    let masks = 1usize << cg.r();
    let mut seen: Vec<BitSet> = (0..n).map(|_| BitSet::new(masks)).collect();
    let mut reached = vec![false; n];
    let mut reached_count = 1usize;
    reached[u as usize] = true;
    seen[u as usize].set(0);

    let mut queue: VecDeque<(Vertex, u32)> = VecDeque::from([(u, 0u32)]);
    while let Some((v, mask)) = queue.pop_front() {
        for &(w, c) in &adj[v as usize] {
            let bit = 1u32 << (c - 1);
            if mask & bit != 0 {
                continue;
            }
            let next = mask | bit;
            if seen[w as usize].get(next as usize) {
                continue;
            }
            seen[w as usize].set(next as usize);
            if !reached[w as usize] {
                reached[w as usize] = true;
                reached_count += 1;
                if reached_count == n {
                    return Ok(reached);
                }
            }
            queue.push_back((w, next));
        }
    }
    Ok(reached)
}

/// Returns one shortest rainbow path u→v, or None when no rainbow path
/// exists. First-reached states win; the breadth-first order expands
/// neighbors ascending, so the witness is deterministic.
pub fn rainbow_path(cg: &ColoredGraph, u: Vertex, v: Vertex) -> Result<Option<Vec<Vertex>>> {
    guard_r(cg.r())?;
    let n = cg.n();
    guard_vertex(n, u, "source vertex")?;
    guard_vertex(n, v, "target vertex")?;
    if u == v {
        return Ok(Some(vec![u]));
    }

    let adj = cg.colored_adjacency();
    let mut parent: HashMap<(Vertex, u32), (Vertex, u32)> = HashMap::new();
    let mut seen: HashSet<(Vertex, u32)> = HashSet::from([(u, 0)]);
    let mut queue: VecDeque<(Vertex, u32)> = VecDeque::from([(u, 0u32)]);
    while let Some((x, mask)) = queue.pop_front() {
        for &(w, c) in &adj[x as usize] {
            let bit = 1u32 << (c - 1);
            if mask & bit != 0 {
                continue;
            }
            let state = (w, mask | bit);
            if !seen.insert(state) {
                continue;
            }
            parent.insert(state, (x, mask));
            if w == v {
                let mut path = vec![w];
                let mut cur = state;
                while cur.0 != u || cur.1 != 0 {
                    cur = parent[&cur];
                    path.push(cur.0);
                }
                path.reverse();
                return Ok(Some(path));
            }
            queue.push_back(state);
        }
    }
    Ok(None)
}

/// Why a pair of vertices defeats rainbow connectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RcWitness {
    /// v is in a different component than u.
    Disconnected { u: Vertex, v: Vertex },
    /// v is too far from u for any r-colored path: distance > r.
    Distance { u: Vertex, v: Vertex, distance: usize },
    /// v is connected to u but no path is rainbow.
    NoRainbowPath { u: Vertex, v: Vertex },
}

#[derive(Clone, Debug)]
pub struct RcReport {
    pub connected: bool,
    pub witness: Option<RcWitness>,
}

fn bfs_distances(g: &Graph, u: Vertex) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[u as usize] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for &w in g.neighbors(x) {
            if dist[w as usize] == usize::MAX {
                dist[w as usize] = dist[x as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Checks one source; returns the leftmost witness if the source fails.
fn source_witness(cg: &ColoredGraph, u: Vertex) -> Result<Option<RcWitness>> {
    let n = cg.n();
    let r = cg.r() as usize;
    let dist = bfs_distances(cg.graph(), u);
    if let Some(v) = (0..n).find(|&v| dist[v] == usize::MAX) {
        return Ok(Some(RcWitness::Disconnected { u, v: v as Vertex }));
    }
    // A rainbow path has at most r edges, so distance > r is already fatal
    // and skips the DP entirely.
    if let Some(v) = (0..n).find(|&v| dist[v] > r) {
        return Ok(Some(RcWitness::Distance {
            u,
            v: v as Vertex,
            distance: dist[v],
        }));
    }
    let reached = rainbow_reachable(cg, u)?;
    if let Some(v) = (0..n).find(|&v| !reached[v]) {
        return Ok(Some(RcWitness::NoRainbowPath { u, v: v as Vertex }));
    }
    Ok(None)
}

/// Decides whether every pair of vertices is joined by a rainbow path.
/// Sources are scanned in parallel with early exit; the reported witness is
/// the one for the lowest-index failing source.
pub fn is_rainbow_connected(cg: &ColoredGraph) -> Result<RcReport> {
    guard_r(cg.r())?;
    let n = cg.n();
    if n <= 1 {
        return Ok(RcReport { connected: true, witness: None });
    }
    let first = (0..n as Vertex)
        .into_par_iter()
        .find_map_first(|u| source_witness(cg, u).transpose())
        .transpose()?;
    Ok(RcReport { connected: first.is_none(), witness: first })
}

/// A small dominating core: few hubs, every outside vertex sharing a large
/// neighborhood with its hub.
#[derive(Clone, Debug)]
pub struct HubSet {
    /// Hub vertices, ascending.
    pub hubs: Vec<Vertex>,
    /// Per vertex: `None` for hubs, otherwise the assigned hub and the size
    /// of the shared neighborhood.
    pub assignment: Vec<Option<(Vertex, usize)>>,
}

/// Greedily builds a maximal set of vertices whose pairwise shared
/// neighborhoods stay below δ²n/4, then assigns every remaining vertex a hub
/// with which it shares at least δ²n/4 neighbors. On hosts of min degree
/// ≥ δn the set cannot exceed ⌈2/δ⌉ hubs; that bound is asserted.
pub fn build_hub_set(h: &Graph, delta: f64) -> Result<HubSet> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "delta must lie in (0, 1], got {delta}"
        )));
    }
    let n = h.n();
    let threshold = delta * delta * n as f64 / 4.0;
    let rows = AdjBitsets::build(h);

    let mut hubs: Vec<Vertex> = Vec::new();
    for v in 0..n as Vertex {
        let clashes = hubs
            .iter()
            .any(|&w| rows.shared_neighbors(v, w) as f64 >= threshold);
        if !clashes {
            hubs.push(v);
        }
    }

    let bound = (2.0 / delta).ceil() as usize;
    if hubs.len() > bound {
        return Err(Error::Internal(format!(
            "hub set has {} members, above the ceil(2/delta) = {bound} bound; the host's min \
             degree is likely below delta * n",
            hubs.len()
        )));
    }

    let hub_lookup: HashSet<Vertex> = hubs.iter().copied().collect();
    let mut assignment: Vec<Option<(Vertex, usize)>> = vec![None; n];
    for v in 0..n as Vertex {
        if hub_lookup.contains(&v) {
            continue;
        }
        let chosen = hubs
            .iter()
            .copied()
            .find_map(|s| {
                let shared = rows.shared_neighbors(v, s);
                (shared as f64 >= threshold).then_some((s, shared))
            })
            .ok_or_else(|| {
                Error::Internal(format!(
                    "vertex {v} shares too few neighbors with every hub; maximality is broken"
                ))
            })?;
        assignment[v as usize] = Some(chosen);
    }
    Ok(HubSet { hubs, assignment })
}

/// Counts length-3 paths u–u₀–v₀–v where {u,u₀} and {v,v₀} come from
/// `via_host`, {u₀,v₀} comes from `via_random`, and the three colors (taken
/// from `cg`) are pairwise distinct.
pub fn count_short_rainbow_paths(
    cg: &ColoredGraph,
    u: Vertex,
    v: Vertex,
    via_host: &Graph,
    via_random: &[Edge],
) -> Result<usize> {
    let n = cg.n();
    guard_vertex(n, u, "path end")?;
    guard_vertex(n, v, "path end")?;
    if u == v {
        return Ok(0);
    }
    let random_set: HashSet<Edge> = via_random.iter().copied().collect();
    let mut count = 0usize;
    for &u0 in via_host.neighbors(u) {
        if u0 == v {
            continue;
        }
        let c1 = cg.color_of(Edge::new(u, u0))?;
        for &v0 in via_host.neighbors(v) {
            if v0 == u || v0 == u0 {
                continue;
            }
            let mid = Edge::new(u0, v0);
            if !random_set.contains(&mid) {
                continue;
            }
            let c2 = cg.color_of(mid)?;
            let c3 = cg.color_of(Edge::new(v, v0))?;
            if c1 != c2 && c2 != c3 && c1 != c3 {
                count += 1;
            }
        }
    }
    Ok(count)
}
