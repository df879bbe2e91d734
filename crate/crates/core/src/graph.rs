//! Undirected graphs and edge colorings.
//!
//! Vertices are dense integers `0..n-1`. Edges are stored canonically as
//! `(min, max)` pairs and the edge list is kept sorted, so iteration order is
//! deterministic and independent of construction order. Graphs are treated as
//! immutable once built; all mutation happens through constructors.

use std::collections::HashMap;

use crate::{Error, Result};

pub type Vertex = u32;

/// Canonical undirected edge: `u() < v()` always holds.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Edge {
    a: Vertex,
    b: Vertex,
}

impl Edge {
    /// Builds the canonical form of `{u, v}`. Panics on self-loops.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert!(u != v, "self-loop {u}");
        if u < v {
            Edge { a: u, b: v }
        } else {
            Edge { a: v, b: u }
        }
    }

    pub fn u(&self) -> Vertex {
        self.a
    }

    pub fn v(&self) -> Vertex {
        self.b
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.a {
            self.b
        } else {
            assert!(x == self.b, "{x} is not an endpoint of {self:?}");
            self.a
        }
    }
}

impl From<(Vertex, Vertex)> for Edge {
    fn from((u, v): (Vertex, Vertex)) -> Self {
        Edge::new(u, v)
    }
}

/// An ordered sequence of distinct undirected edges.
///
/// Order is meaningful: booster edges are consumed in sequence order and
/// chunking cuts a permuted edge list into consecutive runs.
pub type EdgeSet = Vec<Edge>;

/// Undirected simple graph on vertices `0..n-1`.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    index: HashMap<Edge, u32>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Empty graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            index: HashMap::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicates are merged; endpoints are
    /// validated against `n`.
    pub fn from_edges<E: Into<Edge>>(n: usize, edges: impl IntoIterator<Item = E>) -> Result<Self> {
        let mut list: Vec<Edge> = Vec::new();
        for e in edges {
            let e = e.into();
            if e.v() as usize >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) has endpoint >= n = {n}",
                    e.u(),
                    e.v()
                )));
            }
            list.push(e);
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_dedup(n, list))
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for u in 0..n as Vertex {
            for v in (u + 1)..n as Vertex {
                edges.push(Edge::new(u, v));
            }
        }
        Self::from_sorted_dedup(n, edges)
    }

    /// Trusted constructor: `edges` must already be sorted and duplicate-free.
    pub(crate) fn from_sorted_dedup(n: usize, edges: Vec<Edge>) -> Self {
        let mut index = HashMap::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            index.insert(*e, i as u32);
            adj[e.u() as usize].push(e.v());
            adj[e.v() as usize].push(e.u());
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            index,
            adj,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical sorted order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.index.contains_key(&e)
    }

    /// Position of `e` in the sorted edge list, if present.
    pub fn edge_id(&self, e: Edge) -> Option<usize> {
        self.index.get(&e).map(|&i| i as usize)
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.adj[v].len()).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.adj[v].len()).max().unwrap_or(0)
    }

    /// Union of this graph with an extra edge set; idempotent for edges
    /// already present.
    pub fn union(&self, extra: &[Edge]) -> Result<Graph> {
        for e in extra {
            if e.v() as usize >= self.n {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) has endpoint >= n = {}",
                    e.u(),
                    e.v(),
                    self.n
                )));
            }
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(extra);
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_sorted_dedup(self.n, edges))
    }

    /// Number of vertex pairs not present as edges.
    pub fn complement_count(&self) -> usize {
        self.n * (self.n.saturating_sub(1)) / 2 - self.edges.len()
    }

    /// All pairs of distinct vertices not present as edges.
    pub fn complement_pairs(&self) -> EdgeSet {
        let mut out = Vec::with_capacity(self.n * (self.n.saturating_sub(1)) / 2 - self.edges.len());
        for u in 0..self.n as Vertex {
            for v in (u + 1)..self.n as Vertex {
                let e = Edge::new(u, v);
                if !self.index.contains_key(&e) {
                    out.push(e);
                }
            }
        }
        out
    }

    /// Restriction of the graph to the given edge subset (same vertex set).
    pub fn subgraph(&self, edges: &[Edge]) -> Result<Graph> {
        for e in edges {
            if !self.has_edge(*e) {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) not present in graph",
                    e.u(),
                    e.v()
                )));
            }
        }
        Graph::from_edges(self.n, edges.iter().copied())
    }
}

pub type Color = u32;

/// A graph together with a total edge coloring into colors `1..=r`.
///
/// Color 0 is reserved as the "uncolored" sentinel and only appears in
/// intermediate states and in files with `r = 0`.
#[derive(Clone, Debug)]
pub struct ColoredGraph {
    graph: Graph,
    /// Parallel to `graph.edges()`.
    colors: Vec<Color>,
    r: u32,
}

impl ColoredGraph {
    /// Wraps a graph with a per-edge color vector aligned to `graph.edges()`.
    pub fn new(graph: Graph, colors: Vec<Color>, r: u32) -> Result<Self> {
        if colors.len() != graph.edge_count() {
            return Err(Error::InvalidInput(format!(
                "{} colors for {} edges",
                colors.len(),
                graph.edge_count()
            )));
        }
        for (i, &c) in colors.iter().enumerate() {
            if c < 1 || c > r {
                let e = graph.edges()[i];
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) has color {c}, expected 1..={r}",
                    e.u(),
                    e.v()
                )));
            }
        }
        Ok(ColoredGraph { graph, colors, r })
    }

    /// Wraps a graph with every edge at the color-0 sentinel (`r = 0`).
    pub fn uncolored(graph: Graph) -> Self {
        let colors = vec![0; graph.edge_count()];
        ColoredGraph { graph, colors, r: 0 }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Color of an edge that must be present.
    pub fn color_of(&self, e: Edge) -> Result<Color> {
        self.graph
            .edge_id(e)
            .map(|i| self.colors[i])
            .ok_or_else(|| {
                Error::InvalidInput(format!("edge ({}, {}) not present", e.u(), e.v()))
            })
    }

    /// True iff the listed edges carry pairwise distinct colors.
    /// The empty set is vacuously rainbow.
    pub fn is_rainbow(&self, edges: &[Edge]) -> Result<bool> {
        let mut seen = vec![false; self.r as usize + 1];
        for &e in edges {
            let c = self.color_of(e)? as usize;
            if seen[c] {
                return Ok(false);
            }
            seen[c] = true;
        }
        Ok(true)
    }

    /// Colored restriction to an edge subset of the underlying graph.
    pub fn restrict(&self, edges: &[Edge]) -> Result<ColoredGraph> {
        let sub = self.graph.subgraph(edges)?;
        let colors = sub
            .edges()
            .iter()
            .map(|&e| self.colors[self.graph.edge_id(e).unwrap()])
            .collect();
        Ok(ColoredGraph {
            graph: sub,
            colors,
            r: self.r,
        })
    }

    /// Adjacency with edge colors attached: for each vertex, ascending
    /// `(neighbor, color)` pairs.
    pub fn colored_adjacency(&self) -> Vec<Vec<(Vertex, Color)>> {
        let mut adj = vec![Vec::new(); self.n()];
        for (i, e) in self.graph.edges().iter().enumerate() {
            let c = self.colors[i];
            adj[e.u() as usize].push((e.v(), c));
            adj[e.v() as usize].push((e.u(), c));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n as Vertex - 1).map(|i| Edge::new(i, i + 1))).unwrap()
    }

    #[test]
    fn union_closes_path_into_triangle() {
        let g = path(3);
        let t = g.union(&[Edge::new(2, 0)]).unwrap();
        assert_eq!(t.edge_count(), 3);
        for v in 0..3 {
            assert_eq!(t.degree(v), 2);
        }
    }

    #[test]
    fn union_with_empty_set_is_identity() {
        let g = path(5);
        let u = g.union(&[]).unwrap();
        assert_eq!(u.edges(), g.edges());
    }

    #[test]
    fn union_all_pairs_gives_complete_graph() {
        let g = Graph::empty(4);
        let all: Vec<Edge> = Graph::complete(4).edges().to_vec();
        let k4 = g.union(&all).unwrap();
        assert_eq!(k4.edge_count(), 6);
        let mut degs: Vec<usize> = (0..4).map(|v| k4.degree(v)).collect();
        degs.sort();
        assert_eq!(degs, vec![3, 3, 3, 3]);
    }

    #[test]
    fn union_rejects_out_of_range_endpoint() {
        let g = path(3);
        assert!(g.union(&[Edge::new(1, 7)]).is_err());
    }

    #[test]
    fn complement_of_complete_is_empty() {
        assert!(Graph::complete(4).complement_pairs().is_empty());
    }

    #[test]
    fn complement_of_empty_graph_on_three_vertices() {
        assert_eq!(Graph::empty(3).complement_pairs().len(), 3);
    }

    #[test]
    fn complement_of_five_cycle_is_the_chords() {
        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        // Oracle: enumerate all 10 pairs and drop the cycle edges.
        let mut expected = Vec::new();
        for u in 0..5u32 {
            for v in (u + 1)..5 {
                let e = Edge::new(u, v);
                if !c5.has_edge(e) {
                    expected.push(e);
                }
            }
        }
        assert_eq!(expected.len(), 5);
        assert_eq!(c5.complement_pairs(), expected);
    }

    #[test]
    fn rainbow_checks() {
        let g = path(4);
        let cg = ColoredGraph::new(g.clone(), vec![1, 2, 3], 3).unwrap();
        assert!(cg.is_rainbow(cg.graph().edges()).unwrap());
        assert!(cg.is_rainbow(&[]).unwrap());
        let cg2 = ColoredGraph::new(g, vec![1, 2, 1], 3).unwrap();
        assert!(!cg2.is_rainbow(cg2.graph().edges()).unwrap());
        assert!(cg2
            .is_rainbow(&[Edge::new(0, 1), Edge::new(1, 2)])
            .unwrap());
    }

    #[test]
    fn is_rainbow_rejects_missing_edge() {
        let cg = ColoredGraph::new(path(3), vec![1, 2], 2).unwrap();
        assert!(cg.is_rainbow(&[Edge::new(0, 2)]).is_err());
    }

    #[test]
    fn colored_graph_rejects_out_of_range_color() {
        assert!(ColoredGraph::new(path(3), vec![1, 3], 2).is_err());
        assert!(ColoredGraph::new(path(3), vec![0, 1], 2).is_err());
    }

    #[test]
    fn adjacency_matches_edge_set() {
        let g = Graph::from_edges(5, [(0, 3), (1, 3), (2, 4), (0, 1)]).unwrap();
        for u in 0..5u32 {
            for v in 0..5u32 {
                if u == v {
                    continue;
                }
                let listed = g.neighbors(u).contains(&v);
                assert_eq!(listed, g.has_edge(Edge::new(u, v)));
            }
        }
        for v in 0..5u32 {
            assert_eq!(g.degree(v), g.neighbors(v).len());
        }
    }
}
