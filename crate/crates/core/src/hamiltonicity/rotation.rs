//! Rotation-extension Hamilton cycle solver with booster consumption.
//!
//! The solver keeps one working path and repeatedly: extends it greedily,
//! computes the set END(x;P) of endpoints reachable by rotations that fix
//! the endpoint x, and closes or lengthens through any working-graph edge
//! that connects the endpoint families. When no rotation makes progress it
//! consumes booster edges in sequence order; a booster that touches the
//! rotation structure restarts the search, all other boosters just join the
//! working graph.
//!
//! Everything is deterministic: neighbors are scanned in ascending order,
//! rotation closure is breadth-first, and ties break toward lower vertex
//! indices.

use std::collections::HashMap;
use std::collections::VecDeque;

use super::{Exhausted, HamiltonCycle, SolveOutcome, StuckReason};
use crate::graph::{Edge, Graph, Vertex};
use crate::unionfind::UnionFind;
use crate::{Error, Result};

/// One discovered endpoint in the rotation tree. The witness path is encoded
/// as the pivot chain back to the root and replayed on demand.
#[derive(Clone, Copy, Debug)]
struct EndNode {
    endpoint: Vertex,
    parent: usize,
    pivot: Vertex,
}

/// Replays a pivot chain: starting from `base_path`, each pivot v rotates
/// the current path p0..pL by reversing the suffix after v, moving the
/// endpoint to v's old successor. The fixed endpoint `base_path[0]` never
/// moves.
fn materialize_path(base_path: &[Vertex], nodes: &[EndNode], node_of: &[usize], z: Vertex) -> Vec<Vertex> {
    let mut pivots = Vec::new();
    let mut k = node_of[z as usize];
    assert!(k != usize::MAX, "{z} is not a recorded endpoint");
    while k != 0 {
        pivots.push(nodes[k].pivot);
        k = nodes[k].parent;
    }
    pivots.reverse();

    let mut path = base_path.to_vec();
    let cap = path.iter().map(|&v| v as usize + 1).max().unwrap_or(0);
    let mut pos_of = vec![u32::MAX; cap];
    for (i, &v) in path.iter().enumerate() {
        pos_of[v as usize] = i as u32;
    }
    for v in pivots {
        let i = pos_of[v as usize] as usize;
        path[i + 1..].reverse();
        for (j, &w) in path.iter().enumerate().skip(i + 1) {
            pos_of[w as usize] = j as u32;
        }
    }
    path
}

/// A completed rotation closure: every reachable endpoint with its witness
/// encoding, relative to `base_path`.
struct ClosureSnapshot {
    base_path: Vec<Vertex>,
    nodes: Vec<EndNode>,
    /// endpoint -> index into `nodes`, usize::MAX when unreached.
    node_of: Vec<usize>,
}

impl ClosureSnapshot {
    fn contains(&self, v: Vertex) -> bool {
        self.node_of[v as usize] != usize::MAX
    }

    fn endpoints(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.nodes.iter().map(|n| n.endpoint)
    }

    fn materialize(&self, z: Vertex) -> Vec<Vertex> {
        materialize_path(&self.base_path, &self.nodes, &self.node_of, z)
    }
}

/// What a single rotation-closure run produced.
enum ClosureRun {
    /// A derived path's endpoint had an off-path neighbor; the returned path
    /// is one vertex longer than the input.
    Extended(Vec<Vertex>),
    /// A derived path whose endpoint is adjacent to the fixed end; the
    /// vertex sequence is a cycle over the path's vertex set.
    CycleFound(Vec<Vertex>),
    /// Closure ran to completion (or hit the budget) without progress.
    Complete(ClosureSnapshot),
}

/// Progress step inside the solve loop.
enum Step {
    Hamilton(HamiltonCycle),
    /// The working path changed (extension or cycle absorption).
    Progress,
}

/// Mutable solver state over a fixed base graph plus consumed boosters.
pub struct RotationState {
    n: usize,
    /// Working adjacency, base ∪ consumed boosters, each row sorted.
    adj: Vec<Vec<Vertex>>,
    path: Vec<Vertex>,
    on_path: Vec<bool>,
    boosters_consumed: usize,
    /// Max rotation-tree expansions per closure run.
    rotation_budget: usize,
    /// Snapshot of the last stuck closure; cleared on path change.
    last_closure: Option<ClosureSnapshot>,
    /// Lazily computed second-layer closures keyed by first-layer endpoint.
    /// Cleared with `last_closure`; entries may predate recent boosters,
    /// which only costs missed shortcuts (replay stays valid because the
    /// working graph never loses edges).
    second_layer: HashMap<Vertex, ClosureSnapshot>,
}

impl RotationState {
    pub fn new(base: &Graph) -> Result<Self> {
        if base.n() < 3 {
            return Err(Error::InvalidInput(format!(
                "Hamilton cycles need n >= 3, got n = {}",
                base.n()
            )));
        }
        let n = base.n();
        let mut on_path = vec![false; n];
        on_path[0] = true;
        Ok(RotationState {
            n,
            adj: (0..n as Vertex).map(|v| base.neighbors(v).to_vec()).collect(),
            path: vec![0],
            on_path,
            boosters_consumed: 0,
            rotation_budget: usize::MAX,
            last_closure: None,
            second_layer: HashMap::new(),
        })
    }

    pub fn with_rotation_budget(mut self, budget: usize) -> Self {
        self.rotation_budget = budget.max(1);
        self
    }

    pub fn path(&self) -> &[Vertex] {
        &self.path
    }

    pub fn boosters_consumed(&self) -> usize {
        self.boosters_consumed
    }

    /// Endpoints of the last stuck closure, ascending. Empty before the
    /// solver first sticks.
    pub fn end_set(&self) -> Vec<Vertex> {
        let mut ends: Vec<Vertex> = self
            .last_closure
            .as_ref()
            .map(|c| c.endpoints().collect())
            .unwrap_or_default();
        ends.sort_unstable();
        ends
    }

    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Inserts an edge into the working graph; idempotent.
    fn add_edge(&mut self, e: Edge) {
        if let Err(i) = self.adj[e.u() as usize].binary_search(&e.v()) {
            self.adj[e.u() as usize].insert(i, e.v());
            let j = self.adj[e.v() as usize].binary_search(&e.u()).unwrap_err();
            self.adj[e.v() as usize].insert(j, e.u());
        }
    }

    fn set_path(&mut self, path: Vec<Vertex>) {
        self.on_path.fill(false);
        for &v in &path {
            self.on_path[v as usize] = true;
        }
        self.path = path;
        self.last_closure = None;
        self.second_layer.clear();
    }

    fn first_off_path_neighbor(&self, v: Vertex) -> Option<Vertex> {
        self.adj[v as usize]
            .iter()
            .copied()
            .find(|&w| !self.on_path[w as usize])
    }

    /// Extends both ends of the working path while possible.
    fn greedy_extend(&mut self) {
        loop {
            let tail = *self.path.last().unwrap();
            if let Some(w) = self.first_off_path_neighbor(tail) {
                self.path.push(w);
                self.on_path[w as usize] = true;
                continue;
            }
            let head = self.path[0];
            if let Some(w) = self.first_off_path_neighbor(head) {
                self.path.reverse();
                self.path.push(w);
                self.on_path[w as usize] = true;
                continue;
            }
            break;
        }
        self.last_closure = None;
        self.second_layer.clear();
    }

    /// Breadth-first rotation closure over `base_path`, fixing its first
    /// vertex. Stops early on any extension or cycle discovery.
    fn run_closure(&self, base_path: &[Vertex]) -> ClosureRun {
        let x = base_path[0];
        let root_end = *base_path.last().unwrap();
        let mut node_of = vec![usize::MAX; self.n];
        let mut nodes = vec![EndNode { endpoint: root_end, parent: usize::MAX, pivot: 0 }];
        node_of[root_end as usize] = 0;

        let mut queue: VecDeque<usize> = VecDeque::from([0usize]);
        let mut pos_of = vec![u32::MAX; self.n];
        let mut expansions = 0usize;
        let mut budget_hit = false;
        while let Some(k) = queue.pop_front() {
            if expansions >= self.rotation_budget {
                budget_hit = true;
                break;
            }
            expansions += 1;

            let p = materialize_path(base_path, &nodes, &node_of, nodes[k].endpoint);
            let y = *p.last().unwrap();
            if let Some(w) = self.first_off_path_neighbor(y) {
                let mut longer = p;
                longer.push(w);
                return ClosureRun::Extended(longer);
            }
            if self.has_edge(y, x) {
                return ClosureRun::CycleFound(p);
            }
            for (i, &v) in p.iter().enumerate() {
                pos_of[v as usize] = i as u32;
            }
            for &v in &self.adj[y as usize] {
                let i = pos_of[v as usize] as usize;
                debug_assert!(i < p.len(), "neighbor {v} of a stuck endpoint is off the path");
                // Pivoting on the predecessor would re-derive y itself.
                if i + 2 >= p.len() {
                    continue;
                }
                let z = p[i + 1];
                if node_of[z as usize] == usize::MAX {
                    node_of[z as usize] = nodes.len();
                    nodes.push(EndNode { endpoint: z, parent: k, pivot: v });
                    queue.push_back(nodes.len() - 1);
                }
            }
        }

        let snapshot = ClosureSnapshot { base_path: base_path.to_vec(), nodes, node_of };
        if !budget_hit {
            self.assert_posa_bound(&snapshot);
        }
        ClosureRun::Complete(snapshot)
    }

    /// Sanity check from Pósa's lemma: a complete, extension-free closure
    /// has |N(END)| < 2|END| in the working graph.
    fn assert_posa_bound(&self, snapshot: &ClosureSnapshot) {
        let mut is_end = vec![false; self.n];
        let mut in_nbhd = vec![false; self.n];
        let mut count_end = 0usize;
        for z in snapshot.endpoints() {
            is_end[z as usize] = true;
            count_end += 1;
        }
        let mut count_nbhd = 0usize;
        for z in snapshot.endpoints() {
            for &w in &self.adj[z as usize] {
                if !is_end[w as usize] && !in_nbhd[w as usize] {
                    in_nbhd[w as usize] = true;
                    count_nbhd += 1;
                }
            }
        }
        assert!(
            count_nbhd < 2 * count_end,
            "rotation closure stuck but |N(END)| = {count_nbhd} >= 2|END| = {}",
            2 * count_end
        );
    }

    /// Turns a closed cycle (vertex sequence whose last vertex is adjacent
    /// to its first) into a Hamilton cycle or a strictly longer path.
    fn close_cycle(&mut self, cycle: Vec<Vertex>) -> Result<Step> {
        debug_assert!(self.has_edge(*cycle.last().unwrap(), cycle[0]));
        if cycle.len() == self.n {
            return Ok(Step::Hamilton(HamiltonCycle::new(cycle)?));
        }
        // Reopen at the lowest-index cycle vertex with an off-cycle neighbor;
        // one exists because the base graph is connected.
        let mut opener: Option<(Vertex, Vertex)> = None;
        for w in 0..self.n as Vertex {
            if !self.on_path[w as usize] {
                continue;
            }
            if let Some(u) = self.first_off_path_neighbor(w) {
                opener = Some((w, u));
                break;
            }
        }
        let (w, u) = opener.ok_or_else(|| {
            Error::Internal("closed a non-spanning cycle with no outside neighbor".into())
        })?;
        let j = cycle.iter().position(|&v| v == w).unwrap();
        let mut path = Vec::with_capacity(cycle.len() + 1);
        path.push(u);
        path.extend_from_slice(&cycle[j..]);
        path.extend_from_slice(&cycle[..j]);
        self.set_path(path);
        Ok(Step::Progress)
    }

    /// Primary closure from the working path; fills `last_closure` when
    /// stuck and returns None.
    fn closure_step(&mut self) -> Result<Option<Step>> {
        match self.run_closure(&self.path.clone()) {
            ClosureRun::Extended(p) => {
                self.set_path(p);
                Ok(Some(Step::Progress))
            }
            ClosureRun::CycleFound(c) => Ok(Some(self.close_cycle(c)?)),
            ClosureRun::Complete(snapshot) => {
                self.last_closure = Some(snapshot);
                Ok(None)
            }
        }
    }

    /// Reacts to a just-consumed booster {a, b}. Progress cases, tried for
    /// both orientations with a a recorded endpoint:
    ///   - b is the fixed end: the derived path closes into a cycle;
    ///   - b off path: the derived path extends through the booster;
    ///   - b in the second-layer end set END(a; P(x,a)): the doubly-rotated
    ///     path has ends a and b, and the booster closes it into a cycle.
    fn try_booster(&mut self, e: Edge) -> Result<Option<Step>> {
        let Some(closure) = self.last_closure.take() else {
            return Ok(None);
        };
        let x = closure.base_path[0];
        let mut result = None;
        for (p, q) in [(e.u(), e.v()), (e.v(), e.u())] {
            if !closure.contains(p) {
                continue;
            }
            let path_p = closure.materialize(p);
            if q == x {
                result = Some(self.close_cycle(path_p)?);
                break;
            }
            if !self.on_path[q as usize] {
                let mut longer = path_p;
                longer.push(q);
                self.set_path(longer);
                result = Some(Step::Progress);
                break;
            }
            // Second layer: fix p, rotate the x end.
            if !self.second_layer.contains_key(&p) {
                let mut reversed = path_p.clone();
                reversed.reverse();
                match self.run_closure(&reversed) {
                    ClosureRun::Extended(longer) => {
                        self.set_path(longer);
                        result = Some(Step::Progress);
                        break;
                    }
                    ClosureRun::CycleFound(c) => {
                        result = Some(self.close_cycle(c)?);
                        break;
                    }
                    ClosureRun::Complete(snapshot) => {
                        self.second_layer.insert(p, snapshot);
                    }
                }
            }
            let second = &self.second_layer[&p];
            if second.contains(q) {
                let doubly_rotated = second.materialize(q);
                result = Some(self.close_cycle(doubly_rotated)?);
                break;
            }
        }
        if result.is_none() {
            self.last_closure = Some(closure);
        } else {
            self.second_layer.clear();
        }
        Ok(result)
    }

    fn disconnection(&self) -> Option<StuckReason> {
        let mut uf = UnionFind::new(self.n);
        for (u, row) in self.adj.iter().enumerate() {
            for &v in row {
                uf.union(u as Vertex, v);
            }
        }
        if uf.components() <= 1 {
            return None;
        }
        let components = uf.components();
        let witness = (1..self.n as Vertex)
            .find(|&v| !uf.connected(0, v))
            .expect("multiple components imply a vertex apart from 0");
        Some(StuckReason::Disconnected { components, witness: (0, witness) })
    }
}

/// Runs the rotation-extension loop, consuming `boosters` in order.
pub fn rotations_close(state: &mut RotationState, boosters: &[Edge]) -> Result<SolveOutcome> {
    if let Some(reason) = state.disconnection() {
        state.greedy_extend();
        return Ok(SolveOutcome::Exhausted(Exhausted {
            longest_path: state.path.len(),
            boosters_consumed: state.boosters_consumed,
            reason,
        }));
    }

    let mut next = 0usize;
    loop {
        state.greedy_extend();
        let step = match state.closure_step()? {
            Some(s) => Some(s),
            None => {
                // Stuck: consume boosters until one makes progress.
                let mut found = None;
                while next < boosters.len() {
                    let e = boosters[next];
                    next += 1;
                    state.add_edge(e);
                    state.boosters_consumed += 1;
                    if let Some(s) = state.try_booster(e)? {
                        found = Some(s);
                        break;
                    }
                }
                found
            }
        };
        match step {
            Some(Step::Hamilton(c)) => return Ok(SolveOutcome::Cycle(c)),
            Some(Step::Progress) => continue,
            None => {
                return Ok(SolveOutcome::Exhausted(Exhausted {
                    longest_path: state.path.len(),
                    boosters_consumed: state.boosters_consumed,
                    reason: StuckReason::BoostersSpent,
                }));
            }
        }
    }
}

/// Solves on base = g ∪ q1 with booster sequence q2. Any returned cycle is
/// re-verified against g ∪ q1 ∪ consumed(q2) before it leaves this function.
pub fn find_hamilton(g: &Graph, q1: &[Edge], q2: &[Edge]) -> Result<SolveOutcome> {
    find_hamilton_with_budget(g, q1, q2, usize::MAX)
}

pub fn find_hamilton_with_budget(
    g: &Graph,
    q1: &[Edge],
    q2: &[Edge],
    rotation_budget: usize,
) -> Result<SolveOutcome> {
    let base = g.union(q1)?;
    let mut state = RotationState::new(&base)?.with_rotation_budget(rotation_budget);
    let outcome = rotations_close(&mut state, q2)?;
    if let SolveOutcome::Cycle(ref c) = outcome {
        let consumed = state.boosters_consumed().min(q2.len());
        let audit = base.union(&q2[..consumed])?;
        c.verify(&audit)
            .map_err(|e| Error::Internal(format!("solver produced an unverifiable cycle: {e}")))?;
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: usize) -> Graph {
        Graph::from_edges(
            n,
            (0..n as Vertex).map(|i| Edge::new(i, (i + 1) % n as Vertex)),
        )
        .unwrap()
    }

    #[test]
    fn five_cycle_closes_without_boosters() {
        let c5 = cycle_graph(5);
        let mut state = RotationState::new(&c5).unwrap();
        let out = rotations_close(&mut state, &[]).unwrap();
        let c = out.cycle().expect("C5 is its own Hamilton cycle");
        c.verify(&c5).unwrap();
        assert_eq!(state.boosters_consumed(), 0);
    }

    #[test]
    fn path_plus_closing_booster() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut state = RotationState::new(&p4).unwrap();
        let out = rotations_close(&mut state, &[Edge::new(3, 0)]).unwrap();
        let c = out.cycle().expect("one booster closes the path");
        assert_eq!(state.boosters_consumed(), 1);
        let audited = p4.union(&[Edge::new(3, 0)]).unwrap();
        c.verify(&audited).unwrap();
    }

    #[test]
    fn complete_graph_needs_no_boosters() {
        for n in [3usize, 4, 7, 12, 60] {
            let g = Graph::complete(n);
            let out = find_hamilton(&g, &[], &[]).unwrap();
            out.cycle()
                .unwrap_or_else(|| panic!("K{n} must yield a cycle"))
                .verify(&g)
                .unwrap();
        }
    }

    #[test]
    fn disjoint_cliques_report_disconnection() {
        let mut edges = Vec::new();
        for base in [0u32, 5] {
            for u in 0..5 {
                for v in (u + 1)..5 {
                    edges.push(Edge::new(base + u, base + v));
                }
            }
        }
        let g = Graph::from_edges(10, edges).unwrap();
        let out = find_hamilton(&g, &[], &[]).unwrap();
        match out {
            SolveOutcome::Exhausted(ex) => match ex.reason {
                StuckReason::Disconnected { components, witness } => {
                    assert_eq!(components, 2);
                    assert!(witness.0 < 5 && witness.1 >= 5);
                }
                StuckReason::BoostersSpent => panic!("expected disconnection"),
            },
            SolveOutcome::Cycle(_) => panic!("disconnected graph cannot be Hamiltonian"),
        }
    }

    #[test]
    fn booster_out_of_end_set_is_consumed_silently() {
        // Path 0-1-2-3-4; END from endpoint 4 never includes vertex 1's
        // side until rotations allow, so a booster between interior vertices
        // is consumed without progress, then {4,0} closes.
        let p5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let boosters = vec![Edge::new(1, 3), Edge::new(4, 0)];
        let mut state = RotationState::new(&p5).unwrap();
        let out = rotations_close(&mut state, &boosters).unwrap();
        assert!(out.is_cycle());
        assert_eq!(state.boosters_consumed(), 2);
    }

    #[test]
    fn rotation_recovers_hidden_extension() {
        // P5 0-1-2-3-4 plus chord {1,4} plus pendant {2,5}. Greedy sticks on
        // 0-1-2-3-4 with 5 unreached; rotating on the chord derives the path
        // 0-1-4-3-2 whose endpoint reaches 5. The pendant forbids a cycle,
        // so the expected outcome is Exhausted with a spanning path.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 4), (2, 5)]).unwrap();
        let out = find_hamilton(&g, &[], &[]).unwrap();
        match out {
            SolveOutcome::Exhausted(ex) => assert_eq!(ex.longest_path, 6),
            SolveOutcome::Cycle(_) => panic!("pendant vertex forbids a Hamilton cycle"),
        }
    }

    #[test]
    fn absorption_reopens_small_cycle() {
        // C5 on 0..5 plus pendant {2,5}. Greedy sticks on 0-1-2-3-4, the
        // closure finds the cycle edge {4,0}, and the non-spanning 5-cycle
        // must be reopened at vertex 2 to pick up 5. No spanning cycle
        // exists, but the final path covers all six vertices.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 5)]).unwrap();
        let out = find_hamilton(&g, &[], &[]).unwrap();
        match out {
            SolveOutcome::Exhausted(ex) => assert_eq!(ex.longest_path, 6),
            SolveOutcome::Cycle(_) => panic!("pendant vertex forbids a Hamilton cycle"),
        }
    }

    #[test]
    fn end_set_matches_hand_rotation() {
        // Path 0-1-2-3 with chord {1,3}: from the stuck path 0-1-2-3 the
        // only rotation pivots on 1 and derives endpoint 2, so
        // END(0; P) = {2, 3}.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
        let mut state = RotationState::new(&g).unwrap();
        let out = rotations_close(&mut state, &[]).unwrap();
        assert!(!out.is_cycle());
        assert_eq!(state.end_set(), vec![2, 3]);
    }

    #[test]
    fn rejects_tiny_graphs() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(matches!(RotationState::new(&g), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn booster_into_second_layer_closes() {
        // P8 0-..-7 with chords {1,4} and {3,6}. Greedy sticks on the full
        // path; booster {0,2} joins the working graph without progress, and
        // booster {5,7} only helps after rotating both ends (endpoint 7 is
        // in END, endpoint 5 appears in the second-layer closure), yielding
        // the spanning cycle 7-6-3-2-0-1-4-5.
        let g = Graph::from_edges(
            8,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 4), (3, 6)],
        )
        .unwrap();
        let boosters = vec![Edge::new(0, 2), Edge::new(5, 7), Edge::new(7, 0)];
        let mut state = RotationState::new(&g).unwrap();
        let out = rotations_close(&mut state, &boosters).unwrap();
        let c = out.cycle().expect("two boosters suffice");
        assert_eq!(c.len(), 8);
        assert_eq!(state.boosters_consumed(), 2);
        let audited = g.union(&boosters[..2]).unwrap();
        c.verify(&audited).unwrap();
    }
}
