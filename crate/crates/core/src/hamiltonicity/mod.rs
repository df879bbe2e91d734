//! Hamilton cycle search and rainbow cycle packing.
//!
//! [`rotation`] holds the rotation-extension solver with booster consumption;
//! [`packing`] holds the rainbow partition, chunk filter, and the end-to-end
//! packing pipeline. Types shared by both live here.

pub mod packing;
pub mod rotation;

pub use packing::{
    chunk_and_filter, extract_rainbow_parts, pack_rainbow_hamilton, ChunkSelection, PackParams,
    PackedCycle, RainbowPacking, RainbowPart, RainbowParts,
};
pub use rotation::{find_hamilton, find_hamilton_with_budget, rotations_close, RotationState};

use crate::graph::{ColoredGraph, Edge, Graph, Vertex};
use crate::{Error, Result};

/// A Hamilton cycle as a vertex order; the wrap-around edge is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonCycle {
    order: Vec<Vertex>,
}

impl HamiltonCycle {
    /// Wraps a vertex order after checking it is a permutation of `0..len`.
    /// Edge membership is the certifying graph's business; see [`Self::verify`].
    pub fn new(order: Vec<Vertex>) -> Result<Self> {
        if order.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "a cycle needs at least 3 vertices, got {}",
                order.len()
            )));
        }
        let mut seen = vec![false; order.len()];
        for &v in &order {
            let slot = seen.get_mut(v as usize).ok_or_else(|| {
                Error::InvalidInput(format!("vertex {v} out of range for n = {}", order.len()))
            })?;
            if *slot {
                return Err(Error::InvalidInput(format!("vertex {v} repeated")));
            }
            *slot = true;
        }
        Ok(HamiltonCycle { order })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The n cycle edges, including the wrap-around edge.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.order.len())
            .map(move |i| Edge::new(self.order[i], self.order[(i + 1) % self.order.len()]))
    }

    /// Independent verifier: spans the certifying graph and uses only its
    /// edges.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if self.order.len() != g.n() {
            return Err(Error::InvalidInput(format!(
                "cycle covers {} of {} vertices",
                self.order.len(),
                g.n()
            )));
        }
        for e in self.edges() {
            if !g.has_edge(e) {
                return Err(Error::InvalidInput(format!(
                    "cycle edge ({}, {}) absent from certifying graph",
                    e.u(),
                    e.v()
                )));
            }
        }
        Ok(())
    }

    /// [`Self::verify`] plus pairwise-distinct edge colors.
    pub fn verify_rainbow(&self, cg: &ColoredGraph) -> Result<()> {
        self.verify(cg.graph())?;
        let edges: Vec<Edge> = self.edges().collect();
        if !cg.is_rainbow(&edges)? {
            return Err(Error::InvalidInput("cycle repeats a color".into()));
        }
        Ok(())
    }
}

/// Why the solver stopped without a Hamilton cycle.
#[derive(Clone, Debug)]
pub enum StuckReason {
    /// The base graph splits into this many components; the witness pair
    /// lies in two different ones.
    Disconnected {
        components: usize,
        witness: (Vertex, Vertex),
    },
    /// Every booster was consumed without closing a spanning cycle.
    BoostersSpent,
}

/// Terminal solver state short of a Hamilton cycle.
#[derive(Clone, Debug)]
pub struct Exhausted {
    /// Vertices on the longest path found.
    pub longest_path: usize,
    pub boosters_consumed: usize,
    pub reason: StuckReason,
}

/// Result of a solve attempt. The solver is one-sided: `Exhausted` is not a
/// non-existence certificate.
#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Cycle(HamiltonCycle),
    Exhausted(Exhausted),
}

impl SolveOutcome {
    pub fn cycle(&self) -> Option<&HamiltonCycle> {
        match self {
            SolveOutcome::Cycle(c) => Some(c),
            SolveOutcome::Exhausted(_) => None,
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, SolveOutcome::Cycle(_))
    }
}
