//! Simulation library for randomly perturbed, randomly colored graphs.
//!
//! The model: start from a dense host graph `H` on `n` vertices, add `m`
//! uniformly random non-edges, then color every edge independently and
//! uniformly with one of `r` colors. On top of that model the crate provides
//!
//! - seeded host/perturbation/coloring generators ([`generators`]),
//! - connectivity and vertex-expansion checks ([`expansion`]),
//! - a Pósa rotation-extension Hamilton cycle solver with booster-edge
//!   consumption, rainbow subgraph extraction, and a full pipeline that packs
//!   edge-disjoint rainbow Hamilton cycles ([`hamiltonicity`]),
//! - exact rainbow-connectivity decisions for small color counts via a
//!   DP over color subsets ([`rainbow_connectivity`]),
//! - a Monte Carlo harness sweeping model parameters ([`experiments`]).
//!
//! Everything is deterministic given a seed: identical seeds produce
//! bit-identical graphs, cycles, and experiment records.

pub mod bitset;
pub mod expansion;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod hamiltonicity;
pub mod io;
pub mod rainbow_connectivity;
pub mod seed;
pub mod unionfind;

pub use graph::{ColoredGraph, Edge, EdgeSet, Graph, Vertex};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an operation's input was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A requested computation is infeasible at the given parameters.
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// A malformed graph/plan file.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// An internal invariant failed; indicates a violated precondition upstream.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
