//! Rainbow partition, chunk filtering, and the end-to-end packing pipeline.
//!
//! `extract_rainbow_parts` carves edge-disjoint rainbow subgraphs out of the
//! sparse host half; `chunk_and_filter` turns the dense remainder into
//! per-part rainbow edge supplies; `pack_rainbow_hamilton` chains both into
//! per-part Hamilton searches and verifies every cycle before returning it.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use super::rotation::{rotations_close, RotationState};
use super::{Exhausted, HamiltonCycle, SolveOutcome};
use crate::generators::{split_host, theta};
use crate::graph::{Color, ColoredGraph, Edge, Graph, Vertex};
use crate::seed;
use crate::{Error, Result};

/// One rainbow part: an edge-disjoint subgraph claimed for a single cycle
/// search.
#[derive(Clone, Debug)]
pub struct RainbowPart {
    pub graph: Graph,
    /// Distinct colors used by the part's edges, ascending.
    pub colors: Vec<Color>,
    /// Vertices whose degree in this part fell short of k, with the degree
    /// actually achieved.
    pub deficiencies: Vec<(Vertex, usize)>,
}

impl RainbowPart {
    pub fn color_set(&self) -> HashSet<Color> {
        self.colors.iter().copied().collect()
    }
}

/// Output of [`extract_rainbow_parts`].
#[derive(Clone, Debug)]
pub struct RainbowParts {
    pub parts: Vec<RainbowPart>,
}

impl RainbowParts {
    /// True when no part has a degree deficiency.
    pub fn fully_saturated(&self) -> bool {
        self.parts.iter().all(|p| p.deficiencies.is_empty())
    }
}

/// Greedily partitions edges of `h_prime` into up to `t` edge-disjoint
/// rainbow subgraphs, aiming for per-vertex degree `k` in each part.
///
/// Parts are built one at a time. For each part the vertices are visited in
/// a fresh random order; a vertex claims unclaimed incident edges (ascending
/// neighbor order) whose colors the part has not used, until its degree in
/// the part reaches `k`. Edges claimed from the far endpoint count toward a
/// vertex's degree, so a part never exceeds `k * n` edges while degrees may
/// land anywhere in `[k, 2k]` where the host allows.
pub fn extract_rainbow_parts(
    h_prime: &ColoredGraph,
    t: usize,
    k: usize,
    rng: &mut impl Rng,
) -> Result<RainbowParts> {
    let g = h_prime.graph();
    let n = g.n();
    let all_colors = h_prime.colors();
    let mut claimed = vec![false; g.edge_count()];
    let mut order: Vec<Vertex> = (0..n as Vertex).collect();
    let mut parts = Vec::with_capacity(t);

    for _ in 0..t {
        order.shuffle(rng);
        let mut used: HashSet<Color> = HashSet::new();
        let mut degree = vec![0usize; n];
        let mut edges: Vec<Edge> = Vec::new();
        for &v in &order {
            for &w in g.neighbors(v) {
                if degree[v as usize] >= k {
                    break;
                }
                let e = Edge::new(v, w);
                let id = g.edge_id(e).expect("neighbor edges exist");
                if claimed[id] || used.contains(&all_colors[id]) {
                    continue;
                }
                claimed[id] = true;
                used.insert(all_colors[id]);
                degree[v as usize] += 1;
                degree[w as usize] += 1;
                edges.push(e);
            }
        }
        let graph = Graph::from_edges(n, edges)?;
        let mut colors: Vec<Color> = used.into_iter().collect();
        colors.sort_unstable();
        let deficiencies = (0..n)
            .filter(|&v| degree[v] < k)
            .map(|v| (v as Vertex, degree[v]))
            .collect();
        parts.push(RainbowPart { graph, colors, deficiencies });
    }
    Ok(RainbowParts { parts })
}

/// One filtered chunk: the selected rainbow edge supply for a part, in
/// selection order, plus how far short of `target` the chunk fell.
#[derive(Clone, Debug)]
pub struct ChunkSelection {
    pub edges: Vec<Edge>,
    pub shortfall: usize,
}

/// Permutes the edges of `rest`, cuts the first `t * chunk` into consecutive
/// chunks, and greedily keeps from each chunk up to `target` edges with
/// pairwise-distinct colors outside `forbidden[i]`.
///
/// A chunk without `target` admissible colors yields a positive
/// [`ChunkSelection::shortfall`] rather than an error; too few edges overall
/// is an input error.
pub fn chunk_and_filter(
    rest: &ColoredGraph,
    t: usize,
    chunk: usize,
    target: usize,
    forbidden: &[HashSet<Color>],
    rng: &mut impl Rng,
) -> Result<Vec<ChunkSelection>> {
    if forbidden.len() != t {
        return Err(Error::InvalidInput(format!(
            "need one forbidden-color set per part: got {} for t = {t}",
            forbidden.len()
        )));
    }
    let available = rest.graph().edge_count();
    let need = t.checked_mul(chunk).ok_or_else(|| {
        Error::InvalidInput(format!("t * chunk overflows: {t} * {chunk}"))
    })?;
    if available < need {
        return Err(Error::InvalidInput(format!(
            "chunking needs t * chunk = {need} edges, rest has only {available}"
        )));
    }

    let edges = rest.graph().edges();
    let colors = rest.colors();
    let mut perm: Vec<usize> = (0..available).collect();
    perm.shuffle(rng);

    let mut out = Vec::with_capacity(t);
    for i in 0..t {
        let slice = &perm[i * chunk..(i + 1) * chunk];
        let mut seen: HashSet<Color> = HashSet::new();
        let mut selected = Vec::with_capacity(target.min(chunk));
        for &id in slice {
            if selected.len() == target {
                break;
            }
            let c = colors[id];
            if forbidden[i].contains(&c) || !seen.insert(c) {
                continue;
            }
            selected.push(edges[id]);
        }
        let shortfall = target - selected.len();
        out.push(ChunkSelection { edges: selected, shortfall });
    }
    Ok(out)
}

/// Pipeline knobs for [`pack_rainbow_hamilton`]. `None` fields fall back to
/// values derived from the host: `chunk` to an equal split of the remainder
/// pool, `target` to (81 + 15θ)·n, `q1_frac` to (45 + 15θ)/(81 + 15θ) with
/// θ = −ln(min_degree/n), and `rotation_budget` to n².
#[derive(Clone, Debug)]
pub struct PackParams {
    pub k: usize,
    pub split_p: f64,
    pub chunk: Option<usize>,
    pub target: Option<usize>,
    pub q1_frac: Option<f64>,
    pub rotation_budget: Option<usize>,
}

impl Default for PackParams {
    fn default() -> Self {
        PackParams {
            k: 6,
            split_p: 1.0 / 20.0,
            chunk: None,
            target: None,
            q1_frac: None,
            rotation_budget: None,
        }
    }
}

/// A verified rainbow Hamilton cycle together with its provenance.
#[derive(Clone, Debug)]
pub struct PackedCycle {
    /// Index of the part whose search produced the cycle.
    pub part: usize,
    pub cycle: HamiltonCycle,
    /// Edge colors in cycle order; pairwise distinct.
    pub colors: Vec<Color>,
    /// Cycle edges in canonical form.
    pub edges: Vec<Edge>,
    pub boosters_consumed: usize,
}

/// Result of the packing pipeline. `cycles` holds every verified cycle; a
/// complete run has one per requested part. Failed parts keep their solver
/// diagnostics, and the partition stages report per-part deficiencies.
#[derive(Clone, Debug)]
pub struct RainbowPacking {
    pub requested: usize,
    pub cycles: Vec<PackedCycle>,
    pub failures: Vec<(usize, Exhausted)>,
    /// Per part: vertices whose extraction degree fell short of k.
    pub part_deficiencies: Vec<Vec<(Vertex, usize)>>,
    /// Per part: how far the chunk filter fell short of `target`.
    pub chunk_shortfalls: Vec<usize>,
}

impl RainbowPacking {
    pub fn is_complete(&self) -> bool {
        self.cycles.len() == self.requested
    }
}

/// Runs the full packing pipeline on a perturbed colored graph `g` over its
/// uncolored host `host`: split the host, extract `t` rainbow parts from the
/// sparse half, filter the remainder pool into per-part rainbow supplies,
/// then search each part for a Hamilton cycle and verify it rainbow and
/// edge-disjoint from the others.
///
/// Deficient stages degrade into diagnostics on the returned packing; only
/// malformed inputs and broken internal invariants produce errors.
pub fn pack_rainbow_hamilton(
    g: &ColoredGraph,
    host: &Graph,
    t: usize,
    params: &PackParams,
    master_seed: u64,
) -> Result<RainbowPacking> {
    let n = g.n();
    if host.n() != n {
        return Err(Error::InvalidInput(format!(
            "host has {} vertices, colored graph has {n}",
            host.n()
        )));
    }
    if let Some(e) = host.edges().iter().find(|&&e| !g.graph().has_edge(e)) {
        return Err(Error::InvalidInput(format!(
            "host edge {{{}, {}}} is missing from the colored graph",
            e.u(),
            e.v()
        )));
    }

    let mut packing = RainbowPacking {
        requested: t,
        cycles: Vec::new(),
        failures: Vec::new(),
        part_deficiencies: Vec::new(),
        chunk_shortfalls: Vec::new(),
    };
    if t == 0 {
        return Ok(packing);
    }

    // Stage 1: split the host and restrict the coloring to each side.
    let mut rng_split = seed::stream(master_seed, seed::TAG_SPLIT, 0);
    let split = split_host(host, params.split_p, &mut rng_split)?;
    let h_prime = g.restrict(split.h_prime.edges())?;
    let pool_edges: Vec<Edge> = g
        .graph()
        .edges()
        .iter()
        .copied()
        .filter(|&e| !split.h_prime.has_edge(e))
        .collect();
    let rest = g.restrict(&pool_edges)?;

    // Stage 2: rainbow parts from the sparse half.
    let mut rng_parts = seed::stream(master_seed, seed::TAG_PACK, 0);
    let parts = extract_rainbow_parts(&h_prime, t, params.k, &mut rng_parts)?;
    packing.part_deficiencies = parts.parts.iter().map(|p| p.deficiencies.clone()).collect();

    // Stage 3: per-part rainbow supplies from the remainder pool.
    let delta_eff = (host.min_degree() as f64 / n.max(1) as f64).clamp(1.0 / n.max(2) as f64, 1.0);
    let th = theta(delta_eff);
    let chunk = params.chunk.unwrap_or(rest.graph().edge_count() / t);
    let target = params
        .target
        .unwrap_or(((81.0 + 15.0 * th) * n as f64).floor() as usize);
    let q1_frac = params
        .q1_frac
        .unwrap_or((45.0 + 15.0 * th) / (81.0 + 15.0 * th));
    if !(0.0..=1.0).contains(&q1_frac) {
        return Err(Error::InvalidInput(format!(
            "q1_frac must lie in [0, 1], got {q1_frac}"
        )));
    }
    let forbidden: Vec<HashSet<Color>> = parts.parts.iter().map(|p| p.color_set()).collect();
    let mut rng_chunk = seed::stream(master_seed, seed::TAG_PACK, 1);
    let selections = chunk_and_filter(&rest, t, chunk, target, &forbidden, &mut rng_chunk)?;
    packing.chunk_shortfalls = selections.iter().map(|s| s.shortfall).collect();

    // Stage 4: independent per-part searches.
    let budget = params.rotation_budget.unwrap_or(n * n);
    let runs: Vec<(usize, PartOutcome)> = parts
        .parts
        .par_iter()
        .zip(selections.par_iter())
        .enumerate()
        .map(|(i, (part, supply))| -> Result<(usize, PartOutcome)> {
            Ok((i, run_part(g, part, supply, q1_frac, budget)?))
        })
        .collect::<Result<_>>()?;

    let mut used_edges: HashSet<Edge> = HashSet::new();
    for (i, outcome) in runs {
        match outcome {
            PartOutcome::Found(packed) => {
                for &e in &packed.edges {
                    if !used_edges.insert(e) {
                        return Err(Error::Internal(format!(
                            "cycles share edge {{{}, {}}}",
                            e.u(),
                            e.v()
                        )));
                    }
                }
                packing.cycles.push(PackedCycle { part: i, ..packed });
            }
            PartOutcome::Stuck(ex) => packing.failures.push((i, ex)),
        }
    }
    Ok(packing)
}

enum PartOutcome {
    Found(PackedCycle),
    Stuck(Exhausted),
}

/// Searches one part: base = part ∪ Q₁, boosters = Q₂ (split of the supply
/// by q1_frac in selection order), then re-verifies any cycle against the
/// consumed edge set and the global coloring.
fn run_part(
    g: &ColoredGraph,
    part: &RainbowPart,
    supply: &ChunkSelection,
    q1_frac: f64,
    budget: usize,
) -> Result<PartOutcome> {
    let q1_len = ((supply.edges.len() as f64) * q1_frac).round() as usize;
    let (q1, q2) = supply.edges.split_at(q1_len.min(supply.edges.len()));
    let base = part.graph.union(q1)?;
    let mut state = RotationState::new(&base)?.with_rotation_budget(budget);
    match rotations_close(&mut state, q2)? {
        SolveOutcome::Cycle(cycle) => {
            let consumed = state.boosters_consumed().min(q2.len());
            let audited = base.union(&q2[..consumed])?;
            cycle
                .verify(&audited)
                .and_then(|()| cycle.verify_rainbow(g))
                .map_err(|e| Error::Internal(format!("unverifiable packed cycle: {e}")))?;
            let edges: Vec<Edge> = cycle.edges().collect();
            let colors = edges
                .iter()
                .map(|&e| g.color_of(e))
                .collect::<Result<Vec<Color>>>()?;
            Ok(PartOutcome::Found(PackedCycle {
                part: 0,
                cycle,
                colors,
                edges,
                boosters_consumed: state.boosters_consumed(),
            }))
        }
        SolveOutcome::Exhausted(ex) => Ok(PartOutcome::Stuck(ex)),
    }
}
