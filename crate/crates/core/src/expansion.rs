//! Connectivity and vertex-expansion checks.
//!
//! The target property is that every vertex set S with |S| ≤ max_fraction·n
//! satisfies |N(S)| > 2|S|, where N(S) is the external neighborhood. Small
//! sets are enumerated exhaustively; larger sets are sampled, with sizes
//! drawn log-uniformly because violations concentrate at the size extremes.

use rand::Rng;

use crate::bitset::{AdjBitsets, BitSet};
use crate::graph::{Graph, Vertex};
use crate::unionfind::UnionFind;
use crate::{Error, Result};

/// Upper bound on stored violation examples per phase. Counts stay exact;
/// only the example lists are truncated on pathological inputs.
const VIOLATION_EXAMPLE_CAP: usize = 100_000;

/// Outcome of [`check_expansion`].
#[derive(Clone, Debug)]
pub struct ExpansionReport {
    pub connected: bool,
    /// Violating sets with |S| ≤ small_cap, paired with |N(S)|.
    pub small_set_violations: Vec<(Vec<Vertex>, usize)>,
    /// Violations among the sampled larger sets.
    pub sampled_violations: Vec<(Vec<Vertex>, usize)>,
    /// Exhaustive-phase size bound actually used.
    pub small_cap: usize,
    /// Number of random large sets tested.
    pub samples: usize,
    /// Exact violation counts (the example lists above are capped).
    pub small_violation_count: usize,
    pub sampled_violation_count: usize,
}

impl ExpansionReport {
    pub fn expansion_holds(&self) -> bool {
        self.small_violation_count == 0 && self.sampled_violation_count == 0
    }
}

/// {v ∉ S : some u ∈ S has {u,v} ∈ edges(g)}, ascending.
pub fn external_neighborhood(g: &Graph, s: &[Vertex]) -> Vec<Vertex> {
    let adj = AdjBitsets::build(g);
    let idx: Vec<usize> = s.iter().map(|&v| v as usize).collect();
    adj.external_neighborhood(g.n(), &idx)
        .iter_ones()
        .map(|v| v as Vertex)
        .collect()
}

fn is_connected(g: &Graph) -> bool {
    let mut uf = UnionFind::new(g.n());
    for e in g.edges() {
        uf.union(e.u(), e.v());
    }
    uf.components() <= 1
}

/// C(n, k) with saturation, used only for the enumeration feasibility guard.
fn binom_saturating(n: usize, k: usize) -> usize {
    let mut acc: u128 = 1;
    for i in 0..k.min(n) {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if acc > u128::from(u64::MAX) {
            return usize::MAX;
        }
    }
    acc.min(usize::MAX as u128) as usize
}

/// Tests |N(S)| > 2|S| exhaustively for |S| ≤ small_cap and on `samples`
/// random sets with small_cap < |S| ≤ ⌊max_fraction·n⌋. Connectivity is
/// computed exactly.
pub fn check_expansion(
    g: &Graph,
    max_fraction: f64,
    small_cap: usize,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<ExpansionReport> {
    if !(max_fraction > 0.0 && max_fraction <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "max_fraction = {max_fraction} outside (0, 1]"
        )));
    }
    let n = g.n();
    let size_limit = ((max_fraction * n as f64).floor() as usize).min(n);
    let cap = small_cap.min(size_limit);
    if binom_saturating(n, cap) > 10_000_000 {
        return Err(Error::InvalidInput(format!(
            "C({n}, {cap}) exceeds the 1e7 enumeration budget"
        )));
    }

    let adj = AdjBitsets::build(g);
    let mut report = ExpansionReport {
        connected: is_connected(g),
        small_set_violations: Vec::new(),
        sampled_violations: Vec::new(),
        small_cap: cap,
        samples: 0,
        small_violation_count: 0,
        sampled_violation_count: 0,
    };

    // Exhaustive phase: depth-first over combinations, keeping a running
    // union of neighbor rows per prefix so each set costs one row OR.
    let mut chosen: Vec<usize> = Vec::with_capacity(cap);
    let mut union_stack: Vec<BitSet> = vec![BitSet::new(n); cap + 1];
    enumerate_sets(
        &adj,
        n,
        cap,
        0,
        &mut chosen,
        &mut union_stack,
        &mut |set, nbhd| {
            report.small_violation_count += 1;
            if report.small_set_violations.len() < VIOLATION_EXAMPLE_CAP {
                report
                    .small_set_violations
                    .push((set.iter().map(|&v| v as Vertex).collect(), nbhd));
            }
        },
    );

    // Sampled phase.
    if size_limit > cap {
        let lo = (cap + 1) as f64;
        let hi = size_limit as f64;
        let mut pool: Vec<usize> = (0..n).collect();
        for _ in 0..samples {
            let x = rng.random_range(lo.ln()..=hi.ln()).exp();
            let s = (x.floor() as usize).clamp(cap + 1, size_limit);
            for i in 0..s {
                let j = rng.random_range(i..n);
                pool.swap(i, j);
            }
            let set = &pool[..s];
            let nbhd = adj.external_neighborhood(n, set).count();
            report.samples += 1;
            if nbhd <= 2 * s {
                report.sampled_violation_count += 1;
                if report.sampled_violations.len() < VIOLATION_EXAMPLE_CAP {
                    let mut sorted: Vec<Vertex> = set.iter().map(|&v| v as Vertex).collect();
                    sorted.sort_unstable();
                    report.sampled_violations.push((sorted, nbhd));
                }
            }
        }
    }

    Ok(report)
}

fn enumerate_sets(
    adj: &AdjBitsets,
    n: usize,
    cap: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    union_stack: &mut [BitSet],
    on_violation: &mut impl FnMut(&[usize], usize),
) {
    for v in start..n {
        let depth = chosen.len();
        let (prev, rest) = union_stack.split_at_mut(depth + 1);
        let next = &mut rest[0];
        next.clone_from(&prev[depth]);
        next.or_assign(&adj.rows[v]);
        chosen.push(v);

        let mut ext = union_stack[depth + 1].clone();
        for &u in chosen.iter() {
            ext.clear(u);
        }
        let nbhd = ext.count();
        if nbhd <= 2 * chosen.len() {
            on_violation(chosen, nbhd);
        }
        if chosen.len() < cap {
            enumerate_sets(adj, n, cap, v + 1, chosen, union_stack, on_violation);
        }
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::{self, TAG_EXPANSION};

    #[test]
    fn external_neighborhood_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(external_neighborhood(&k4, &[0]), vec![1, 2, 3]);

        let two_triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(external_neighborhood(&two_triangles, &[0, 1, 2]).is_empty());

        let c6 = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        // Direct adjacency scan: N({0,3}) = {1, 5} ∪ {2, 4}.
        assert_eq!(external_neighborhood(&c6, &[0, 3]), vec![1, 2, 4, 5]);
    }

    #[test]
    fn complete_graph_expands() {
        let report = check_expansion(
            &Graph::complete(10),
            0.2,
            2,
            50,
            &mut seed::stream(0, TAG_EXPANSION, 0),
        )
        .unwrap();
        assert!(report.connected);
        assert!(report.expansion_holds());
        assert_eq!(report.small_violation_count, 0);
    }

    #[test]
    fn disjoint_cliques_are_disconnected() {
        let mut edges = Vec::new();
        for base in [0u32, 5] {
            for u in 0..5 {
                for v in (u + 1)..5 {
                    edges.push((base + u, base + v));
                }
            }
        }
        let g = Graph::from_edges(10, edges).unwrap();
        let report =
            check_expansion(&g, 0.3, 2, 20, &mut seed::stream(1, TAG_EXPANSION, 0)).unwrap();
        assert!(!report.connected);
    }

    #[test]
    fn star_leaf_pair_is_reported() {
        // K_{1,9}: center 0, leaves 1..=9. S = {leaf, leaf} has N(S) = {0},
        // and 1 ≤ 4.
        let star = Graph::from_edges(10, (1..10u32).map(|v| (0, v))).unwrap();
        let report =
            check_expansion(&star, 0.2, 2, 0, &mut seed::stream(2, TAG_EXPANSION, 0)).unwrap();
        assert!(!report.expansion_holds());
        assert!(report
            .small_set_violations
            .iter()
            .any(|(s, nb)| s == &vec![1, 2] && *nb == 1));
        // Every reported violation re-checks.
        for (s, nb) in &report.small_set_violations {
            let again = external_neighborhood(&star, s).len();
            assert_eq!(again, *nb);
            assert!(again <= 2 * s.len());
        }
    }

    #[test]
    fn enumeration_budget_guard() {
        let g = Graph::complete(300);
        assert!(check_expansion(&g, 1.0, 10, 0, &mut seed::stream(3, TAG_EXPANSION, 0)).is_err());
    }

    #[test]
    fn planted_small_violation_is_always_found() {
        // Path 0-1-2 hanging off a clique: S = {0} has N(S) = {1}, 1 ≤ 2.
        let mut edges = vec![(0u32, 1), (1, 2)];
        for u in 2..8u32 {
            for v in (u + 1)..8 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(8, edges).unwrap();
        let report =
            check_expansion(&g, 0.5, 2, 0, &mut seed::stream(4, TAG_EXPANSION, 0)).unwrap();
        assert!(report
            .small_set_violations
            .iter()
            .any(|(s, _)| s == &vec![0]));
    }
}
