//! Deterministic instance generators for tests and benchmarks.

use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    /// Uniform random simple graph with exactly m edges.
    RandomGnm,
    /// Random bipartite graph on two equal halves with m cross edges.
    RandomBipartite,
    /// Path on n vertices.
    LongPathChain,
    /// Chained odd cycles forcing deep blossom nesting; n must be odd.
    NestedBlossomGadget,
}

impl GenKind {
    pub fn parse(s: &str) -> Option<GenKind> {
        match s {
            "random-gnm" => Some(GenKind::RandomGnm),
            "random-bipartite" => Some(GenKind::RandomBipartite),
            "long-path-chain" => Some(GenKind::LongPathChain),
            "nested-blossom-gadget" => Some(GenKind::NestedBlossomGadget),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GenKind::RandomGnm => "random-gnm",
            GenKind::RandomBipartite => "random-bipartite",
            GenKind::LongPathChain => "long-path-chain",
            GenKind::NestedBlossomGadget => "nested-blossom-gadget",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("{kind}: requested {m} edges but at most {max} are possible")]
    TooManyEdges { kind: &'static str, m: usize, max: usize },
    #[error("{kind}: parameter m is required")]
    MissingEdgeCount { kind: &'static str },
    #[error("nested-blossom-gadget needs an even n >= 4, got {0}")]
    BadGadgetSize(usize),
}

/// Generate an instance; identical (kind, n, m, seed) inputs give identical
/// graphs.
pub fn generate(kind: GenKind, n: usize, m: Option<usize>, seed: u64) -> Result<Graph, GenError> {
    match kind {
        GenKind::RandomGnm => {
            let m = m.ok_or(GenError::MissingEdgeCount { kind: kind.name() })?;
            random_gnm(n, m, seed)
        }
        GenKind::RandomBipartite => {
            let m = m.ok_or(GenError::MissingEdgeCount { kind: kind.name() })?;
            random_bipartite(n, m, seed)
        }
        GenKind::LongPathChain => Ok(long_path(n)),
        GenKind::NestedBlossomGadget => nested_blossom_gadget(n),
    }
}

pub fn random_gnm(n: usize, m: usize, seed: u64) -> Result<Graph, GenError> {
    let max = n.saturating_mul(n.saturating_sub(1)) / 2;
    if m > max {
        return Err(GenError::TooManyEdges { kind: "random-gnm", m, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = if max <= 4 * m.max(1) && max <= 4_000_000 {
        // Dense request: materialize all pairs and take a prefix.
        let mut all: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        all.shuffle(&mut rng);
        all.truncate(m);
        all
    } else {
        let mut seen = HashSet::with_capacity(m * 2);
        let mut edges = Vec::with_capacity(m);
        while edges.len() < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            if seen.insert(key) {
                edges.push(key);
            }
        }
        edges
    };
    Ok(Graph::new(n, edges).expect("generated edges are valid"))
}

pub fn random_bipartite(n: usize, m: usize, seed: u64) -> Result<Graph, GenError> {
    let left = n / 2;
    let right = n - left;
    let max = left * right;
    if m > max {
        return Err(GenError::TooManyEdges { kind: "random-bipartite", m, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(m * 2);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..left);
        let v = left + rng.random_range(0..right);
        if seen.insert((u, v)) {
            edges.push((u, v));
        }
    }
    Ok(Graph::new(n, edges).expect("generated edges are valid"))
}

pub fn long_path(n: usize) -> Graph {
    Graph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1))).expect("path edges are valid")
}

/// Chain of interlocked odd cycles behind a greedy bait, n = 2*depth + 2.
///
/// The bait edges (2i, 2i+1) are listed first, so the length-1 phase matches
/// exactly them and leaves vertices 2*depth and 2*depth+1 free. The only
/// remaining augmenting path then runs through every chained odd cycle, and
/// the closure edges fire one blossom step inside the previous level's
/// blossom per level, nesting the ring trees about depth/2 deep.
pub fn nested_blossom_gadget(n: usize) -> Result<Graph, GenError> {
    if n < 4 || n % 2 == 1 {
        return Err(GenError::BadGadgetSize(n));
    }
    let depth = (n - 2) / 2;
    let mut edges = Vec::with_capacity(3 * depth + 1);
    for i in 0..depth {
        edges.push((2 * i, 2 * i + 1)); // bait pair
    }
    edges.push((2 * depth - 1, 2 * depth + 1)); // tail to the far free vertex
    edges.push((2 * depth, 0)); // spine entry
    for i in 1..depth {
        edges.push((2 * i - 1, 2 * i)); // spine
    }
    edges.push((1, 2 * depth)); // first odd cycle
    for i in 2..=depth {
        edges.push((2 * i - 1, 2 * i - 4)); // cycle through the previous level
    }
    Ok(Graph::new(n, edges).expect("gadget edges are valid"))
}

/// The maximal matching the gadget baits the first phase into: exactly the
/// bait pairs. Useful for warm-started stress tests.
pub fn gadget_bait_matching(g: &Graph) -> crate::graph::Matching {
    let depth = (g.vertex_count() - 2) / 2;
    let bait: Vec<usize> = (0..depth).collect();
    crate::graph::Matching::from_edges(g, &bait).expect("bait pairs are disjoint")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_max_matching;
    use crate::solve::maximum_matching;

    #[test]
    fn gnm_is_deterministic() {
        let a = random_gnm(10, 15, 7).unwrap();
        let b = random_gnm(10, 15, 7).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        assert_eq!(a.edge_count(), 15);
    }

    #[test]
    fn gnm_rejects_impossible() {
        assert!(matches!(random_gnm(3, 5, 0), Err(GenError::TooManyEdges { .. })));
    }

    #[test]
    fn bipartite_has_no_odd_cycle_edges() {
        let g = random_bipartite(10, 12, 3).unwrap();
        let left = 5;
        assert!(g.edges().all(|(u, v)| (u < left) != (v < left)));
    }

    #[test]
    fn long_path_matches_half() {
        let g = long_path(9);
        let (m, _) = maximum_matching(&g);
        assert_eq!(m.size(), 4);
    }

    #[test]
    fn gadget_solves_to_brute_force() {
        for n in [4, 6, 8, 10, 12, 14, 16] {
            let g = nested_blossom_gadget(n).unwrap();
            let (m, stats) = maximum_matching(&g);
            let (best, _) = brute_max_matching(&g).unwrap();
            assert_eq!(m.size(), best, "gadget n={n}");
            assert_eq!(best, n / 2, "gadget has a perfect matching");
            assert_eq!(stats.phase_count(), 2, "bait phase plus the deep phase");
        }
    }

    #[test]
    fn gadget_bait_forces_nested_blossoms() {
        use crate::phase1::{run_search, SearchConfig, SearchOutcome};
        let g = nested_blossom_gadget(16).unwrap();
        let bait = gadget_bait_matching(&g);
        let s = match run_search(&g, &bait, SearchConfig { check_invariants: true, trace: None }).unwrap() {
            SearchOutcome::Augmented(s) => s,
            SearchOutcome::Optimal(_) => panic!("bait matching is one short of maximum"),
        };
        let depth = (0..g.vertex_count()).map(|v| s.forest.chain_of(v).len()).max().unwrap();
        assert!(depth >= 2, "expected nested blossoms, got chain depth {depth}");
        assert!(!s.positive_roots.is_empty());
    }

    #[test]
    fn gadget_rejects_odd_n() {
        assert!(matches!(nested_blossom_gadget(7), Err(GenError::BadGadgetSize(7))));
    }
}
