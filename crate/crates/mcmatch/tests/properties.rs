//! Property tests: format round-trips and augmentation against
//! oracle-produced paths.

use mcmatch::dimacs::{emit_dimacs, emit_solution, matching_from_pairs, parse_dimacs, parse_solution};
use mcmatch::graph::{EdgeId, Graph, Matching, Path, Vertex};
use mcmatch::oracle::brute_augmenting_paths;
use mcmatch::solve::SolveStats;
use proptest::prelude::*;

/// Arbitrary small graph: the vertex count plus a list of raw pairs reduced
/// modulo n with self-loops dropped (keeping duplicates as parallel edges).
fn graph_strategy(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |pairs| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

/// A valid matching of `g` selected by a greedy pass over a random subset.
fn matching_strategy(g: Graph) -> impl Strategy<Value = (Graph, Matching)> {
    let m = g.edge_count();
    proptest::collection::vec(any::<bool>(), m).prop_map(move |mask| {
        let mut used = vec![false; g.vertex_count()];
        let mut chosen = Vec::new();
        for (e, &keep) in mask.iter().enumerate() {
            if !keep {
                continue;
            }
            let (u, v) = g.endpoints(e);
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                chosen.push(e);
            }
        }
        let matching = Matching::from_edges(&g, &chosen).unwrap();
        (g.clone(), matching)
    })
}

proptest! {
    /// parse(emit(g)) reproduces the graph exactly, edge order included.
    #[test]
    fn dimacs_round_trip(g in graph_strategy(30, 60)) {
        let text = emit_dimacs(&g);
        let back = parse_dimacs(&text).unwrap();
        prop_assert_eq!(back, g);
    }

    /// Solutions survive an emit/parse cycle and rebuild to the same matching.
    #[test]
    fn solution_round_trip((g, m) in graph_strategy(20, 40).prop_flat_map(matching_strategy)) {
        let text = emit_solution(&m, &SolveStats::default());
        let (size, pairs) = parse_solution(&text).unwrap();
        prop_assert_eq!(size, m.size());
        let back = matching_from_pairs(&g, &pairs).unwrap();
        prop_assert!(back.is_valid_for(&g));
        prop_assert_eq!(back.pairs(), m.pairs());
    }

    /// Augmenting along any oracle-produced augmenting path grows the
    /// matching by exactly one edge and keeps it valid; flipping back along
    /// the same edge set restores the original.
    #[test]
    fn augment_along_oracle_paths((g, m) in graph_strategy(10, 24).prop_flat_map(matching_strategy)) {
        let paths = brute_augmenting_paths(&g, &m).unwrap();
        for seq in paths.iter().take(8) {
            let p = path_from_sequence(&g, &m, seq);
            prop_assert!(p.is_augmenting(&g, &m));
            let mut grown = m.clone();
            grown.augment(&g, &p).unwrap();
            prop_assert!(grown.is_valid_for(&g));
            prop_assert_eq!(grown.size(), m.size() + 1);
            // The flip is an involution on the path's edge set.
            let back = Path::new(
                seq.iter().rev().copied().collect(),
                p.edges.iter().rev().copied().collect(),
            );
            prop_assert!(!back.is_augmenting(&g, &grown));
            let mut ids: Vec<EdgeId> = grown.edge_ids();
            for &e in &p.edges {
                match ids.iter().position(|&x| x == e) {
                    Some(i) => { ids.swap_remove(i); }
                    None => ids.push(e),
                }
            }
            ids.sort_unstable();
            let mut original = m.edge_ids();
            original.sort_unstable();
            prop_assert_eq!(ids, original);
        }
    }
}

/// Rebuild an explicit path from an oracle vertex sequence, choosing edges
/// with the alternation the position demands.
fn path_from_sequence(g: &Graph, m: &Matching, seq: &[Vertex]) -> Path {
    let mut edges = Vec::with_capacity(seq.len() - 1);
    for i in 0..seq.len() - 1 {
        let want_matched = i % 2 == 1;
        let e = g
            .neighbors(seq[i])
            .find(|&(w, e)| w == seq[i + 1] && m.contains_edge(e, g) == want_matched)
            .map(|(_, e)| e)
            .expect("oracle sequence must be realizable");
        edges.push(e);
    }
    Path::new(seq.to_vec(), edges)
}
