//! The outer solve loop: repeat phase 1 and phase 2 until the search reports
//! a maximum matching, collecting per-phase statistics along the way.

use crate::graph::{Graph, Matching};
use crate::oracle::{check_certificate, Certificate};
use crate::phase1::{run_search, SearchConfig, SearchError, SearchOutcome};
use crate::phase2::{expand_paths, find_path_set, Phase2Config};
use crate::tight::build_tight_graph;
use std::io::Write;
use std::time::{Duration, Instant};

/// Per-phase record: final dual total, number of disjoint paths applied, the
/// common path length, and wall time.
#[derive(Debug, Clone)]
pub struct PhaseStats {
    pub delta_final: u64,
    pub path_count: usize,
    pub path_len: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    pub phases: Vec<PhaseStats>,
    pub total_elapsed: Duration,
    pub matched: usize,
}

impl SolveStats {
    pub fn phase_count(&self) -> usize {
        self.phases.len()
    }
}

/// Solve-wide options. `verify` runs the dual-certificate check at the final
/// halt and validates every augmenting path; `check_invariants` additionally
/// turns on the expensive in-search sweeps. The trace stream receives the
/// step records of every phase.
#[derive(Default)]
pub struct SolveOptions<'a> {
    pub verify: bool,
    pub check_invariants: bool,
    pub trace: Option<&'a mut dyn Write>,
}

/// Maximum cardinality matching from an empty initial matching.
pub fn maximum_matching(g: &Graph) -> (Matching, SolveStats) {
    maximum_matching_from(g, Matching::empty(g.vertex_count()), &mut SolveOptions::default())
        .expect("empty matching is always valid")
}

/// Maximum cardinality matching warm-started from any valid matching.
///
/// Returns the final matching, statistics, and the certificate from the
/// optimal halt via the stats when verification is on.
pub fn maximum_matching_from(
    g: &Graph,
    start: Matching,
    opts: &mut SolveOptions,
) -> Result<(Matching, SolveStats), SearchError> {
    let (m, stats, _) = solve_certified(g, start, opts)?;
    Ok((m, stats))
}

/// Like [`maximum_matching_from`], also surfacing the final certificate.
pub fn solve_certified(
    g: &Graph,
    start: Matching,
    opts: &mut SolveOptions,
) -> Result<(Matching, SolveStats, Certificate), SearchError> {
    let n = g.vertex_count();
    let phase_bound = 2 * (n as f64).sqrt().ceil() as usize + 2;
    let mut m = start;
    let mut stats = SolveStats::default();
    let started = Instant::now();
    let mut prev_len = 0usize;
    let mut recycled: Option<crate::tight::TightGraph> = None;
    loop {
        let phase_started = Instant::now();
        let outcome = run_search(
            g,
            &m,
            SearchConfig {
                check_invariants: opts.check_invariants,
                trace: opts.trace.as_deref_mut().map(|w| w as &mut dyn Write),
            },
        )?;
        match outcome {
            SearchOutcome::Optimal(cert) => {
                if opts.verify {
                    assert!(
                        check_certificate(g, &cert).expect("certificate structure"),
                        "optimal halt produced an invalid certificate"
                    );
                }
                stats.total_elapsed = started.elapsed();
                stats.matched = m.size();
                return Ok((m, stats, cert));
            }
            SearchOutcome::Augmented(search) => {
                let h = build_tight_graph(g, &m, &search, recycled.take());
                let (path_set, _report) = find_path_set(
                    &h,
                    Phase2Config {
                        check_invariants: opts.check_invariants,
                        trace: opts.trace.as_deref_mut().map(|w| w as &mut dyn Write),
                    },
                );
                assert!(!path_set.paths.is_empty(), "augmenting search must yield at least one path");
                let paths = expand_paths(&path_set, &h, g, &search);
                let path_len = (2 * search.delta_final - 1) as usize;
                assert!(
                    path_len > prev_len,
                    "augmenting path length must strictly increase across phases"
                );
                prev_len = path_len;
                for p in &paths {
                    assert_eq!(p.len(), path_len, "expanded path length disagrees with the dual total");
                    if opts.verify {
                        assert!(p.is_augmenting(g, &m), "expanded path fails the augmenting check");
                    }
                    m.augment(g, p).expect("expanded path must augment");
                }
                if opts.verify {
                    verify_matched_edges_tight(g, &m, &paths, &search);
                }
                recycled = Some(h);
                stats.phases.push(PhaseStats {
                    delta_final: search.delta_final,
                    path_count: paths.len(),
                    path_len,
                    elapsed: phase_started.elapsed(),
                });
                assert!(
                    stats.phases.len() <= phase_bound,
                    "phase count {} exceeded the 2*ceil(sqrt(n))+2 bound {}",
                    stats.phases.len(),
                    phase_bound
                );
            }
        }
    }
}

/// After augmenting, every edge of the new matching must still be tight
/// under the finishing duals of the phase that produced it (blossom duals
/// included): old matched edges off the paths keep their weight-2 tightness
/// and flipped path edges were tight at weight 0.
fn verify_matched_edges_tight(
    g: &Graph,
    m: &Matching,
    paths: &[crate::graph::Path],
    search: &crate::phase1::AugmentedSearch,
) {
    let mut on_path = vec![false; g.edge_count()];
    for p in paths {
        for &e in &p.edges {
            on_path[e] = true;
        }
    }
    for e in m.edge_ids() {
        let (u, v) = g.endpoints(e);
        let mut zsum = 0;
        let cu = search.forest.chain_of(u);
        let cv = search.forest.chain_of(v);
        let mut iu = cu.len();
        let mut iv = cv.len();
        while iu > 0 && iv > 0 && cu[iu - 1] == cv[iv - 1] {
            iu -= 1;
            iv -= 1;
            zsum += search.blossom_dual(cu[iu]);
        }
        let w = if on_path[e] { 0 } else { 2 };
        assert_eq!(
            search.final_y[u] as i64 + search.final_y[v] as i64 + zsum,
            w,
            "matched edge {e} lost tightness after augmenting"
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_max_matching;

    fn solve_checked(g: &Graph) -> (Matching, SolveStats) {
        let mut opts = SolveOptions { verify: true, check_invariants: true, trace: None };
        maximum_matching_from(g, Matching::empty(g.vertex_count()), &mut opts).unwrap()
    }

    fn path_graph(n: usize) -> Graph {
        Graph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn cycle_graph(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn p4_matches_two() {
        let (m, _) = solve_checked(&path_graph(4));
        assert_eq!(m.size(), 2);
    }

    #[test]
    fn c5_matches_two_c6_matches_three() {
        assert_eq!(solve_checked(&cycle_graph(5)).0.size(), 2);
        assert_eq!(solve_checked(&cycle_graph(6)).0.size(), 3);
    }

    #[test]
    fn petersen_matches_five() {
        let outer = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let spokes = [(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)];
        let inner = [(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)];
        let g = Graph::new(10, outer.into_iter().chain(spokes).chain(inner)).unwrap();
        let (m, stats) = solve_checked(&g);
        assert_eq!(m.size(), 5);
        assert_eq!(brute_max_matching(&g).unwrap().0, 5);
        assert!(stats.phase_count() <= 2 * 4 + 2);
    }

    #[test]
    fn idempotent_on_resolve() {
        let g = cycle_graph(9);
        let (m, _) = solve_checked(&g);
        let mut opts = SolveOptions { verify: true, check_invariants: true, trace: None };
        let (m2, stats2) = maximum_matching_from(&g, m.clone(), &mut opts).unwrap();
        assert_eq!(stats2.phase_count(), 0, "maximum input must finish in one optimal search");
        assert_eq!(m2.size(), m.size());
    }

    #[test]
    fn path_lengths_strictly_increase() {
        // A long path forces several phases with growing path lengths.
        let g = path_graph(14);
        let (_, stats) = solve_checked(&g);
        let lens: Vec<usize> = stats.phases.iter().map(|p| p.path_len).collect();
        assert!(lens.windows(2).all(|w| w[0] < w[1]), "lengths {:?}", lens);
    }
}
