//! Phase 2: path-preserving depth-first search over the tight graph and
//! expansion of the found paths back into the original graph.
//!
//! The search visits free vertices in order and explores depth-first, with
//! blossom steps deliberately delayed: an edge to an outer vertex contracts
//! only when the target's base turned outer strictly later than the
//! scanner's. That discipline keeps every not-completely-scanned outer
//! vertex on the current search path, so when an augmenting path is found
//! and its vertices deleted, no half-explored vertex survives — which is
//! what makes the resulting path set maximal after a single pass.
//!
//! Recursion is replaced by an explicit frame stack; an augment clears the
//! whole stack, implementing "terminate every currently executing call".

use crate::blossom::{assemble_ring, fundamental_cycle, BaseTracker, BlossomForest, NodeId, PackedLinks, NONE32};
use crate::graph::{Graph, Path, Vertex};
use crate::phase1::AugmentedSearch;
use crate::tight::{TightGraph, TightVertex};
use crate::trace::{StepKind, TraceSink};
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Unreached,
    Inner,
    Outer,
    /// On a recorded path; deleted from further consideration.
    Dead,
}

/// Vertex-disjoint augmenting paths in the tight graph.
#[derive(Debug, Default)]
pub struct PathSet {
    pub paths: Vec<Path>,
}

/// Counts of instrumented checks performed (violations panic immediately).
#[derive(Debug, Default, Clone, Copy)]
pub struct CheckReport {
    pub scans: u64,
    pub invariant_i: u64,
    pub blossom_test_equivalence: u64,
    pub posthalt_free_outer: u64,
    pub posthalt_edges: u64,
    pub both_ends_scanned: u64,
    pub path_containment: u64,
}

#[derive(Default)]
pub struct Phase2Config<'a> {
    pub check_invariants: bool,
    pub trace: Option<&'a mut dyn Write>,
}

/// Depth-first search frame: one in-progress scan of an outer vertex, plus
/// the queue of vertices a blossom step scheduled for exploration.
struct Frame {
    x: usize,
    cursor: usize,
    pending: Vec<usize>,
    pending_pos: usize,
}

impl Frame {
    fn new(x: usize) -> Frame {
        Frame { x, cursor: 0, pending: Vec::new(), pending_pos: 0 }
    }
}

/// Find a maximal set of vertex-disjoint augmenting paths in the tight graph.
pub fn find_path_set(h: &TightGraph, cfg: Phase2Config) -> (PathSet, CheckReport) {
    let mut dfs = Dfs::new(h, cfg);
    dfs.run();
    (PathSet { paths: dfs.paths }, dfs.report)
}

struct Dfs<'a, 't> {
    h: &'a TightGraph,
    check: bool,
    trace: Option<TraceSink<'t>>,
    status: Vec<Status>,
    grow_parent: PackedLinks,
    outer_since: Vec<u32>,
    tick: u32,
    tracker: BaseTracker,
    forest: BlossomForest,
    node_of: Vec<u32>,
    marks: Vec<u32>,
    epoch: u32,
    completely_scanned: Vec<bool>,
    frame_started: Vec<bool>,
    scanned_from: Vec<[bool; 2]>,
    stack: Vec<Frame>,
    paths: Vec<Path>,
    report: CheckReport,
}

impl<'a, 't> Dfs<'a, 't> {
    fn new(h: &'a TightGraph, cfg: Phase2Config<'t>) -> Dfs<'a, 't> {
        let n = h.vertex_count();
        Dfs {
            h,
            check: cfg.check_invariants,
            trace: cfg.trace.map(TraceSink::phase2),
            status: vec![Status::Unreached; n],
            grow_parent: PackedLinks::new(n),
            outer_since: vec![0; n],
            tick: 0,
            tracker: if cfg.check_invariants { BaseTracker::with_shadow(n) } else { BaseTracker::new(n) },
            forest: BlossomForest::new(n),
            node_of: vec![NONE32; n],
            marks: vec![0; n],
            epoch: 0,
            completely_scanned: vec![false; n],
            frame_started: vec![false; n],
            scanned_from: if cfg.check_invariants { vec![[false; 2]; h.edge_count()] } else { Vec::new() },
            stack: Vec::new(),
            paths: Vec::new(),
            report: CheckReport::default(),
        }
    }

    fn next_tick(&mut self) -> u32 {
        self.tick += 1;
        self.tick
    }

    /// Start scanning a vertex; each vertex is scanned at most once, ever.
    fn push_frame(&mut self, x: usize) {
        assert!(!self.frame_started[x], "vertex {x} scanned twice");
        self.frame_started[x] = true;
        self.stack.push(Frame::new(x));
    }

    fn run(&mut self) {
        for f in 0..self.h.vertex_count() {
            if self.h.is_free(f) && self.status[f] == Status::Unreached {
                self.status[f] = Status::Outer;
                self.outer_since[f] = self.next_tick();
                self.push_frame(f);
                self.drive();
            }
        }
        if self.check {
            self.posthalt_checks();
        }
    }

    fn drive(&mut self) {
        while let Some(top) = self.stack.len().checked_sub(1) {
            // Blossom-step children are explored before the scan resumes.
            let frame = &mut self.stack[top];
            if frame.pending_pos < frame.pending.len() {
                let u = frame.pending[frame.pending_pos];
                frame.pending_pos += 1;
                self.push_frame(u);
                continue;
            }
            let x = frame.x;
            let adj = self.h.adjacency(x);
            if frame.cursor >= adj.len() {
                self.completely_scanned[x] = true;
                self.stack.pop();
                continue;
            }
            let (y, te) = adj[frame.cursor];
            let (y, te) = (y as usize, te as usize);
            frame.cursor += 1;
            if self.h.edges[te].matched {
                continue;
            }
            if self.check {
                self.record_scan(x, te);
                self.check_invariant_i(x);
            }
            match self.status[y] {
                Status::Dead | Status::Inner => {}
                Status::Unreached => {
                    if self.h.is_free(y) {
                        self.augment(x, y, te);
                    } else {
                        self.grow(x, y, te);
                    }
                }
                Status::Outer => {
                    let bx = self.tracker.find_base(x);
                    let by = self.tracker.find_base(y);
                    if bx == by {
                        continue;
                    }
                    if self.check {
                        self.check_blossom_test(bx, by);
                    }
                    if self.outer_since[by] > self.outer_since[bx] {
                        self.blossom(x, y, te);
                    }
                }
            }
        }
    }

    fn grow(&mut self, x: usize, y: usize, te: usize) {
        let (partner, _) = self.h.mate_of(y).expect("non-free unreached vertex is matched");
        debug_assert_eq!(self.status[partner], Status::Unreached);
        self.status[y] = Status::Inner;
        self.status[partner] = Status::Outer;
        self.grow_parent.set(partner, (x, te));
        self.outer_since[partner] = self.next_tick();
        if let Some(t) = &mut self.trace {
            t.step(StepKind::Grow, self.tick as u64, te, (x, y), None);
        }
        self.push_frame(partner);
    }

    fn blossom(&mut self, x: usize, y: usize, te: usize) {
        self.epoch += 1;
        let (tracker, grow_parent, marks, h) = (&mut self.tracker, &self.grow_parent, &mut self.marks, self.h);
        let fc = fundamental_cycle(
            tracker,
            x,
            y,
            |b| h.mate_of(b),
            |b| grow_parent.get(b),
            marks,
            self.epoch,
        );
        // The timestamp test passed, so the scanner's base is the ancestor.
        debug_assert!(fc.x_arm.is_empty(), "blossom target must descend from the scanner's base");
        let node_of = &self.node_of;
        let (children, links) =
            assemble_ring(&fc, x, y, te, |b| (node_of[b] != NONE32).then(|| node_of[b] as usize));
        let node = self
            .forest
            .record_blossom(children, links, fc.nca_base, self.tick as u64)
            .expect("blossom ring assembly broke an invariant");
        self.tracker.merge_into(&fc.merge_set(), fc.nca_base);
        self.node_of[fc.nca_base] = node as u32;
        // y_arm lists inner vertices bottom-up (nearest y first); exploration
        // goes nearest-ancestor first, which keeps every still-pending vertex
        // on the active search path.
        let order: Vec<usize> = fc.y_arm.iter().rev().map(|s| s.inner).collect();
        for &u in &order {
            debug_assert_eq!(self.status[u], Status::Inner);
            self.status[u] = Status::Outer;
            self.outer_since[u] = self.next_tick();
        }
        if let Some(t) = &mut self.trace {
            t.step(StepKind::Blossom, self.tick as u64, te, (x, y), Some(node));
        }
        if self.check {
            // The exploration order keeps every pending vertex on the active
            // path: each newly outer vertex's root path contains its later
            // siblings' root paths.
            for w in order.windows(2) {
                self.report.path_containment += 1;
                let outer: std::collections::HashSet<usize> =
                    self.path_to_root(w[0]).vertices.iter().copied().collect();
                for v in self.path_to_root(w[1]).vertices {
                    assert!(outer.contains(&v), "path of {} does not contain path of {}", w[0], w[1]);
                }
            }
        }
        let top = self.stack.len() - 1;
        debug_assert!(self.stack[top].pending_pos == self.stack[top].pending.len());
        self.stack[top].pending = order;
        self.stack[top].pending_pos = 0;
    }

    fn augment(&mut self, x: usize, y: usize, te: usize) {
        let mut path = self.path_to_root(x);
        path.vertices.insert(0, y);
        path.edges.insert(0, te);
        if self.check {
            // Invariant (I) at the augment: the recorded path carries every
            // alive outer vertex that is not completely scanned.
            self.report.invariant_i += 1;
            let on_path: std::collections::HashSet<usize> = path.vertices.iter().copied().collect();
            for v in 0..self.h.vertex_count() {
                if self.status[v] == Status::Outer && !self.completely_scanned[v] {
                    assert!(on_path.contains(&v), "outer vertex {v} abandoned off the recorded path");
                }
            }
        }
        if let Some(t) = &mut self.trace {
            t.step(StepKind::Augment, self.tick as u64, te, (x, y), None);
        }
        for &v in &path.vertices {
            self.status[v] = Status::Dead;
        }
        self.paths.push(path);
        self.stack.clear();
    }

    /// Alternating path from outer vertex `x` back to its tree root, with
    /// blossoms expanded through the recorded rings.
    fn path_to_root(&mut self, x: usize) -> Path {
        let mut vertices = vec![x];
        let mut edges = Vec::new();
        let mut cur = x;
        loop {
            let base = self.tracker.find_base(cur);
            if base != cur {
                let node = self.node_of[base] as NodeId;
                debug_assert_ne!(self.node_of[base], NONE32, "multi-vertex blossom has a ring node");
                let p = self.forest.path_to_base(node, cur).expect("vertex inside its own blossom");
                vertices.extend_from_slice(&p.vertices[1..]);
                edges.extend_from_slice(&p.edges);
                cur = base;
            }
            match self.h.mate_of(cur) {
                None => break, // free root
                Some((inner, matched_te)) => {
                    let (up, grow_te) = self.grow_parent.get(cur).expect("matched base was grown into the forest");
                    vertices.push(inner);
                    edges.push(matched_te);
                    vertices.push(up);
                    edges.push(grow_te);
                    cur = up;
                }
            }
        }
        Path::new(vertices, edges)
    }

    fn record_scan(&mut self, x: usize, te: usize) {
        self.report.scans += 1;
        let side = if self.h.edges[te].u as usize == x { 0 } else { 1 };
        debug_assert_eq!([self.h.edges[te].u, self.h.edges[te].v][side] as usize, x);
        assert!(!self.scanned_from[te][side], "edge {te} scanned twice from the same end");
        self.scanned_from[te][side] = true;
    }

    /// Invariant (I): whenever a scan happens, the current path from the
    /// scanner to its root contains every alive outer vertex that is not
    /// completely scanned.
    fn check_invariant_i(&mut self, x: usize) {
        self.report.invariant_i += 1;
        let on_path: std::collections::HashSet<usize> =
            self.path_to_root(x).vertices.iter().copied().collect();
        for v in 0..self.h.vertex_count() {
            if self.status[v] == Status::Outer && !self.completely_scanned[v] {
                assert!(
                    on_path.contains(&v),
                    "outer vertex {v} not completely scanned and off the path of {x}"
                );
            }
        }
    }

    /// Parent in the grow forest, ignoring blossom contraction. The parent is
    /// fixed by how a vertex entered the forest: the outer partner of a grow
    /// step hangs below its mate, the inner endpoint below the scanner.
    fn tree_parent(&self, v: usize) -> Option<usize> {
        if self.grow_parent.is_set(v) {
            return Some(self.h.mate_of(v).expect("grown outer vertex is matched").0);
        }
        self.h.mate_of(v).and_then(|(partner, _)| self.grow_parent.get(partner)).map(|(x, _)| x)
    }

    fn is_proper_ancestor(&self, anc: usize, v: usize) -> bool {
        let mut cur = v;
        while let Some(p) = self.tree_parent(cur) {
            cur = p;
            if cur == anc {
                return true;
            }
        }
        false
    }

    /// The cheap timestamp test must agree with the structural one: the
    /// target's base is an outer proper descendant of the scanner's base.
    /// Cross-tree outer-outer scans are impossible on the way.
    fn check_blossom_test(&mut self, bx: usize, by: usize) {
        self.report.blossom_test_equivalence += 1;
        let by_descends = self.is_proper_ancestor(bx, by);
        let bx_descends = self.is_proper_ancestor(by, bx);
        assert!(
            by_descends || bx_descends,
            "outer-outer scan with unrelated bases {bx}, {by} (different trees?)"
        );
        let timestamp = self.outer_since[by] > self.outer_since[bx];
        assert_eq!(
            timestamp, by_descends,
            "timestamp test disagrees with ancestry for bases {bx}, {by}"
        );
    }

    fn posthalt_checks(&mut self) {
        // (i) every alive free vertex is outer.
        for v in 0..self.h.vertex_count() {
            if self.h.is_free(v) && self.status[v] != Status::Dead {
                self.report.posthalt_free_outer += 1;
                assert_eq!(self.status[v], Status::Outer, "alive free vertex {v} left unexplored");
            }
        }
        // (ii) an alive edge out of an alive outer vertex leads to an inner
        // vertex or stays inside one blossom; alive outer vertices are all
        // completely scanned.
        for v in 0..self.h.vertex_count() {
            if self.status[v] == Status::Outer {
                assert!(self.completely_scanned[v], "alive outer vertex {v} not completely scanned");
            }
        }
        for te in 0..self.h.edge_count() {
            let e = &self.h.edges[te];
            let (u, v) = (e.u as usize, e.v as usize);
            if self.status[u] == Status::Dead || self.status[v] == Status::Dead {
                continue;
            }
            for (a, b) in [(u, v), (v, u)] {
                if self.status[a] == Status::Outer {
                    self.report.posthalt_edges += 1;
                    let ok = self.status[b] == Status::Inner
                        || self.tracker.find_base(a) == self.tracker.find_base(b);
                    assert!(ok, "post-halt property (ii) fails on tight edge {te}");
                }
            }
            // Both ends scanned implies merged into one blossom.
            if !e.matched && self.scanned_from[te] == [true, true] {
                self.report.both_ends_scanned += 1;
                assert_eq!(
                    self.tracker.find_base(u),
                    self.tracker.find_base(v),
                    "edge {te} scanned from both ends but bases differ"
                );
            }
        }
    }
}

/// Translate tight-graph paths into paths of the original graph by expanding
/// contracted blossoms through their recorded rings: a blossom is entered at
/// the preimage endpoint of the incoming edge and crossed to its base along
/// the even-length alternating ring path.
pub fn expand_paths(ps: &PathSet, h: &TightGraph, g: &Graph, search: &AugmentedSearch) -> Vec<Path> {
    ps.paths.iter().map(|p| expand_one(p, h, g, search)).collect()
}

fn expand_one(hp: &Path, h: &TightGraph, g: &Graph, search: &AugmentedSearch) -> Path {
    let endpoint_in = |te: usize, hv: usize| -> Vertex {
        let (a, b) = g.endpoints(h.edges[te].preimage as usize);
        if h.label[a] as usize == hv {
            a
        } else {
            debug_assert_eq!(h.label[b] as usize, hv);
            b
        }
    };
    let last = hp.vertices.len() - 1;
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut edges = Vec::new();
    for (i, &hv) in hp.vertices.iter().enumerate() {
        let entry = (i > 0).then(|| endpoint_in(hp.edges[i - 1], hv));
        let exit = (i < last).then(|| endpoint_in(hp.edges[i], hv));
        match h.reps[hv] {
            TightVertex::Single(v) => {
                if i == 0 {
                    vertices.push(v);
                }
                debug_assert_eq!(*vertices.last().unwrap(), v);
            }
            TightVertex::Blossom(id) => {
                let base = search.forest.node(id).base;
                match (entry, exit) {
                    (None, Some(t)) => {
                        // Free endpoint: the expanded path starts at the base.
                        let p = search.forest.path_to_base(id, t).expect("preimage endpoint in blossom").reversed();
                        vertices.extend_from_slice(&p.vertices);
                        edges.extend_from_slice(&p.edges);
                    }
                    (Some(a), Some(b)) => {
                        if h.edges[hp.edges[i - 1]].matched {
                            // Entered through the base; leave at b.
                            debug_assert_eq!(a, base);
                            let p = search.forest.path_to_base(id, b).expect("preimage endpoint in blossom").reversed();
                            vertices.extend_from_slice(&p.vertices[1..]);
                            edges.extend_from_slice(&p.edges);
                        } else {
                            // Entered off-base; the outgoing edge is matched
                            // and must leave through the base.
                            debug_assert_eq!(b, base);
                            let p = search.forest.path_to_base(id, a).expect("preimage endpoint in blossom");
                            vertices.extend_from_slice(&p.vertices[1..]);
                            edges.extend_from_slice(&p.edges);
                        }
                    }
                    (Some(a), None) => {
                        // Free endpoint on the far side: run down to the base.
                        let p = search.forest.path_to_base(id, a).expect("preimage endpoint in blossom");
                        vertices.extend_from_slice(&p.vertices[1..]);
                        edges.extend_from_slice(&p.edges);
                    }
                    (None, None) => unreachable!("augmenting path with a single vertex"),
                }
            }
        }
        if let Some(exit_v) = exit {
            debug_assert_eq!(*vertices.last().unwrap(), exit_v, "segment must end at the crossing endpoint");
            let te = hp.edges[i];
            let pe = h.edges[te].preimage as usize;
            let to = g.other_end(pe, exit_v);
            edges.push(pe);
            vertices.push(to);
        }
    }
    Path::new(vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Matching;
    use crate::phase1::{run_search, SearchConfig, SearchOutcome};
    use crate::tight::build_tight_graph;

    fn checked(h: &TightGraph) -> (PathSet, CheckReport) {
        find_path_set(h, Phase2Config { check_invariants: true, trace: None })
    }

    /// Build a tight graph for tests by running phase 1 on (g, m).
    fn tight_of(g: &Graph, m: &Matching) -> (TightGraph, AugmentedSearch) {
        match run_search(g, m, SearchConfig { check_invariants: true, trace: None }).unwrap() {
            SearchOutcome::Augmented(s) => (build_tight_graph(g, m, &s, None), s),
            SearchOutcome::Optimal(_) => panic!("expected augmenting structure"),
        }
    }

    #[test]
    fn single_free_edge() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let m = Matching::empty(2);
        let (h, _) = tight_of(&g, &m);
        let (ps, _) = checked(&h);
        assert_eq!(ps.paths.len(), 1);
        assert_eq!(ps.paths[0].len(), 1);
    }

    #[test]
    fn grow_then_augment_path_of_three() {
        // f1 - x - x' - f2 with (x, x') matched.
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let m = Matching::from_edges(&g, &[1]).unwrap();
        let (h, _) = tight_of(&g, &m);
        let (ps, _) = checked(&h);
        assert_eq!(ps.paths.len(), 1);
        assert_eq!(ps.paths[0].len(), 3);
    }

    #[test]
    fn two_disjoint_edges_give_two_paths() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let m = Matching::empty(4);
        let (h, _) = tight_of(&g, &m);
        let (ps, _) = checked(&h);
        assert_eq!(ps.paths.len(), 2);
    }

    #[test]
    fn odd_cycle_off_root_contracts_and_augments() {
        // Free root 0, triangle 1-2 matched reached through 0-1, free tail 4
        // reachable only through the blossom: 0-1, 1-2 (m), 2-0... use the
        // six-vertex fixture whose tight graph has a contracted triangle.
        let g = Graph::new(
            6,
            [(0, 1), (0, 2), (1, 2), (1, 4), (4, 5), (3, 5)],
        )
        .unwrap();
        let m = Matching::from_edges(&g, &[2, 4]).unwrap();
        let (h, s) = tight_of(&g, &m);
        let (ps, report) = checked(&h);
        assert_eq!(ps.paths.len(), 1);
        assert_eq!(ps.paths[0].len(), 3, "tight-graph path crosses the blossom vertex");
        assert!(report.scans > 0);
        let expanded = expand_paths(&ps, &h, &g, &s);
        assert_eq!(expanded.len(), 1);
        let p = &expanded[0];
        assert_eq!(p.len() as u64, 2 * s.delta_final - 1);
        assert!(p.is_augmenting(&g, &m), "expanded path {:?} must augment", p);
    }

    #[test]
    fn identity_expansion_without_blossoms() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let m = Matching::from_edges(&g, &[1]).unwrap();
        let (h, s) = tight_of(&g, &m);
        let (ps, _) = checked(&h);
        let expanded = expand_paths(&ps, &h, &g, &s);
        assert_eq!(expanded[0].vertices.len(), ps.paths[0].vertices.len());
        assert!(expanded[0].is_augmenting(&g, &m));
    }

    #[test]
    fn maximality_on_random_identity_graphs() {
        use crate::oracle::brute_augmenting_paths;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xD1F);
        for _ in 0..400 {
            let n = rng.random_range(1..=12usize);
            let possible = n * n.saturating_sub(1) / 2;
            let m = rng.random_range(0..=possible);
            let mut edges = Vec::new();
            let mut seen = std::collections::HashSet::new();
            while edges.len() < m {
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                if u != v && seen.insert((u.min(v), u.max(v))) {
                    edges.push((u.min(v), u.max(v)));
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let mut used = vec![false; n];
            let mut chosen = Vec::new();
            for e in 0..g.edge_count() {
                if !rng.random_bool(0.4) {
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
            let h = TightGraph::from_graph(&g, &matching);
            let (ps, _) = checked(&h);
            let mut covered = vec![false; n];
            for p in &ps.paths {
                assert!(p.is_augmenting(&g, &matching), "identity path must augment the host");
                for &v in &p.vertices {
                    assert!(!covered[v], "paths overlap at {v}");
                    covered[v] = true;
                }
            }
            // No augmenting path of the instance avoids the found set.
            for seq in brute_augmenting_paths(&g, &matching).unwrap() {
                assert!(
                    seq.iter().any(|&v| covered[v]),
                    "augmenting path {:?} is disjoint from the found set",
                    seq
                );
            }
        }
    }

    #[test]
    fn phase2_blossom_step_on_cycle_off_free_root() {
        // Odd cycle hanging off the free root 0, with the exit edge to the
        // free vertex 3 leaving from a vertex that starts inner. The cycle
        // forms only at the final dual total in phase 1, so it is not
        // positive, stays uncontracted in the tight graph, and phase 2 must
        // run its own blossom step before the augment can be found.
        let g = Graph::new(
            4,
            [
                (0, 1), // 0
                (1, 2), // 1 matched
                (0, 2), // 2
                (1, 3), // 3
            ],
        )
        .unwrap();
        let m = Matching::from_edges(&g, &[1]).unwrap();
        let (h, s) = tight_of(&g, &m);
        assert!(s.positive_roots.is_empty(), "cycle must not be contracted by phase 1");
        assert_eq!(h.edge_count(), 4, "every edge stays tight");
        let mut buf: Vec<u8> = Vec::new();
        let (ps, _) = find_path_set(&h, Phase2Config { check_invariants: true, trace: Some(&mut buf) });
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().any(|l| l.contains("p2 blossom")), "trace: {text}");
        // All cycle vertices end up with the root-side base.
        let expanded = expand_paths(&ps, &h, &g, &s);
        assert_eq!(expanded.len(), 1);
        assert_eq!(expanded[0].vertices, vec![3, 1, 2, 0]);
        assert!(expanded[0].is_augmenting(&g, &m));
        assert_eq!(expanded[0].len() as u64, 2 * s.delta_final - 1);
    }
}
