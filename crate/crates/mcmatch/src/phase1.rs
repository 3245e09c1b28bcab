//! Phase 1: a single search of the simplified dual-adjusting blossom
//! algorithm.
//!
//! Edge weights are implicit (2 on matched edges, 0 elsewhere) and every
//! vertex dual starts at 1, so matched edges begin tight and unmatched edges
//! strictly dominated. The search grows an alternating forest from the free
//! vertices, contracts blossoms, and advances the global dual total through
//! integer bucket indices until either an edge joins two outer vertices in
//! distinct trees (an augmenting path exists) or every bucket through
//! floor(n/2) is exhausted (the matching is maximum, with a verifiable dual
//! certificate).
//!
//! Duals are stored lazily as (value-at, since, slope) triples so a dual
//! adjustment is a single global counter increment. Each unmatched edge is
//! enqueued at its projected tight time when an endpoint turns outer and
//! revalidated when popped; stale entries are dropped or re-enqueued at the
//! recomputed index.

use crate::blossom::{assemble_ring, fundamental_cycle, BaseTracker, BlossomForest, NodeId, PackedLinks, NONE32};
use crate::graph::{EdgeId, Graph, Matching, Vertex};
use crate::oracle::{CertBlossom, Certificate};
use crate::trace::{StepKind, TraceSink};
use std::io::Write;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Unreached,
    Inner,
    Outer,
}

/// FIFO bucket lists backed by one cell arena.
struct EventQueue {
    head: Vec<u32>,
    tail: Vec<u32>,
    cells: Vec<(u32, u32)>, // (edge id, next cell)
}

impl EventQueue {
    fn new(buckets: usize) -> EventQueue {
        EventQueue { head: vec![NONE32; buckets], tail: vec![NONE32; buckets], cells: Vec::new() }
    }

    fn push(&mut self, bucket: usize, edge: usize) {
        let cell = self.cells.len() as u32;
        self.cells.push((edge as u32, NONE32));
        if self.head[bucket] == NONE32 {
            self.head[bucket] = cell;
        } else {
            self.cells[self.tail[bucket] as usize].1 = cell;
        }
        self.tail[bucket] = cell;
    }

    fn pop(&mut self, bucket: usize) -> Option<usize> {
        let h = self.head[bucket];
        if h == NONE32 {
            return None;
        }
        self.head[bucket] = self.cells[h as usize].1;
        Some(self.cells[h as usize].0 as usize)
    }
}

/// Lazily evaluated vertex dual: value(delta) = base + slope * (delta - since).
/// Packed small; duals are bounded by n/2 + 1 in magnitude.
#[derive(Debug, Clone, Copy)]
struct LazyDual {
    base: i32,
    since: u32,
    slope: i32,
}

impl LazyDual {
    const UNREACHED: LazyDual = LazyDual { base: 1, since: 0, slope: 0 };

    fn at(self, delta: u64) -> i64 {
        self.base as i64 + self.slope as i64 * (delta as i64 - self.since as i64)
    }
}

/// Per-search knobs: expensive invariant checking and an optional step trace.
#[derive(Default)]
pub struct SearchConfig<'a> {
    pub check_invariants: bool,
    pub trace: Option<&'a mut dyn Write>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("matching is not valid for the graph")]
    InvalidMatching,
}

/// Result of one phase-1 search.
pub enum SearchOutcome {
    /// No augmenting path exists; carries a dual certificate of maximality.
    Optimal(Certificate),
    /// An augmenting path exists; carries what phase 2 needs.
    Augmented(AugmentedSearch),
}

/// Data a successful search hands to the contraction and phase-2 stages.
pub struct AugmentedSearch {
    /// Dual total when the augmenting edge fired; shortest augmenting paths
    /// have length 2 * delta_final - 1.
    pub delta_final: u64,
    /// Per-vertex duals materialized at `delta_final` (32-bit: the scans of
    /// the contraction stage read this array at random).
    pub final_y: Vec<i32>,
    /// Every blossom contracted during the search.
    pub forest: BlossomForest,
    /// Maximal blossoms formed strictly before `delta_final` (positive dual).
    pub positive_roots: Vec<NodeId>,
}

impl AugmentedSearch {
    /// Verification dual of a blossom node at the end of the search.
    pub fn blossom_dual(&self, id: NodeId) -> i64 {
        let node = self.forest.node(id);
        2 * (node.absorbed_at.unwrap_or(self.delta_final) - node.created_at) as i64
    }
}

/// Run one search against `m`. Requires only that `m` is a valid matching of
/// `g`; the initial duals are the constant 1.
pub fn run_search(g: &Graph, m: &Matching, cfg: SearchConfig) -> Result<SearchOutcome, SearchError> {
    if !m.is_valid_for(g) {
        return Err(SearchError::InvalidMatching);
    }
    let mut search = Search::new(g, m, cfg);
    Ok(search.run())
}

struct Search<'a, 't> {
    g: &'a Graph,
    m: &'a Matching,
    check: bool,
    trace: Option<TraceSink<'t>>,
    status: Vec<Status>,
    dual: Vec<LazyDual>,
    root: Vec<u32>,
    grow_parent: PackedLinks,
    tracker: BaseTracker,
    forest: BlossomForest,
    node_of: Vec<u32>,
    marks: Vec<u32>,
    epoch: u32,
    delta: u64,
    cutoff: u64,
    events: EventQueue,
    /// Search-structure edges, kept only for invariant checking.
    s_edges: Vec<EdgeId>,
}

enum Fired {
    None,
    Augment(EdgeId),
}

impl<'a, 't> Search<'a, 't> {
    fn new(g: &'a Graph, m: &'a Matching, cfg: SearchConfig<'t>) -> Search<'a, 't> {
        let n = g.vertex_count();
        let cutoff = (n / 2) as u64;
        Search {
            g,
            m,
            check: cfg.check_invariants,
            trace: cfg.trace.map(TraceSink::phase1),
            status: vec![Status::Unreached; n],
            dual: vec![LazyDual::UNREACHED; n],
            root: vec![NONE32; n],
            grow_parent: PackedLinks::new(n),
            tracker: if cfg.check_invariants { BaseTracker::with_shadow(n) } else { BaseTracker::new(n) },
            forest: BlossomForest::new(n),
            node_of: vec![NONE32; n],
            marks: vec![0; n],
            epoch: 0,
            delta: 0,
            cutoff,
            events: EventQueue::new(cutoff as usize + 1),
            s_edges: Vec::new(),
        }
    }

    fn run(&mut self) -> SearchOutcome {
        let n = self.g.vertex_count();
        // Every free vertex becomes an outer root; roots are created in
        // vertex-index order and scanned once all are marked.
        for v in 0..n {
            if self.m.is_free(v) {
                self.status[v] = Status::Outer;
                self.dual[v] = LazyDual { base: 1, since: 0, slope: -1 };
                self.root[v] = v as u32;
            }
        }
        for v in 0..n {
            if self.m.is_free(v) {
                self.scan_outer(v);
            }
        }
        if self.check {
            self.verify_duals(self.delta);
        }
        loop {
            while let Some(e) = self.events.pop(self.delta as usize) {
                match self.dispatch(e) {
                    Fired::None => {}
                    Fired::Augment(e) => return SearchOutcome::Augmented(self.finish_augmented(e)),
                }
            }
            if self.check {
                self.verify_duals(self.delta);
            }
            if self.delta == self.cutoff {
                return SearchOutcome::Optimal(self.certificate());
            }
            self.delta += 1;
        }
    }

    /// Revalidate a popped event and fire the step it still justifies.
    fn dispatch(&mut self, e: EdgeId) -> Fired {
        let (a, b) = self.g.endpoints(e);
        if self.tracker.find_base(a) == self.tracker.find_base(b) {
            return Fired::None; // contracted away
        }
        let (u, v) = if self.status[a] == Status::Outer { (a, b) } else { (b, a) };
        debug_assert_eq!(self.status[u], Status::Outer, "event without an outer endpoint");
        match self.status[v] {
            // Slack is frozen while v is inner; v's own promotion rescans.
            Status::Inner => Fired::None,
            Status::Unreached => {
                debug_assert_eq!(self.dual[u].at(self.delta) + 1, 0, "grow event fired off-time");
                self.grow_step(u, v, e);
                Fired::None
            }
            Status::Outer => {
                let slack = self.dual[u].at(self.delta) + self.dual[v].at(self.delta);
                debug_assert!(slack >= 0, "dominated edge went negative");
                debug_assert_eq!(slack % 2, 0, "outer-outer slack must be even");
                let tight_at = self.delta + (slack / 2) as u64;
                if tight_at > self.delta {
                    // Endpoint promotions moved the projection; requeue.
                    if tight_at <= self.cutoff {
                        self.events.push(tight_at as usize, e);
                    }
                    return Fired::None;
                }
                if self.root[u] != self.root[v] {
                    Fired::Augment(e)
                } else {
                    self.blossom_step(u, v, e);
                    Fired::None
                }
            }
        }
    }

    /// Enqueue every unmatched edge at `u` at its projected tight time.
    fn scan_outer(&mut self, u: Vertex) {
        debug_assert_eq!(self.status[u], Status::Outer);
        let yu = self.dual[u].at(self.delta);
        for (v, e) in self.g.neighbors(u) {
            if self.m.mate_edge(u) == Some(e) {
                continue;
            }
            let slack = match self.status[v] {
                // Inner neighbors are frozen; their promotion rescans.
                Status::Inner => continue,
                Status::Unreached => yu + 1,
                Status::Outer => {
                    if self.tracker.find_base(v) == self.tracker.find_base(u) {
                        continue;
                    }
                    let s = yu + self.dual[v].at(self.delta);
                    debug_assert_eq!(s % 2, 0);
                    s / 2
                }
            };
            debug_assert!(slack >= 0, "edge already violated when scanned");
            let at = self.delta + slack as u64;
            if at <= self.cutoff {
                self.events.push(at as usize, e);
            }
        }
    }

    fn grow_step(&mut self, u: Vertex, v: Vertex, e: EdgeId) {
        let (w, matched_edge) = self.m.mate_and_edge(v).expect("unreached event target must be matched");
        self.status[v] = Status::Inner;
        self.dual[v] = LazyDual { base: 1, since: self.delta as u32, slope: 1 };
        self.status[w] = Status::Outer;
        self.dual[w] = LazyDual { base: 1, since: self.delta as u32, slope: -1 };
        self.grow_parent.set(w, (u, e));
        self.root[v] = self.root[u];
        self.root[w] = self.root[u];
        if self.check {
            self.s_edges.push(e);
            self.s_edges.push(matched_edge);
        }
        if let Some(t) = &mut self.trace {
            t.step(StepKind::Grow, self.delta, e, (u, v), None);
        }
        self.scan_outer(w);
    }

    fn blossom_step(&mut self, x: Vertex, y: Vertex, e: EdgeId) {
        self.epoch += 1;
        let (tracker, grow_parent, marks, m) = (&mut self.tracker, &self.grow_parent, &mut self.marks, self.m);
        let fc = fundamental_cycle(
            tracker,
            x,
            y,
            |b| m.mate_and_edge(b),
            |b| grow_parent.get(b),
            marks,
            self.epoch,
        );
        let node_of = &self.node_of;
        let (children, links) =
            assemble_ring(&fc, x, y, e, |b| (node_of[b] != NONE32).then(|| node_of[b] as usize));
        let node = self
            .forest
            .record_blossom(children, links, fc.nca_base, self.delta)
            .expect("blossom ring assembly broke an invariant");
        self.tracker.merge_into(&fc.merge_set(), fc.nca_base);
        self.node_of[fc.nca_base] = node as u32;
        let newly: Vec<Vertex> = fc.inner_vertices().collect();
        for &w in &newly {
            debug_assert_eq!(self.status[w], Status::Inner);
            self.status[w] = Status::Outer;
            self.dual[w] = LazyDual { base: self.dual[w].at(self.delta) as i32, since: self.delta as u32, slope: -1 };
        }
        if self.check {
            self.s_edges.push(e);
        }
        if let Some(t) = &mut self.trace {
            t.step(StepKind::Blossom, self.delta, e, (x, y), Some(node));
        }
        for &w in &newly {
            self.scan_outer(w);
        }
    }

    fn finish_augmented(&mut self, e: EdgeId) -> AugmentedSearch {
        if let Some(t) = &mut self.trace {
            let (u, v) = self.g.endpoints(e);
            t.step(StepKind::Augment, self.delta, e, (u, v), None);
        }
        if self.check {
            self.verify_duals(self.delta);
        }
        let delta_final = self.delta;
        let final_y = (0..self.g.vertex_count()).map(|v| self.dual[v].at(delta_final) as i32).collect();
        // Top-down prune: blossoms stamped with the final dual total are not
        // positive; their children may still be.
        let mut positive_roots = Vec::new();
        let mut stack: Vec<NodeId> =
            self.forest.node_ids().filter(|&id| self.forest.node(id).parent.is_none()).collect();
        while let Some(id) = stack.pop() {
            let node = self.forest.node(id);
            if node.created_at < delta_final {
                positive_roots.push(id);
            } else {
                for c in &node.children {
                    if let crate::blossom::Child::Node(cid) = c {
                        stack.push(*cid);
                    }
                }
            }
        }
        positive_roots.sort_unstable();
        AugmentedSearch {
            delta_final,
            final_y,
            forest: std::mem::replace(&mut self.forest, BlossomForest::new(0)),
            positive_roots,
        }
    }

    /// Dual certificate at one unit past the drained range: every undrained
    /// event projects beyond the cutoff, so all edges stay dominated there,
    /// and the free-vertex duals are low enough to rule out any augmenting
    /// path at either parity of n.
    fn certificate(&mut self) -> Certificate {
        let delta_cert = self.cutoff + 1;
        if self.check {
            self.verify_duals(delta_cert);
        }
        let y = (0..self.g.vertex_count()).map(|v| self.dual[v].at(delta_cert)).collect();
        let mut blossoms = Vec::new();
        for id in self.forest.node_ids() {
            let node = self.forest.node(id);
            let z = 2 * (node.absorbed_at.unwrap_or(delta_cert) - node.created_at) as i64;
            if z > 0 {
                blossoms.push(CertBlossom { vertices: self.forest.leaves(id), base: node.base, z });
            }
        }
        Certificate { y, blossoms, matching: self.m.clone() }
    }

    /// Full feasibility sweep at dual total `delta`: domination on every
    /// edge, tightness on matched and search-structure edges, and the shared
    /// parity of every in-forest dual. Only run when invariant checking is on.
    fn verify_duals(&mut self, delta: u64) {
        let mut parity: Option<i64> = None;
        for v in 0..self.g.vertex_count() {
            if self.status[v] != Status::Unreached {
                let p = self.dual[v].at(delta).rem_euclid(2);
                if let Some(q) = parity {
                    assert_eq!(p, q, "in-forest duals disagree on parity at vertex {v}");
                } else {
                    parity = Some(p);
                }
            }
        }
        for e in 0..self.g.edge_count() {
            let (u, v) = self.g.endpoints(e);
            let w = if self.m.contains_edge(e, self.g) { 2 } else { 0 };
            let lhs = self.dual[u].at(delta) + self.dual[v].at(delta) + shared_blossom_duals(&self.forest, u, v, delta);
            assert!(lhs >= w, "edge {e} ({u},{v}) undominated: {lhs} < {w} at delta {delta}");
            if w == 2 {
                assert_eq!(lhs, w, "matched edge {e} not tight at delta {delta}");
            }
        }
        for &e in &self.s_edges {
            let (u, v) = self.g.endpoints(e);
            let w = if self.m.contains_edge(e, self.g) { 2 } else { 0 };
            assert_eq!(
                self.dual[u].at(delta) + self.dual[v].at(delta) + shared_blossom_duals(&self.forest, u, v, delta),
                w,
                "search edge {e} lost tightness at delta {delta}"
            );
        }
    }
}

/// Sum of the duals of every blossom containing both endpoints, evaluated at
/// `delta`: the chains to the forest roots share exactly the common suffix.
fn shared_blossom_duals(forest: &BlossomForest, u: Vertex, v: Vertex, delta: u64) -> i64 {
    let cu = forest.chain_of(u);
    let cv = forest.chain_of(v);
    let mut zsum = 0;
    let mut iu = cu.len();
    let mut iv = cv.len();
    while iu > 0 && iv > 0 && cu[iu - 1] == cv[iv - 1] {
        iu -= 1;
        iv -= 1;
        let node = forest.node(cu[iu]);
        zsum += 2 * (node.absorbed_at.unwrap_or(delta).min(delta).saturating_sub(node.created_at)) as i64;
    }
    zsum
}
