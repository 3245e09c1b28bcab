//! The contracted tight-edge graph a successful phase-1 search leaves behind.
//!
//! Vertices are the maximal positive blossoms (contracted) plus every other
//! original vertex; edges are all tight edges joining distinct vertices, each
//! carrying its preimage edge id. Augmenting paths here are exactly the
//! images of the shortest augmenting paths of the original graph, which is
//! what phase 2 exploits.
//!
//! The construction runs once per phase over every edge, so the arrays are
//! 32-bit and the whole structure can be recycled between phases.

use crate::blossom::NodeId;
use crate::graph::{Graph, Matching, Vertex};
use crate::phase1::AugmentedSearch;

const NO_LABEL: u32 = u32::MAX;

/// What a tight-graph vertex stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TightVertex {
    /// An original vertex, unchanged.
    Single(Vertex),
    /// A contracted maximal positive blossom.
    Blossom(NodeId),
}

/// Edge of the tight graph with its preimage in the original graph.
#[derive(Debug, Clone, Copy)]
pub struct TightEdge {
    pub u: u32,
    pub v: u32,
    pub preimage: u32,
    pub matched: bool,
}

#[derive(Debug, Default)]
pub struct TightGraph {
    /// Original-vertex -> tight-vertex labeling.
    pub label: Vec<u32>,
    pub reps: Vec<TightVertex>,
    pub edges: Vec<TightEdge>,
    adj_offsets: Vec<u32>,
    adj: Vec<(u32, u32)>,
    mate: Vec<(u32, u32)>, // sentinel NO_LABEL when free
}

impl TightGraph {
    pub fn vertex_count(&self) -> usize {
        self.reps.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency(v).iter().map(|&(w, e)| (w as usize, e as usize))
    }

    /// Adjacency slice of (neighbor, tight edge id) pairs.
    pub fn adjacency(&self, v: usize) -> &[(u32, u32)] {
        &self.adj[self.adj_offsets[v] as usize..self.adj_offsets[v + 1] as usize]
    }

    /// Matching image: mate vertex and matched tight-edge id.
    pub fn mate_of(&self, v: usize) -> Option<(usize, usize)> {
        let (w, e) = self.mate[v];
        (w != NO_LABEL).then_some((w as usize, e as usize))
    }

    pub fn is_free(&self, v: usize) -> bool {
        self.mate[v].0 == NO_LABEL
    }

    /// Base vertex (in the original graph) of a tight-graph vertex.
    pub fn base_of(&self, v: usize, search: &AugmentedSearch) -> Vertex {
        match self.reps[v] {
            TightVertex::Single(w) => w,
            TightVertex::Blossom(id) => search.forest.node(id).base,
        }
    }

    fn clear(&mut self) {
        self.label.clear();
        self.reps.clear();
        self.edges.clear();
        self.adj_offsets.clear();
        self.adj.clear();
        self.mate.clear();
    }

    /// View any graph and matching as a tight graph with no contractions;
    /// lets the phase-2 search run on arbitrary instances.
    pub fn from_graph(g: &Graph, m: &Matching) -> TightGraph {
        let n = g.vertex_count();
        let mut h = TightGraph {
            label: (0..n as u32).collect(),
            reps: (0..n).map(TightVertex::Single).collect(),
            edges: Vec::with_capacity(g.edge_count()),
            adj_offsets: Vec::with_capacity(n + 1),
            adj: vec![(0, 0); 2 * g.edge_count()],
            mate: vec![(NO_LABEL, NO_LABEL); n],
        };
        let mut degree = vec![0u32; n];
        for e in 0..g.edge_count() {
            let (u, v) = g.endpoints(e);
            degree[u] += 1;
            degree[v] += 1;
            h.edges.push(TightEdge {
                u: u as u32,
                v: v as u32,
                preimage: e as u32,
                matched: m.contains_edge(e, g),
            });
        }
        let mut acc = 0u32;
        h.adj_offsets.push(0);
        for &d in &degree {
            acc += d;
            h.adj_offsets.push(acc);
        }
        let mut cursor = degree;
        cursor.copy_from_slice(&h.adj_offsets[..n]);
        for (id, te) in h.edges.iter().enumerate() {
            h.adj[cursor[te.u as usize] as usize] = (te.v, id as u32);
            cursor[te.u as usize] += 1;
            h.adj[cursor[te.v as usize] as usize] = (te.u, id as u32);
            cursor[te.v as usize] += 1;
            if te.matched {
                h.mate[te.u as usize] = (te.v, id as u32);
                h.mate[te.v as usize] = (te.u, id as u32);
            }
        }
        h
    }
}

/// Contract the maximal positive blossoms of a finished search and keep every
/// tight edge joining distinct contracted vertices. `recycle` donates buffer
/// capacity from a previous phase.
pub fn build_tight_graph(
    g: &Graph,
    m: &Matching,
    search: &AugmentedSearch,
    recycle: Option<TightGraph>,
) -> TightGraph {
    let n = g.vertex_count();
    let mut h = recycle.unwrap_or_default();
    h.clear();
    // Tight-vertex ids ordered by first contained original vertex. Blossom
    // members are pre-marked in the label array itself with a flagged node
    // id, then a sweep assigns final ids in vertex order.
    const NODE_FLAG: u32 = 1 << 31;
    h.label.resize(n, NO_LABEL);
    for &root in &search.positive_roots {
        debug_assert!((root as u32) < NODE_FLAG);
        for v in search.forest.leaves(root) {
            debug_assert_eq!(h.label[v], NO_LABEL);
            h.label[v] = root as u32 | NODE_FLAG;
        }
    }
    let mut node_label: std::collections::HashMap<NodeId, u32> = std::collections::HashMap::new();
    for v in 0..n {
        if h.label[v] == NO_LABEL {
            h.label[v] = h.reps.len() as u32;
            h.reps.push(TightVertex::Single(v));
        } else {
            let root = (h.label[v] & !NODE_FLAG) as NodeId;
            let id = *node_label.entry(root).or_insert_with(|| {
                h.reps.push(TightVertex::Blossom(root));
                (h.reps.len() - 1) as u32
            });
            h.label[v] = id;
        }
    }
    let hn = h.reps.len();
    // Single sweep over the edges: collect tight cross edges and count
    // degrees as we go.
    let mut degree = vec![0u32; hn];
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        let (lu, lv) = (h.label[u], h.label[v]);
        if lu == lv {
            continue;
        }
        let matched = m.contains_edge(e, g);
        let w: i32 = if matched { 2 } else { 0 };
        if search.final_y[u] + search.final_y[v] != w {
            continue; // not tight
        }
        degree[lu as usize] += 1;
        degree[lv as usize] += 1;
        h.edges.push(TightEdge { u: lu, v: lv, preimage: e as u32, matched });
    }
    h.adj_offsets.reserve(hn + 1);
    let mut acc = 0u32;
    h.adj_offsets.push(0);
    for &d in &degree {
        acc += d;
        h.adj_offsets.push(acc);
    }
    let mut cursor = degree; // reused as the fill cursor
    cursor.copy_from_slice(&h.adj_offsets[..hn]);
    h.adj.resize(2 * h.edges.len(), (0, 0));
    h.mate.resize(hn, (NO_LABEL, NO_LABEL));
    for (id, te) in h.edges.iter().enumerate() {
        h.adj[cursor[te.u as usize] as usize] = (te.v, id as u32);
        cursor[te.u as usize] += 1;
        h.adj[cursor[te.v as usize] as usize] = (te.u, id as u32);
        cursor[te.v as usize] += 1;
        if te.matched {
            debug_assert!(h.mate[te.u as usize].0 == NO_LABEL && h.mate[te.v as usize].0 == NO_LABEL);
            h.mate[te.u as usize] = (te.v, id as u32);
            h.mate[te.v as usize] = (te.u, id as u32);
        }
    }
    h
}
