//! Graph, matching and path representations plus matching validation and
//! path augmentation.

use thiserror::Error;

/// Dense 0-based vertex id.
pub type Vertex = usize;
/// Index into a graph's edge list.
pub type EdgeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: usize, vertex: Vertex },
    #[error("edge {edge} endpoint {vertex} is out of range for {n} vertices")]
    VertexOutOfRange { edge: usize, vertex: Vertex, n: usize },
}

/// Immutable undirected simple graph. Parallel edges are retained as distinct
/// edge ids; self-loops are rejected at construction. Endpoints are stored
/// 32-bit internally to keep the per-phase edge scans cache-friendly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj_offsets: Vec<u32>,
    adj: Vec<(u32, u32)>,
}

impl Graph {
    pub fn new(n: usize, edge_list: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Graph, GraphError> {
        let raw: Vec<(Vertex, Vertex)> = edge_list.into_iter().collect();
        assert!(n <= u32::MAX as usize && raw.len() <= u32::MAX as usize, "graph too large");
        let mut edges = Vec::with_capacity(raw.len());
        for (id, &(u, v)) in raw.iter().enumerate() {
            if u == v {
                return Err(GraphError::SelfLoop { edge: id, vertex: u });
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { edge: id, vertex: w, n });
                }
            }
            edges.push((u as u32, v as u32));
        }
        let mut degree = vec![0u32; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut adj_offsets = Vec::with_capacity(n + 1);
        let mut acc = 0u32;
        adj_offsets.push(0);
        for &d in &degree {
            acc += d;
            adj_offsets.push(acc);
        }
        let mut cursor = adj_offsets.clone();
        let mut adj = vec![(0u32, 0u32); 2 * edges.len()];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[cursor[u as usize] as usize] = (v, id as u32);
            cursor[u as usize] += 1;
            adj[cursor[v as usize] as usize] = (u, id as u32);
            cursor[v as usize] += 1;
        }
        Ok(Graph { n, edges, adj_offsets, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        let (u, v) = self.edges[e];
        (u as usize, v as usize)
    }

    /// Other endpoint of `e` as seen from `v`.
    pub fn other_end(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.endpoints(e);
        debug_assert!(v == a || v == b);
        if v == a {
            b
        } else {
            a
        }
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, EdgeId)> + '_ {
        self.adj[self.adj_offsets[v] as usize..self.adj_offsets[v + 1] as usize]
            .iter()
            .map(|&(w, e)| (w as usize, e as usize))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        (self.adj_offsets[v + 1] - self.adj_offsets[v]) as usize
    }
}

/// Involutive mate map over the vertices of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<(Vertex, EdgeId)>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("edge {0} shares a vertex with an edge already in the matching")]
    Overlap(EdgeId),
    #[error("path is not augmenting for the current matching")]
    NotAugmenting,
}

impl Matching {
    pub fn empty(n: usize) -> Matching {
        Matching { mate: vec![None; n] }
    }

    /// Build a matching from explicit edge ids, rejecting overlaps.
    pub fn from_edges(g: &Graph, edges: &[EdgeId]) -> Result<Matching, MatchingError> {
        let mut m = Matching::empty(g.vertex_count());
        for &e in edges {
            let (u, v) = g.endpoints(e);
            if m.mate[u].is_some() || m.mate[v].is_some() {
                return Err(MatchingError::Overlap(e));
            }
            m.mate[u] = Some((v, e));
            m.mate[v] = Some((u, e));
        }
        Ok(m)
    }

    pub fn mate(&self, v: Vertex) -> Option<Vertex> {
        self.mate[v].map(|(w, _)| w)
    }

    pub fn mate_edge(&self, v: Vertex) -> Option<EdgeId> {
        self.mate[v].map(|(_, e)| e)
    }

    /// Mate and the edge realizing it, together.
    pub fn mate_and_edge(&self, v: Vertex) -> Option<(Vertex, EdgeId)> {
        self.mate[v]
    }

    pub fn is_free(&self, v: Vertex) -> bool {
        self.mate[v].is_none()
    }

    pub fn contains_edge(&self, e: EdgeId, g: &Graph) -> bool {
        let (u, _) = g.endpoints(e);
        self.mate_edge(u) == Some(e)
    }

    /// Number of matched edges.
    pub fn size(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.mate.len()
    }

    /// Matched edge ids, each reported once.
    pub fn edge_ids(&self) -> Vec<EdgeId> {
        let mut out = Vec::new();
        for (v, slot) in self.mate.iter().enumerate() {
            if let Some((w, e)) = slot {
                if v < *w {
                    out.push(*e);
                }
            }
        }
        out
    }

    /// Matched vertex pairs (u, v) with u < v.
    pub fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (v, slot) in self.mate.iter().enumerate() {
            if let Some((w, _)) = slot {
                if v < *w {
                    out.push((v, *w));
                }
            }
        }
        out
    }

    /// True iff the mate map is an involution without fixed points and every
    /// matched pair is an edge of `g` under the recorded edge id.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.mate.len() != g.vertex_count() {
            return false;
        }
        for (v, slot) in self.mate.iter().enumerate() {
            if let Some((w, e)) = *slot {
                if w == v || w >= self.mate.len() || self.mate[w] != Some((v, e)) {
                    return false;
                }
                if e >= g.edge_count() {
                    return false;
                }
                let (a, b) = g.endpoints(e);
                if (a, b) != (v, w) && (b, a) != (v, w) {
                    return false;
                }
            }
        }
        true
    }

    /// Flip the matching along an augmenting path, growing it by one edge.
    pub fn augment(&mut self, g: &Graph, p: &Path) -> Result<(), MatchingError> {
        if !p.is_augmenting(g, self) {
            return Err(MatchingError::NotAugmenting);
        }
        for (i, &e) in p.edges.iter().enumerate() {
            let u = p.vertices[i];
            let v = p.vertices[i + 1];
            if i % 2 == 0 {
                self.mate[u] = Some((v, e));
                self.mate[v] = Some((u, e));
            }
            // Odd path positions were matched before the flip; their endpoints
            // are overwritten by the surrounding even positions.
        }
        Ok(())
    }
}

/// Free helper mirroring `Matching::is_valid_for`.
pub fn validate_matching(g: &Graph, m: &Matching) -> bool {
    m.is_valid_for(g)
}

/// Vertex-simple path with one edge id per consecutive vertex pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<EdgeId>) -> Path {
        assert_eq!(vertices.len(), edges.len() + 1, "vertex/edge count mismatch");
        Path { vertices, edges }
    }

    pub fn single(v: Vertex) -> Path {
        Path { vertices: vec![v], edges: Vec::new() }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        vertices.reverse();
        edges.reverse();
        Path { vertices, edges }
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = self.vertices.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Consecutive vertices joined by the stated edges of `g`.
    pub fn is_walk_in(&self, g: &Graph) -> bool {
        self.edges.iter().enumerate().all(|(i, &e)| {
            if e >= g.edge_count() {
                return false;
            }
            let (a, b) = g.endpoints(e);
            let (u, v) = (self.vertices[i], self.vertices[i + 1]);
            (a, b) == (u, v) || (b, a) == (u, v)
        })
    }

    /// Edges alternate unmatched/matched, starting unmatched.
    pub fn is_alternating(&self, g: &Graph, m: &Matching) -> bool {
        self.is_walk_in(g)
            && self
                .edges
                .iter()
                .enumerate()
                .all(|(i, &e)| m.contains_edge(e, g) == (i % 2 == 1))
    }

    /// Even-length alternating path starting with the matched edge at its
    /// first vertex (the shape traversing a blossom down to its base).
    pub fn is_even_alternating(&self, g: &Graph, m: &Matching) -> bool {
        self.len().is_multiple_of(2)
            && self.is_simple()
            && self.is_walk_in(g)
            && self
                .edges
                .iter()
                .enumerate()
                .all(|(i, &e)| m.contains_edge(e, g) == (i % 2 == 0))
    }

    /// Vertex-simple, alternating, odd length, both endpoints free.
    pub fn is_augmenting(&self, g: &Graph, m: &Matching) -> bool {
        self.len() % 2 == 1
            && self.is_simple()
            && self.is_alternating(g, m)
            && m.is_free(self.vertices[0])
            && m.is_free(*self.vertices.last().unwrap())
    }
}
