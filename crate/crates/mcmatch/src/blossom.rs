//! Base-vertex tracking over a growing search forest and the ordered blossom
//! representation with alternating-path extraction.
//!
//! Both search phases share this machinery: a union-find structure answers
//! "base vertex of the blossom containing v", an arena of ordered ring nodes
//! records how each blossom was stitched together, and `path_to_base`
//! reconstructs the even-length alternating path from any member down to the
//! blossom base.

use crate::graph::{EdgeId, Path, Vertex};
use thiserror::Error;

/// Union-find over vertices with a designated base vertex per set.
///
/// Replaces the linear-time incremental-tree set-merging structure with
/// union-by-rank plus path compression behind the same interface; the
/// amortized alpha(m, n) overhead is indistinguishable at the scales this
/// crate targets.
#[derive(Debug)]
pub struct BaseTracker {
    parent: Vec<u32>,
    rank: Vec<u8>,
    base: Vec<u32>,
    shadow: Option<Shadow>,
}

/// Naive mirror of the merge structure, updated eagerly on every merge.
/// Instrumented runs compare it against the union-find answer on every query.
#[derive(Debug)]
struct Shadow {
    base: Vec<Vertex>,
    members: Vec<Vec<Vertex>>,
}

impl BaseTracker {
    pub fn new(n: usize) -> BaseTracker {
        assert!(n < u32::MAX as usize);
        BaseTracker {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
            base: (0..n as u32).collect(),
            shadow: None,
        }
    }

    /// Instrumented variant carrying the naive shadow array.
    pub fn with_shadow(n: usize) -> BaseTracker {
        let mut t = BaseTracker::new(n);
        t.shadow = Some(Shadow {
            base: (0..n).collect(),
            members: (0..n).map(|v| vec![v]).collect(),
        });
        t
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    fn find_root(&mut self, v: usize) -> usize {
        let mut r = v as u32;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut cur = v as u32;
        while self.parent[cur as usize] != r {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = r;
            cur = next;
        }
        r as usize
    }

    /// Base vertex of the blossom currently containing `v`; singletons return
    /// themselves. Panics if `v` was never registered.
    pub fn find_base(&mut self, v: Vertex) -> Vertex {
        assert!(v < self.parent.len(), "vertex {v} not registered in BaseTracker");
        let root = self.find_root(v);
        let b = self.base[root] as usize;
        if let Some(shadow) = &self.shadow {
            assert_eq!(shadow.base[v], b, "shadow base disagrees at vertex {v}");
        }
        b
    }

    /// Unify the sets containing `members` and designate `new_base` as the
    /// base of the result. `new_base` must already belong to one of the sets.
    pub fn merge_into(&mut self, members: &[Vertex], new_base: Vertex) {
        assert!(!members.is_empty());
        let old_bases: Option<Vec<Vertex>> = self.shadow.as_ref().map(|s| {
            let mut bases: Vec<Vertex> = members.iter().map(|&m| s.base[m]).collect();
            bases.sort_unstable();
            bases.dedup();
            bases
        });
        let mut root = self.find_root(members[0]);
        for &m in &members[1..] {
            let r = self.find_root(m);
            if r == root {
                continue;
            }
            root = if self.rank[root] < self.rank[r] {
                self.parent[root] = r as u32;
                r
            } else {
                if self.rank[root] == self.rank[r] {
                    self.rank[root] += 1;
                }
                self.parent[r] = root as u32;
                root
            };
        }
        debug_assert_eq!(self.find_root(new_base), root, "new_base outside the merged sets");
        self.base[root] = new_base as u32;
        if let Some(bases) = old_bases {
            let shadow = self.shadow.as_mut().unwrap();
            let mut all: Vec<Vertex> = Vec::new();
            for b in bases {
                all.append(&mut std::mem::take(&mut shadow.members[b]));
            }
            for &v in &all {
                shadow.base[v] = new_base;
            }
            shadow.members[new_base] = all;
        }
    }
}

/// Index of a node in a [`BlossomForest`].
pub type NodeId = usize;

pub(crate) const NONE32: u32 = u32::MAX;

/// Packed optional (vertex, edge) pairs, one per vertex; the per-phase
/// search-forest link arrays are hot enough to warrant the 8-byte layout.
#[derive(Debug, Clone)]
pub(crate) struct PackedLinks(Vec<(u32, u32)>);

impl PackedLinks {
    pub fn new(n: usize) -> PackedLinks {
        PackedLinks(vec![(NONE32, 0); n])
    }

    #[inline]
    pub fn get(&self, v: usize) -> Option<(usize, usize)> {
        let (a, b) = self.0[v];
        (a != NONE32).then_some((a as usize, b as usize))
    }

    #[inline]
    pub fn set(&mut self, v: usize, link: (usize, usize)) {
        self.0[v] = (link.0 as u32, link.1 as u32);
    }

    #[inline]
    pub fn is_set(&self, v: usize) -> bool {
        self.0[v].0 != NONE32
    }
}

/// A ring position: either an original vertex or a previously formed blossom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Child {
    Leaf(Vertex),
    Node(NodeId),
}

/// Edge joining ring child i to child i+1 (indices mod ring length).
/// `from` lies in child i, `to` in child i+1.
#[derive(Debug, Clone, Copy)]
pub struct RingLink {
    pub from: Vertex,
    pub to: Vertex,
    pub edge: EdgeId,
    pub matched: bool,
}

/// One blossom: the odd ring of sub-blossoms recorded in contraction order.
/// `children[0]` contains the base vertex, and the two links touching it are
/// both unmatched.
#[derive(Debug)]
pub struct BlossomNode {
    pub children: Vec<Child>,
    pub links: Vec<RingLink>,
    pub base: Vertex,
    pub created_at: u64,
    pub parent: Option<(NodeId, usize)>,
    pub absorbed_at: Option<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlossomError {
    #[error("blossom ring must have odd length >= 3, got {0}")]
    BadRingLength(usize),
    #[error("ring link {0} breaks unmatched/matched alternation")]
    BrokenAlternation(usize),
    #[error("base vertex {base} is not the base of ring child 0")]
    BaseOutsideFirstChild { base: Vertex },
    #[error("matched ring link {0} endpoint is not a child base")]
    MatchedLinkOffBase(usize),
    #[error("vertex {0} is not a member of the blossom")]
    NotInBlossom(Vertex),
}

/// Arena of blossom ring nodes with leaf back-pointers.
#[derive(Debug)]
pub struct BlossomForest {
    nodes: Vec<BlossomNode>,
    leaf_parent: Vec<(u32, u32)>, // (node, child index), NONE32 when free
}

impl BlossomForest {
    pub fn new(n: usize) -> BlossomForest {
        BlossomForest { nodes: Vec::new(), leaf_parent: vec![(NONE32, 0); n] }
    }

    fn leaf_parent_of(&self, v: Vertex) -> Option<(NodeId, usize)> {
        let (node, idx) = self.leaf_parent[v];
        (node != NONE32).then_some((node as usize, idx as usize))
    }

    pub fn node(&self, id: NodeId) -> &BlossomNode {
        &self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        0..self.nodes.len()
    }

    fn child_base(&self, c: &Child) -> Vertex {
        match c {
            Child::Leaf(v) => *v,
            Child::Node(id) => self.nodes[*id].base,
        }
    }

    /// Record a freshly contracted blossom. Children are given in ring order
    /// with `children[0]` containing `base`; `links[i]` joins child i to child
    /// i+1 and the ring must alternate starting and ending unmatched.
    pub fn record_blossom(
        &mut self,
        children: Vec<Child>,
        links: Vec<RingLink>,
        base: Vertex,
        created_at: u64,
    ) -> Result<NodeId, BlossomError> {
        let k = children.len();
        if k < 3 || k.is_multiple_of(2) || links.len() != k {
            return Err(BlossomError::BadRingLength(k));
        }
        for (i, l) in links.iter().enumerate() {
            if l.matched != (i % 2 == 1) {
                return Err(BlossomError::BrokenAlternation(i));
            }
            if l.matched {
                let from_base = self.child_base(&children[i]);
                let to_base = self.child_base(&children[(i + 1) % k]);
                if l.from != from_base || l.to != to_base {
                    return Err(BlossomError::MatchedLinkOffBase(i));
                }
            }
        }
        if self.child_base(&children[0]) != base {
            return Err(BlossomError::BaseOutsideFirstChild { base });
        }
        let id = self.nodes.len();
        for (idx, c) in children.iter().enumerate() {
            match c {
                Child::Leaf(v) => {
                    debug_assert!(self.leaf_parent_of(*v).is_none(), "leaf {v} already absorbed");
                    self.leaf_parent[*v] = (id as u32, idx as u32);
                }
                Child::Node(cid) => {
                    debug_assert!(self.nodes[*cid].parent.is_none(), "node {cid} already absorbed");
                    self.nodes[*cid].parent = Some((id, idx));
                    self.nodes[*cid].absorbed_at = Some(created_at);
                }
            }
        }
        self.nodes.push(BlossomNode {
            children,
            links,
            base,
            created_at,
            parent: None,
            absorbed_at: None,
        });
        Ok(id)
    }

    /// Vertices of the blossom, i.e. the leaves of its ring tree.
    pub fn leaves(&self, id: NodeId) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(n) = stack.pop() {
            for c in &self.nodes[n].children {
                match c {
                    Child::Leaf(v) => out.push(*v),
                    Child::Node(cid) => stack.push(*cid),
                }
            }
        }
        out
    }

    /// Blossom nodes containing `v`, innermost first.
    pub fn chain_of(&self, v: Vertex) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut cur = self.leaf_parent_of(v);
        while let Some((id, _)) = cur {
            out.push(id);
            cur = self.nodes[id].parent;
        }
        out
    }

    /// Outermost blossom containing `v`, if any.
    pub fn root_of_leaf(&self, v: Vertex) -> Option<NodeId> {
        self.chain_of(v).pop()
    }

    /// Index of the ring child of `id` containing leaf `v`.
    fn child_index(&self, id: NodeId, v: Vertex) -> Result<usize, BlossomError> {
        let mut cur = self.leaf_parent_of(v).ok_or(BlossomError::NotInBlossom(v))?;
        loop {
            if cur.0 == id {
                return Ok(cur.1);
            }
            cur = self.nodes[cur.0].parent.ok_or(BlossomError::NotInBlossom(v))?;
        }
    }

    /// The even-length alternating path from member `v` to the blossom base,
    /// starting with the matched edge at `v` (empty when `v` is the base).
    pub fn path_to_base(&self, id: NodeId, v: Vertex) -> Result<Path, BlossomError> {
        self.child_index(id, v)?; // membership check
        let mut vertices = vec![v];
        let mut edges = Vec::new();
        self.emit(&Child::Node(id), v, false, &mut vertices, &mut edges);
        Ok(Path::new(vertices, edges))
    }

    /// Append the steps of the path between `v` and the base of `child`.
    /// Forward (`rev == false`) assumes the output currently ends at `v` and
    /// appends steps down to the base; reversed assumes it ends at the base
    /// and appends steps out to `v`.
    fn emit(&self, child: &Child, v: Vertex, rev: bool, vertices: &mut Vec<Vertex>, edges: &mut Vec<EdgeId>) {
        let id = match child {
            Child::Leaf(w) => {
                debug_assert_eq!(*w, v);
                return;
            }
            Child::Node(id) => *id,
        };
        let j = self.child_index(id, v).expect("entry vertex must be inside the child");
        if j == 0 {
            self.emit(&self.nodes[id].children[0], v, rev, vertices, edges);
            return;
        }
        // Plan the ring walk from child j to child 0 in the direction of j's
        // matched ring link. Each visit is (child index, entry vertex, exit
        // vertex); `step` is the oriented link leaving the visit.
        struct Visit {
            idx: usize,
            entry: Vertex,
            exit: Vertex,
            step: Option<(EdgeId, Vertex, Vertex)>, // (edge, from, to) in walk direction
        }
        let node = &self.nodes[id];
        let k = node.children.len();
        let forward = node.links[j].matched;
        debug_assert!(forward != node.links[j - 1].matched);
        let mut plan: Vec<Visit> = Vec::new();
        let mut h = j;
        let mut entry = v;
        loop {
            if h == 0 {
                plan.push(Visit { idx: 0, entry, exit: node.base, step: None });
                break;
            }
            let (link, backward) = if forward { (&node.links[h], false) } else { (&node.links[h - 1], true) };
            let (leave_at, arrive_at) = if backward { (link.to, link.from) } else { (link.from, link.to) };
            plan.push(Visit { idx: h, entry, exit: leave_at, step: Some((link.edge, leave_at, arrive_at)) });
            entry = arrive_at;
            h = if forward { (h + 1) % k } else { h - 1 };
        }
        if !rev {
            for visit in &plan {
                self.emit_segment(&node.children[visit.idx], visit.entry, visit.exit, false, vertices, edges);
                if let Some((e, _, to)) = visit.step {
                    edges.push(e);
                    vertices.push(to);
                }
            }
        } else {
            for visit in plan.iter().rev() {
                if let Some((e, from, _)) = visit.step {
                    edges.push(e);
                    vertices.push(from);
                }
                self.emit_segment(&node.children[visit.idx], visit.entry, visit.exit, true, vertices, edges);
            }
        }
    }

    /// Append the in-child segment between `entry` and `exit`, one of which
    /// is the child's base.
    fn emit_segment(
        &self,
        child: &Child,
        entry: Vertex,
        exit: Vertex,
        rev: bool,
        vertices: &mut Vec<Vertex>,
        edges: &mut Vec<EdgeId>,
    ) {
        let base = self.child_base(child);
        if entry == exit {
            debug_assert_eq!(entry, base);
            return;
        }
        if exit == base {
            // Forward shape: entry -> base.
            self.emit(child, entry, rev, vertices, edges);
        } else {
            debug_assert_eq!(entry, base);
            // Walked base -> exit, which is the reverse of exit -> base.
            self.emit(child, exit, !rev, vertices, edges);
        }
    }
}

/// One climb step of a fundamental-cycle walk: the inner vertex sitting above
/// the blossom based at `below_base`, with its matched edge downward and the
/// unmatched grow edge upward into `grow_from`'s blossom.
#[derive(Debug, Clone, Copy)]
pub struct CycleStep {
    pub below_base: Vertex,
    pub matched_edge: EdgeId,
    pub inner: Vertex,
    pub grow_edge: EdgeId,
    pub grow_from: Vertex,
}

/// Fundamental cycle of an edge joining two outer blossoms, as the two arms
/// climbing from each endpoint's blossom to the nearest common ancestor.
/// Arms are ordered bottom-up and exclude the ancestor blossom itself.
#[derive(Debug)]
pub struct FundamentalCycle {
    pub nca_base: Vertex,
    pub x_arm: Vec<CycleStep>,
    pub y_arm: Vec<CycleStep>,
}

impl FundamentalCycle {
    /// One representative per set the contraction unifies: every blossom base
    /// on the cycle plus every inner vertex the contraction absorbs.
    pub fn merge_set(&self) -> Vec<Vertex> {
        let mut out = vec![self.nca_base];
        for s in self.x_arm.iter().chain(self.y_arm.iter()) {
            out.push(s.below_base);
            out.push(s.inner);
        }
        out
    }

    /// Inner vertices that the contraction turns outer.
    pub fn inner_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.x_arm.iter().chain(self.y_arm.iter()).map(|s| s.inner)
    }
}

/// Find the fundamental cycle of edge xy by climbing from both blossoms to
/// the root in parallel, in time proportional to the cycle size.
///
/// `mate(b)` gives the matched partner of a base vertex (None at a tree
/// root); `grow_parent(b)` gives the vertex and edge through which `b`'s
/// inner mate was grown. `marks` is a caller-owned scratch buffer and `epoch`
/// must be fresh (strictly larger than any previously used value).
///
/// Panics if x and y are in different trees.
pub fn fundamental_cycle(
    tracker: &mut BaseTracker,
    x: Vertex,
    y: Vertex,
    mate: impl Fn(Vertex) -> Option<(Vertex, EdgeId)>,
    grow_parent: impl Fn(Vertex) -> Option<(Vertex, EdgeId)>,
    marks: &mut [u32],
    epoch: u32,
) -> FundamentalCycle {
    let x_stamp = 2 * epoch;
    let y_stamp = 2 * epoch + 1;
    let bx = tracker.find_base(x);
    let by = tracker.find_base(y);
    debug_assert_ne!(bx, by, "fundamental cycle of an intra-blossom edge");
    marks[bx] = x_stamp;
    marks[by] = y_stamp;
    let mut arms = [Vec::new(), Vec::new()];
    let mut cursor = [bx, by];
    let mut done = [false, false];
    let stamps = [x_stamp, y_stamp];
    let nca_base;
    'climb: loop {
        let mut progressed = false;
        for side in 0..2 {
            if done[side] {
                continue;
            }
            let cur = cursor[side];
            let Some((inner, matched_edge)) = mate(cur) else {
                done[side] = true; // reached a free root
                continue;
            };
            let (grow_from, grow_edge) =
                grow_parent(cur).expect("non-root base must have a grow parent");
            arms[side].push(CycleStep { below_base: cur, matched_edge, inner, grow_edge, grow_from });
            let next = tracker.find_base(grow_from);
            progressed = true;
            if marks[next] == stamps[1 - side] {
                nca_base = next;
                // The other side's arm may have climbed past the ancestor.
                let other = &mut arms[1 - side];
                if let Some(pos) = other.iter().position(|s| s.below_base == nca_base) {
                    other.truncate(pos);
                }
                break 'climb;
            }
            debug_assert_ne!(marks[next], stamps[side], "cycle within a single climb");
            marks[next] = stamps[side];
            cursor[side] = next;
        }
        assert!(progressed, "blossom step endpoints lie in different trees");
    }
    let [x_arm, y_arm] = arms;
    FundamentalCycle { nca_base, x_arm, y_arm }
}

/// Lay the fundamental cycle out as an ordered blossom ring: the ancestor
/// blossom first, the x arm descending, the triggering edge, then the y arm
/// ascending back to the ancestor.
pub fn assemble_ring(
    fc: &FundamentalCycle,
    x: Vertex,
    y: Vertex,
    xy_edge: EdgeId,
    node_of: impl Fn(Vertex) -> Option<NodeId>,
) -> (Vec<Child>, Vec<RingLink>) {
    let as_child = |b: Vertex| node_of(b).map(Child::Node).unwrap_or(Child::Leaf(b));
    let mut children = vec![as_child(fc.nca_base)];
    let mut links = Vec::new();
    for s in fc.x_arm.iter().rev() {
        links.push(RingLink { from: s.grow_from, to: s.inner, edge: s.grow_edge, matched: false });
        children.push(Child::Leaf(s.inner));
        links.push(RingLink { from: s.inner, to: s.below_base, edge: s.matched_edge, matched: true });
        children.push(as_child(s.below_base));
    }
    links.push(RingLink { from: x, to: y, edge: xy_edge, matched: false });
    for s in fc.y_arm.iter() {
        children.push(as_child(s.below_base));
        links.push(RingLink { from: s.below_base, to: s.inner, edge: s.matched_edge, matched: true });
        children.push(Child::Leaf(s.inner));
        links.push(RingLink { from: s.inner, to: s.grow_from, edge: s.grow_edge, matched: false });
    }
    debug_assert_eq!(children.len(), links.len());
    (children, links)
}
