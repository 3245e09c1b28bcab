//! Independent brute-force ground truth: exact maximum matching size,
//! exhaustive augmenting-path enumeration, maximality checks for disjoint
//! path sets, and dual-certificate verification.
//!
//! Everything here is deliberately naive and shares only the graph types with
//! the solver, so agreement between the two is meaningful evidence.

use crate::graph::{EdgeId, Graph, Matching, Path, Vertex};
use thiserror::Error;

/// Hard size guard for the exponential searches.
pub const MAX_MATCHING_LIMIT: usize = 20;
pub const PATH_ENUM_LIMIT: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} vertices, brute force is limited to {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("certificate blossom family is not laminar")]
    NotLaminar,
    #[error("certificate blossom is malformed: {0}")]
    MalformedBlossom(String),
}

/// Exact maximum matching size with one witness, by branch and bound over
/// edges. Branches on an edge at a maximum-degree vertex of the residual
/// graph and prunes with the trivial remaining-vertices/2 bound.
pub fn brute_max_matching(g: &Graph) -> Result<(usize, Matching), OracleError> {
    let n = g.vertex_count();
    if n > MAX_MATCHING_LIMIT {
        return Err(OracleError::TooLarge { n, limit: MAX_MATCHING_LIMIT });
    }
    let mut used = vec![false; n];
    let mut best: Vec<EdgeId> = Vec::new();
    let mut current: Vec<EdgeId> = Vec::new();
    search(g, &mut used, &mut current, &mut best);
    let size = best.len();
    let witness = Matching::from_edges(g, &best).expect("witness must be a matching");
    return Ok((size, witness));

    fn search(g: &Graph, used: &mut [bool], current: &mut Vec<EdgeId>, best: &mut Vec<EdgeId>) {
        // Pick the branching vertex: max residual degree among uncovered.
        let mut pivot = None;
        let mut pivot_deg = 0usize;
        let mut active = 0usize;
        for v in 0..g.vertex_count() {
            if used[v] {
                continue;
            }
            let d = g.neighbors(v).filter(|&(w, _)| !used[w] && w != v).count();
            if d > 0 {
                active += 1;
                if d > pivot_deg {
                    pivot_deg = d;
                    pivot = Some(v);
                }
            }
        }
        let Some(v) = pivot else {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        };
        if current.len() + active / 2 <= best.len() {
            return; // cannot beat the incumbent
        }
        // Include one of v's edges.
        let candidates: Vec<(Vertex, EdgeId)> = g.neighbors(v).filter(|&(w, _)| !used[w]).collect();
        for (w, e) in candidates {
            used[v] = true;
            used[w] = true;
            current.push(e);
            search(g, used, current, best);
            current.pop();
            used[v] = false;
            used[w] = false;
        }
        // Or leave v unmatched.
        used[v] = true;
        search(g, used, current, best);
        used[v] = false;
    }
}

/// All augmenting paths of (g, m) as canonical vertex sequences (the
/// lexicographically smaller of the sequence and its reverse), deduplicated
/// and sorted. Exhaustive DFS over simple alternating paths from each free
/// vertex.
pub fn brute_augmenting_paths(g: &Graph, m: &Matching) -> Result<Vec<Vec<Vertex>>, OracleError> {
    let n = g.vertex_count();
    if n > PATH_ENUM_LIMIT {
        return Err(OracleError::TooLarge { n, limit: PATH_ENUM_LIMIT });
    }
    let mut found: Vec<Vec<Vertex>> = Vec::new();
    let mut on_path = vec![false; n];
    let mut seq: Vec<Vertex> = Vec::new();
    for f in 0..n {
        if !m.is_free(f) {
            continue;
        }
        on_path[f] = true;
        seq.push(f);
        extend(g, m, &mut on_path, &mut seq, &mut found);
        seq.pop();
        on_path[f] = false;
    }
    found.sort();
    found.dedup();
    return Ok(found);

    fn extend(
        g: &Graph,
        m: &Matching,
        on_path: &mut [bool],
        seq: &mut Vec<Vertex>,
        found: &mut Vec<Vec<Vertex>>,
    ) {
        let v = *seq.last().unwrap();
        // seq has odd length exactly when the next edge must be unmatched.
        let want_matched = seq.len().is_multiple_of(2);
        for (w, e) in g.neighbors(v) {
            if on_path[w] || m.contains_edge(e, g) != want_matched {
                continue;
            }
            if !want_matched && m.is_free(w) {
                // Augmenting path complete.
                let mut path = seq.clone();
                path.push(w);
                let rev: Vec<Vertex> = path.iter().rev().copied().collect();
                found.push(if rev < path { rev } else { path });
                continue;
            }
            on_path[w] = true;
            seq.push(w);
            extend(g, m, on_path, seq, found);
            seq.pop();
            on_path[w] = false;
        }
    }
}

/// Minimum length plus every augmenting path attaining it.
pub type ShortestPaths = (usize, Vec<Vec<Vertex>>);

/// Minimum augmenting path length and the complete set of shortest ones,
/// or None when the matching is already maximum.
pub fn brute_shortest_augmenting_paths(g: &Graph, m: &Matching) -> Result<Option<ShortestPaths>, OracleError> {
    let all = brute_augmenting_paths(g, m)?;
    let Some(min_len) = all.iter().map(|p| p.len() - 1).min() else {
        return Ok(None);
    };
    let shortest = all.into_iter().filter(|p| p.len() - 1 == min_len).collect();
    Ok(Some((min_len, shortest)))
}

/// True iff `paths` are pairwise vertex-disjoint shortest augmenting paths of
/// (g, m) and no shortest augmenting path avoids their combined vertex set.
pub fn verify_shortest_set_maximal(g: &Graph, m: &Matching, paths: &[Path]) -> Result<bool, OracleError> {
    let Some((min_len, all_shortest)) = brute_shortest_augmenting_paths(g, m)? else {
        return Ok(paths.is_empty());
    };
    let mut covered = vec![false; g.vertex_count()];
    for p in paths {
        if p.len() != min_len || !p.is_augmenting(g, m) {
            return Ok(false);
        }
        for &v in &p.vertices {
            if covered[v] {
                return Ok(false); // overlap
            }
            covered[v] = true;
        }
    }
    for candidate in &all_shortest {
        if candidate.iter().all(|&v| !covered[v]) {
            return Ok(false); // a disjoint shortest path was missed
        }
    }
    Ok(true)
}

/// One blossom of a dual certificate: its vertex set, base, and dual value.
#[derive(Debug, Clone)]
pub struct CertBlossom {
    pub vertices: Vec<Vertex>,
    pub base: Vertex,
    pub z: i64,
}

/// Dual certificate emitted by a phase-1 search: per-vertex duals, the
/// blossom family with dual values, and the matching it certifies.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub y: Vec<i64>,
    pub blossoms: Vec<CertBlossom>,
    pub matching: Matching,
}

/// Verify a dual certificate of maximum cardinality.
///
/// Checks, with w(e) = 2 for matched edges and 0 otherwise:
/// every edge has y(u) + y(v) + sum of z over blossoms containing both ends
/// at least w(e), with equality on matched edges; every z is nonnegative and
/// even; every blossom has odd size at least 3, contains its base, and
/// matches every non-base member inside itself; and the free-vertex duals are
/// low enough that no augmenting path can exist. A non-laminar family is a
/// structural error rather than a `false`.
pub fn check_certificate(g: &Graph, cert: &Certificate) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    if cert.y.len() != n || !cert.matching.is_valid_for(g) {
        return Ok(false);
    }
    let m = &cert.matching;

    // Laminar-forest construction: process blossoms by ascending size and
    // attach each fully contained earlier blossom as a child. Any partial
    // overlap falls out as a size mismatch here.
    let k = cert.blossoms.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| cert.blossoms[i].vertices.len());
    let mut owner: Vec<Option<usize>> = vec![None; n]; // deepest processed blossom containing v
    let mut parent: Vec<Option<usize>> = vec![None; k];
    let mut setsize = vec![0usize; k];
    for &bi in &order {
        let b = &cert.blossoms[bi];
        let mut members = b.vertices.clone();
        members.sort_unstable();
        members.dedup();
        if members.len() != b.vertices.len() {
            return Err(OracleError::MalformedBlossom(format!("repeated vertex in blossom {bi}")));
        }
        if members.iter().any(|&v| v >= n) {
            return Err(OracleError::MalformedBlossom(format!("vertex out of range in blossom {bi}")));
        }
        setsize[bi] = members.len();
        // Count coverage through current roots.
        let mut covered = 0usize;
        let mut seen_roots: Vec<usize> = Vec::new();
        for &v in &members {
            match owner[v] {
                None => covered += 1,
                Some(o) => {
                    let mut r = o;
                    while let Some(p) = parent[r] {
                        r = p;
                    }
                    if !seen_roots.contains(&r) {
                        seen_roots.push(r);
                        covered += setsize[r];
                    }
                }
            }
        }
        if covered != members.len() {
            return Err(OracleError::NotLaminar);
        }
        for r in seen_roots {
            parent[r] = Some(bi);
        }
        for &v in &members {
            if owner[v].is_none() {
                owner[v] = Some(bi);
            }
        }
    }

    // Structural checks per blossom.
    for (bi, b) in cert.blossoms.iter().enumerate() {
        if b.z < 0 || b.z % 2 != 0 {
            return Ok(false);
        }
        if b.vertices.len() < 3 || b.vertices.len() % 2 == 0 {
            return Ok(false);
        }
        if !b.vertices.contains(&b.base) {
            return Err(OracleError::MalformedBlossom(format!("base not in blossom {bi}")));
        }
        for &v in &b.vertices {
            if v == b.base {
                continue;
            }
            match m.mate(v) {
                Some(w) if b.vertices.contains(&w) => {}
                _ => return Ok(false), // non-base member not matched inside
            }
        }
    }

    // Cumulative z from each blossom to its root, then per-edge common sums.
    let mut cum = vec![0i64; k];
    for &bi in order.iter().rev() {
        cum[bi] = cert.blossoms[bi].z + parent[bi].map_or(0, |p| cum[p]);
    }
    let chain = |v: Vertex| -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = owner[v];
        while let Some(b) = cur {
            out.push(b);
            cur = parent[b];
        }
        out
    };
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        let cu = chain(u);
        let cv = chain(v);
        // Deepest common blossom: chains share a suffix.
        let mut zsum = 0i64;
        let mut iu = cu.len();
        let mut iv = cv.len();
        while iu > 0 && iv > 0 && cu[iu - 1] == cv[iv - 1] {
            iu -= 1;
            iv -= 1;
        }
        if iu < cu.len() {
            zsum = cum[cu[iu]];
        }
        let w = if m.contains_edge(e, g) { 2 } else { 0 };
        let lhs = cert.y[u] + cert.y[v] + zsum;
        if lhs < w {
            return Ok(false);
        }
        if m.contains_edge(e, g) && lhs != w {
            return Ok(false);
        }
    }

    // Maximality: an augmenting path P has |P| >= 1 - 2*max_free y(f), so the
    // bound must exceed any possible path length.
    let max_free_y = (0..n).filter(|&v| m.is_free(v)).map(|v| cert.y[v]).max();
    if let Some(yf) = max_free_y {
        if 1 - 2 * yf < (n as i64) {
            return Ok(false);
        }
    }
    Ok(true)
}
