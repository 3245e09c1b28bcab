//! DIMACS-style instance parsing and solution emission.
//!
//! Instance files carry a `p edge <n> <m>` header, one `e <u> <v>` line per
//! edge with 1-based vertex ids, and `c` comment lines. Solutions are emitted
//! as an `s <size>` line, one `m <u> <v>` line per matched pair, and `c`
//! statistic comments.

use crate::graph::{Graph, Matching};
use crate::solve::SolveStats;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header, expected 'p edge <n> <m>'")]
    BadHeader { line: usize },
    #[error("line {line}: duplicate header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: edge before header")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: malformed edge, expected 'e <u> <v>'")]
    BadEdge { line: usize },
    #[error("line {line}: vertex id {id} out of range 1..={n}")]
    IdOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: self-loop at vertex {id}")]
    SelfLoop { line: usize, id: usize },
    #[error("line {line}: unrecognized line type")]
    UnknownLine { line: usize },
    #[error("missing 'p edge' header")]
    MissingHeader,
    #[error("header declared {expected} edges but {found} were given")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("line {line}: malformed solution line")]
    BadSolutionLine { line: usize },
    #[error("solution declared {expected} matched pairs but {found} were given")]
    PairCountMismatch { expected: usize, found: usize },
}

/// Parse a DIMACS edge-format instance into a graph, translating 1-based ids
/// to 0-based.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut fields = raw.split_whitespace();
        match fields.next() {
            None => continue, // blank line
            Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader { line });
                }
                let bad = ParseError::BadHeader { line };
                if fields.next() != Some("edge") {
                    return Err(bad);
                }
                let n = fields.next().and_then(|t| t.parse::<usize>().ok()).ok_or(ParseError::BadHeader { line })?;
                let m = fields.next().and_then(|t| t.parse::<usize>().ok()).ok_or(ParseError::BadHeader { line })?;
                if fields.next().is_some() {
                    return Err(ParseError::BadHeader { line });
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or(ParseError::EdgeBeforeHeader { line })?;
                let u = fields.next().and_then(|t| t.parse::<usize>().ok()).ok_or(ParseError::BadEdge { line })?;
                let v = fields.next().and_then(|t| t.parse::<usize>().ok()).ok_or(ParseError::BadEdge { line })?;
                if fields.next().is_some() {
                    return Err(ParseError::BadEdge { line });
                }
                for id in [u, v] {
                    if id == 0 || id > n {
                        return Err(ParseError::IdOutOfRange { line, id, n });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop { line, id: u });
                }
                edges.push((u - 1, v - 1));
            }
            Some(_) => return Err(ParseError::UnknownLine { line }),
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch { expected: m, found: edges.len() });
    }
    Ok(Graph::new(n, edges).expect("parser already rejected bad edges"))
}

/// Emit a graph in DIMACS edge format.
pub fn emit_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Emit a solution: size line, matched pairs with 1-based ids and u < v,
/// then statistic comments.
pub fn emit_solution(m: &Matching, stats: &SolveStats) -> String {
    let mut out = format!("s {}\n", m.size());
    for (u, v) in m.pairs() {
        out.push_str(&format!("m {} {}\n", u + 1, v + 1));
    }
    out.push_str(&format!(
        "c phases={} total_ms={:.3}\n",
        stats.phase_count(),
        stats.total_elapsed.as_secs_f64() * 1e3
    ));
    for (i, p) in stats.phases.iter().enumerate() {
        out.push_str(&format!(
            "c phase={} delta={} paths={} len={} ms={:.3}\n",
            i + 1,
            p.delta_final,
            p.path_count,
            p.path_len,
            p.elapsed.as_secs_f64() * 1e3
        ));
    }
    out
}

/// Parse a solution back into its claimed size and 1-based matched pairs.
pub fn parse_solution(text: &str) -> Result<(usize, Vec<(usize, usize)>), ParseError> {
    let mut size: Option<usize> = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut fields = raw.split_whitespace();
        match fields.next() {
            None | Some("c") => continue,
            Some("s") => {
                if size.is_some() {
                    return Err(ParseError::BadSolutionLine { line });
                }
                size = Some(
                    fields
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or(ParseError::BadSolutionLine { line })?,
                );
            }
            Some("m") => {
                let u = fields
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(ParseError::BadSolutionLine { line })?;
                let v = fields
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(ParseError::BadSolutionLine { line })?;
                if u == 0 || v == 0 {
                    return Err(ParseError::BadSolutionLine { line });
                }
                pairs.push((u, v));
            }
            Some(_) => return Err(ParseError::UnknownLine { line }),
        }
    }
    let size = size.ok_or(ParseError::MissingHeader)?;
    if pairs.len() != size {
        return Err(ParseError::PairCountMismatch { expected: size, found: pairs.len() });
    }
    Ok((size, pairs))
}

/// Rebuild a matching from emitted 1-based pairs against the host graph.
pub fn matching_from_pairs(g: &Graph, pairs: &[(usize, usize)]) -> Option<Matching> {
    let mut edge_ids = Vec::with_capacity(pairs.len());
    for &(u1, v1) in pairs {
        let (u, v) = (u1.checked_sub(1)?, v1.checked_sub(1)?);
        if u >= g.vertex_count() || v >= g.vertex_count() {
            return None;
        }
        let e = g.neighbors(u).find(|&(w, _)| w == v)?.1;
        edge_ids.push(e);
    }
    Matching::from_edges(g, &edge_ids).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic() {
        let g = parse_dimacs("c tiny\np edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_rejects_self_loop_with_line() {
        let err = parse_dimacs("p edge 2 1\ne 2 2\n").unwrap_err();
        assert_eq!(err, ParseError::SelfLoop { line: 2, id: 2 });
    }

    #[test]
    fn parse_rejects_out_of_range() {
        let err = parse_dimacs("p edge 2 1\ne 1 5\n").unwrap_err();
        assert_eq!(err, ParseError::IdOutOfRange { line: 2, id: 5, n: 2 });
    }

    #[test]
    fn parse_requires_header() {
        assert_eq!(parse_dimacs("c nothing\n"), Err(ParseError::MissingHeader));
        assert_eq!(parse_dimacs("e 1 2\n"), Err(ParseError::EdgeBeforeHeader { line: 1 }));
    }

    #[test]
    fn parse_checks_edge_count() {
        assert_eq!(
            parse_dimacs("p edge 3 2\ne 1 2\n"),
            Err(ParseError::EdgeCountMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn round_trip_instance() {
        let text = "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n";
        let g = parse_dimacs(text).unwrap();
        assert_eq!(emit_dimacs(&g), text);
    }

    #[test]
    fn emit_empty_matching() {
        let out = emit_solution(&Matching::empty(3), &SolveStats::default());
        assert!(out.starts_with("s 0\n"));
    }

    #[test]
    fn solution_round_trip() {
        let g = parse_dimacs("p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n").unwrap();
        let m = Matching::from_edges(&g, &[0, 2]).unwrap();
        let text = emit_solution(&m, &SolveStats::default());
        let (size, pairs) = parse_solution(&text).unwrap();
        assert_eq!(size, 2);
        let back = matching_from_pairs(&g, &pairs).unwrap();
        assert!(back.is_valid_for(&g));
        assert_eq!(back.size(), 2);
    }
}
