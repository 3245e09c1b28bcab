//! Maximum cardinality matching for general (non-bipartite) graphs.
//!
//! The solver repeats two phases until no augmenting path exists: phase 1 runs
//! a dual-adjusting blossom search that pins down the length and structure of
//! the shortest augmenting paths and contracts them into a tight-edge graph;
//! phase 2 runs a path-preserving depth-first search over that graph and pulls
//! out a maximal set of vertex-disjoint shortest augmenting paths, which are
//! then expanded back and applied to the matching. Each phase is linear in the
//! edge count, and the phase count is O(sqrt(n)), giving O(sqrt(n) * m) total.
//!
//! A brute-force oracle module provides independent ground truth for testing,
//! and the `mcmatch` binary exposes solve/gen/bench subcommands over DIMACS
//! instance files.

pub mod blossom;
pub mod dimacs;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod phase1;
pub mod phase2;
pub mod solve;
pub mod tight;
pub mod trace;

pub use graph::{Graph, GraphError, Matching, Path};
pub use solve::{maximum_matching, maximum_matching_from, SolveOptions, SolveStats};
