//! Fuzz the DIMACS instance parser: arbitrary input must either parse into a
//! graph that round-trips and solves without panicking, or produce a clean
//! parse error.

#![no_main]

use libfuzzer_sys::fuzz_target;
use mcmatch::dimacs::{emit_dimacs, parse_dimacs};
use mcmatch::solve::maximum_matching;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = parse_dimacs(text) else { return };
    // Anything parsed must survive a round trip exactly.
    let again = parse_dimacs(&emit_dimacs(&g)).expect("emitted instance must reparse");
    assert_eq!(again, g);
    // Keep the solver honest on small accepted inputs.
    if g.vertex_count() <= 64 && g.edge_count() <= 256 {
        let (m, _) = maximum_matching(&g);
        assert!(m.is_valid_for(&g));
    }
});
