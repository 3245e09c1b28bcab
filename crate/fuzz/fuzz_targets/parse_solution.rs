//! Fuzz the solution-text parser: no input may panic it, and accepted
//! solutions must be internally consistent.

#![no_main]

use libfuzzer_sys::fuzz_target;
use mcmatch::dimacs::parse_solution;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((size, pairs)) = parse_solution(text) {
        assert_eq!(size, pairs.len());
        assert!(pairs.iter().all(|&(u, v)| u > 0 && v > 0));
    }
});
