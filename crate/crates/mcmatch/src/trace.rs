//! Line-delimited step traces for golden tests and debugging.

use std::io::Write;

/// Step kinds shared by both search phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Grow,
    Blossom,
    Augment,
}

impl StepKind {
    fn name(self) -> &'static str {
        match self {
            StepKind::Grow => "grow",
            StepKind::Blossom => "blossom",
            StepKind::Augment => "augment",
        }
    }
}

/// Writes one record per search step: phase, kind, time (dual total in phase
/// 1, event counter in phase 2), edge, and the blossom node id when present.
pub struct TraceSink<'a> {
    out: &'a mut dyn Write,
    phase: &'static str,
}

impl<'a> TraceSink<'a> {
    pub fn phase1(out: &'a mut dyn Write) -> TraceSink<'a> {
        TraceSink { out, phase: "p1" }
    }

    pub fn phase2(out: &'a mut dyn Write) -> TraceSink<'a> {
        TraceSink { out, phase: "p2" }
    }

    pub fn step(&mut self, kind: StepKind, time: u64, edge: usize, ends: (usize, usize), blossom: Option<usize>) {
        let b = blossom.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            self.out,
            "{} {} t={} e={}({},{}) b={}",
            self.phase,
            kind.name(),
            time,
            edge,
            ends.0,
            ends.1,
            b
        );
    }
}
