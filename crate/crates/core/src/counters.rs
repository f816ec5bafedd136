//! Instrumented work counters threaded through every query path.
//!
//! Counters, not wall-clock, are the performance signal the test suites
//! assert on; they must be deterministic for a fixed input.

use serde::Serialize;

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QueryCounters {
    /// Structure nodes touched (tree descents, binary-search hops).
    pub nodes_visited: u64,
    /// Linked-list / sorted-array walk steps.
    pub list_steps: u64,
    /// Candidate pairs run through verification predicates.
    pub candidates: u64,
}

impl QueryCounters {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total work charged to a query.
    pub fn work(&self) -> u64 {
        self.nodes_visited + self.list_steps + self.candidates
    }

    #[inline]
    pub fn node(&mut self) {
        self.nodes_visited += 1;
    }

    #[inline]
    pub fn nodes(&mut self, n: u64) {
        self.nodes_visited += n;
    }

    #[inline]
    pub fn step(&mut self) {
        self.list_steps += 1;
    }

    #[inline]
    pub fn candidate(&mut self) {
        self.candidates += 1;
    }

    /// Charge a binary search over `len` elements as log2(len)+1 node visits.
    #[inline]
    pub fn bsearch(&mut self, len: usize) {
        self.nodes_visited += (len.max(1) as u64).ilog2() as u64 + 1;
    }
}
