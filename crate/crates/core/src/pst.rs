//! Static priority search tree for three-sided reporting:
//! `key ∈ [k1, k2]` and `prio <= bound`, in O(log n + output) time.
//!
//! Layout follows McCreight: each node holds the minimum-priority point of
//! its subtree, the rest split at the rank median. The tree is built over
//! key RANKS so duplicate keys cannot skew it; queries convert key ranges to
//! rank ranges through the sorted key array. Max-side queries are served by
//! negating priorities at insertion.

use crate::counters::QueryCounters;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct PstNode {
    rank: u32,
    prio: i64,
    payload: u32,
    /// Ranks <= split go left, > split go right.
    split: u32,
    left: u32,
    right: u32,
}

#[derive(Debug, Default, Clone)]
pub struct Pst {
    keys: Vec<i64>,
    nodes: Vec<PstNode>,
    root: u32,
}

impl Pst {
    /// Build from (key, prio, payload) triples.
    pub fn build(mut pts: Vec<(i64, i64, u32)>) -> Self {
        pts.sort_unstable_by_key(|p| (p.0, p.1, p.2));
        let keys: Vec<i64> = pts.iter().map(|p| p.0).collect();
        // (rank, prio, payload), rank-sorted.
        let mut ranked: Vec<(u32, i64, u32)> =
            pts.iter().enumerate().map(|(r, p)| (r as u32, p.1, p.2)).collect();
        let mut t = Pst { keys, nodes: Vec::with_capacity(ranked.len()), root: NONE };
        t.root = t.build_rec(&mut ranked[..]);
        t
    }

    fn build_rec(&mut self, pts: &mut [(u32, i64, u32)]) -> u32 {
        if pts.is_empty() {
            return NONE;
        }
        let min_at = pts
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.1, p.0))
            .map(|(i, _)| i)
            .unwrap();
        let (rank, prio, payload) = pts[min_at];
        pts[min_at..].rotate_left(1);
        let n = pts.len() - 1;
        let rest = &mut pts[..n];
        let (split, cut) = if n == 0 {
            (rank, 0)
        } else {
            let mid = n / 2;
            (rest[mid].0, mid + 1)
        };
        let id = self.nodes.len() as u32;
        self.nodes.push(PstNode { rank, prio, payload, split, left: NONE, right: NONE });
        let (l, r) = rest.split_at_mut(cut.min(n));
        let left = self.build_rec(l);
        let right = self.build_rec(r);
        self.nodes[id as usize].left = left;
        self.nodes[id as usize].right = right;
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn rank_range(&self, k1: i64, k2: i64, cnt: &mut QueryCounters) -> Option<(u32, u32)> {
        cnt.bsearch(self.keys.len());
        let r1 = self.keys.partition_point(|&k| k < k1);
        let r2 = self.keys.partition_point(|&k| k <= k2);
        if r1 >= r2 {
            None
        } else {
            Some((r1 as u32, (r2 - 1) as u32))
        }
    }

    /// Report payloads with key in [k1, k2] and prio <= bound.
    pub fn report(
        &self,
        k1: i64,
        k2: i64,
        bound: i64,
        cnt: &mut QueryCounters,
        out: &mut impl FnMut(u32),
    ) {
        if let Some((r1, r2)) = self.rank_range(k1, k2, cnt) {
            self.walk(self.root, r1, r2, bound, cnt, out);
        }
    }

    /// True iff some point has key in [k1, k2] and prio <= bound.
    pub fn any(&self, k1: i64, k2: i64, bound: i64, cnt: &mut QueryCounters) -> bool {
        match self.rank_range(k1, k2, cnt) {
            None => false,
            Some((r1, r2)) => {
                let mut found = false;
                self.walk_any(self.root, r1, r2, bound, cnt, &mut found);
                found
            }
        }
    }

    fn walk(
        &self,
        id: u32,
        r1: u32,
        r2: u32,
        bound: i64,
        cnt: &mut QueryCounters,
        out: &mut impl FnMut(u32),
    ) {
        if id == NONE {
            return;
        }
        cnt.node();
        let n = &self.nodes[id as usize];
        if n.prio > bound {
            return; // subtree minimum already exceeds the bound
        }
        if n.rank >= r1 && n.rank <= r2 {
            out(n.payload);
        }
        if r1 <= n.split {
            self.walk(n.left, r1, r2, bound, cnt, out);
        }
        if r2 > n.split {
            self.walk(n.right, r1, r2, bound, cnt, out);
        }
    }

    fn walk_any(
        &self,
        id: u32,
        r1: u32,
        r2: u32,
        bound: i64,
        cnt: &mut QueryCounters,
        found: &mut bool,
    ) {
        if id == NONE || *found {
            return;
        }
        cnt.node();
        let n = &self.nodes[id as usize];
        if n.prio > bound {
            return;
        }
        if n.rank >= r1 && n.rank <= r2 {
            *found = true;
            return;
        }
        if r1 <= n.split {
            self.walk_any(n.left, r1, r2, bound, cnt, found);
        }
        if r2 > n.split && !*found {
            self.walk_any(n.right, r1, r2, bound, cnt, found);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn naive(pts: &[(i64, i64, u32)], k1: i64, k2: i64, bound: i64) -> Vec<u32> {
        let mut v: Vec<u32> = pts
            .iter()
            .filter(|p| p.0 >= k1 && p.0 <= k2 && p.1 <= bound)
            .map(|p| p.2)
            .collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn differential_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [0usize, 1, 2, 3, 8, 33, 120] {
            let pts: Vec<(i64, i64, u32)> = (0..n)
                .map(|i| (rng.gen_range(-10..=10), rng.gen_range(-10..=10), i as u32))
                .collect();
            let t = Pst::build(pts.clone());
            let mut cnt = QueryCounters::new();
            for _ in 0..200 {
                let a = rng.gen_range(-12..=12);
                let b = rng.gen_range(a..=13);
                let p = rng.gen_range(-12..=12);
                let mut got = Vec::new();
                t.report(a, b, p, &mut cnt, &mut |x| got.push(x));
                got.sort_unstable();
                assert_eq!(got, naive(&pts, a, b, p));
                assert_eq!(t.any(a, b, p, &mut cnt), !got.is_empty());
            }
        }
    }

    #[test]
    fn heavy_duplicate_keys() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<(i64, i64, u32)> =
            (0..500).map(|i| (rng.gen_range(0..4), rng.gen_range(0..4), i as u32)).collect();
        let t = Pst::build(pts.clone());
        let mut cnt = QueryCounters::new();
        for a in -1..5 {
            for b in a..5 {
                for p in -1..5 {
                    let mut got = Vec::new();
                    t.report(a, b, p, &mut cnt, &mut |x| got.push(x));
                    got.sort_unstable();
                    assert_eq!(got, naive(&pts, a, b, p));
                }
            }
        }
    }

    #[test]
    fn visit_count_tracks_output() {
        // Nodes visited stays O(log n + out) for skewed instances.
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 4096usize;
        let pts: Vec<(i64, i64, u32)> = (0..n)
            .map(|i| (rng.gen_range(0..1_000_000), rng.gen_range(0..1_000_000), i as u32))
            .collect();
        let t = Pst::build(pts.clone());
        for _ in 0..100 {
            let a = rng.gen_range(0..1_000_000);
            let b = (a + rng.gen_range(0..200_000)).min(1_000_000);
            let p = rng.gen_range(0..1_000_000);
            let mut cnt = QueryCounters::new();
            let mut k = 0u64;
            t.report(a, b, p, &mut cnt, &mut |_| k += 1);
            assert!(
                cnt.nodes_visited <= 4 * (n as u64).ilog2() as u64 + 3 * k + 8,
                "visited {} for k={}",
                cnt.nodes_visited,
                k
            );
        }
    }
}
