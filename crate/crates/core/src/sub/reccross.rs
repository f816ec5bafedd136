//! Crossing queries: which stored segments span a query rectangle in their
//! orientation. A vertical segment `x × [y1,y2]` crosses `[a,b]×[c,d]` iff
//! `x ∈ [a,b]`, `y1 <= c`, `y2 >= d`; that is a range restriction plus a
//! dominance pair, served by a balanced hierarchy on x whose canonical nodes
//! carry priority search trees over (y1, -y2).

use crate::counters::QueryCounters;
use crate::geom::Scalar;
use crate::pst::Pst;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct CxNode {
    lo: u32,
    hi: u32,
    left: u32,
    right: u32,
    pst: Pst,
}

/// One orientation's crossing structure over (position, span_lo, span_hi).
#[derive(Debug, Default, Clone)]
pub struct CrossingStructure {
    keys: Vec<Scalar>,
    nodes: Vec<CxNode>,
    root: u32,
}

impl CrossingStructure {
    /// `segs`: (fixed position, span lo, span hi, payload).
    pub fn build(mut segs: Vec<(Scalar, Scalar, Scalar, u32)>) -> Self {
        segs.sort_unstable_by_key(|s| (s.0, s.1, s.2, s.3));
        let keys: Vec<Scalar> = segs.iter().map(|s| s.0).collect();
        let mut t = CrossingStructure { keys, nodes: Vec::new(), root: NONE };
        if !segs.is_empty() {
            t.root = t.build_rec(&segs, 0);
        }
        t
    }

    fn build_rec(&mut self, segs: &[(Scalar, Scalar, Scalar, u32)], base: u32) -> u32 {
        let pst = Pst::build(
            segs.iter()
                .map(|&(_, lo, hi, p)| (lo, hi.checked_neg().unwrap_or(Scalar::MIN), p))
                .collect(),
        );
        let id = self.nodes.len() as u32;
        self.nodes.push(CxNode {
            lo: base,
            hi: base + segs.len() as u32,
            left: NONE,
            right: NONE,
            pst,
        });
        if segs.len() > 1 {
            let mid = segs.len() / 2;
            let l = self.build_rec(&segs[..mid], base);
            let r = self.build_rec(&segs[mid..], base + mid as u32);
            self.nodes[id as usize].left = l;
            self.nodes[id as usize].right = r;
        }
        id
    }

    fn for_canonical(
        &self,
        id: u32,
        r1: u32,
        r2: u32,
        cnt: &mut QueryCounters,
        f: &mut impl FnMut(&Pst, &mut QueryCounters) -> bool,
    ) -> bool {
        if id == NONE {
            return true;
        }
        let n = &self.nodes[id as usize];
        if n.hi <= r1 || n.lo >= r2 {
            return true;
        }
        cnt.node();
        if r1 <= n.lo && n.hi <= r2 {
            return f(&n.pst, cnt);
        }
        self.for_canonical(n.left, r1, r2, cnt, f) && self.for_canonical(n.right, r1, r2, cnt, f)
    }

    fn rank_range(&self, a: Scalar, b: Scalar, cnt: &mut QueryCounters) -> Option<(u32, u32)> {
        cnt.bsearch(self.keys.len());
        let r1 = self.keys.partition_point(|&k| k < a) as u32;
        let r2 = self.keys.partition_point(|&k| k <= b) as u32;
        (r1 < r2).then_some((r1, r2))
    }

    /// Payloads of segments crossing `[a,b]` on the position axis with span
    /// covering `[c,d]`.
    pub fn report(
        &self,
        a: Scalar,
        b: Scalar,
        c: Scalar,
        d: Scalar,
        cnt: &mut QueryCounters,
        out: &mut impl FnMut(u32),
    ) {
        if let Some((r1, r2)) = self.rank_range(a, b, cnt) {
            let bound = d.checked_neg().unwrap_or(Scalar::MIN);
            self.for_canonical(self.root, r1, r2, cnt, &mut |pst, cnt| {
                pst.report(Scalar::MIN, c, bound, cnt, out);
                true
            });
        }
    }

    /// Emptiness test in polylog time.
    pub fn any(&self, a: Scalar, b: Scalar, c: Scalar, d: Scalar, cnt: &mut QueryCounters) -> bool {
        match self.rank_range(a, b, cnt) {
            None => false,
            Some((r1, r2)) => {
                let bound = d.checked_neg().unwrap_or(Scalar::MIN);
                !self.for_canonical(self.root, r1, r2, cnt, &mut |pst, cnt| {
                    !pst.any(Scalar::MIN, c, bound, cnt)
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn crossing_predicate_examples() {
        // Vertical stretch x=5, y in [0,10].
        let t = CrossingStructure::build(vec![(5, 0, 10, 1)]);
        let mut cnt = QueryCounters::new();
        let mut hits = Vec::new();
        t.report(4, 6, 2, 3, &mut cnt, &mut |p| hits.push(p));
        assert_eq!(hits, vec![1]);
        hits.clear();
        t.report(4, 6, -2, 3, &mut cnt, &mut |p| hits.push(p));
        assert!(hits.is_empty()); // span starts at 0 > -2
        assert!(t.any(4, 6, 2, 3, &mut cnt));
        assert!(!t.any(4, 6, -2, 3, &mut cnt));
    }

    #[test]
    fn differential_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for n in [0usize, 1, 8, 60, 250] {
            let segs: Vec<(i64, i64, i64, u32)> = (0..n)
                .map(|i| {
                    let lo = rng.gen_range(-8..=8);
                    let hi = rng.gen_range(lo..=8);
                    (rng.gen_range(-8..=8), lo, hi, i as u32)
                })
                .collect();
            let t = CrossingStructure::build(segs.clone());
            let mut cnt = QueryCounters::new();
            for _ in 0..150 {
                let a = rng.gen_range(-9..=9);
                let b = rng.gen_range(a..=9);
                let c = rng.gen_range(-9..=9);
                let d = rng.gen_range(c..=9);
                let mut got = Vec::new();
                t.report(a, b, c, d, &mut cnt, &mut |p| got.push(p));
                got.sort_unstable();
                let want: Vec<u32> = segs
                    .iter()
                    .filter(|s| s.0 >= a && s.0 <= b && s.1 <= c && s.2 >= d)
                    .map(|s| s.3)
                    .collect();
                assert_eq!(got, want);
                assert_eq!(t.any(a, b, c, d, &mut cnt), !want.is_empty());
            }
        }
    }
}
