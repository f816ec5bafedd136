//! Interval tree answering "which stored horizontal segments are crossed by
//! a vertical query segment". Each segment `[x1,x2] @ y` is stored once at
//! the highest node whose center it contains; per node two priority search
//! trees resolve the three-sided condition for stabs left or right of the
//! center. O(N) space, O(log^2 N + output) query.

use crate::counters::QueryCounters;
use crate::geom::Scalar;
use crate::pst::Pst;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct SrNode {
    center: Scalar,
    left: u32,
    right: u32,
    /// key = y, prio = x1 (serves stabs at x0 <= center).
    lo_pst: Pst,
    /// key = y, prio = -x2 (serves stabs at x0 > center).
    hi_pst: Pst,
}

/// One stored segment: x-extent, position on the walked axis, payload.
#[derive(Debug, Clone, Copy)]
pub struct StabSeg {
    pub x1: Scalar,
    pub x2: Scalar,
    pub y: Scalar,
    pub payload: u32,
}

#[derive(Debug, Default, Clone)]
pub struct StabReporter {
    nodes: Vec<SrNode>,
    root: u32,
}

impl StabReporter {
    pub fn build(mut segs: Vec<StabSeg>) -> Self {
        let mut t = StabReporter { nodes: Vec::new(), root: NONE };
        t.root = t.build_rec(&mut segs);
        t
    }

    fn build_rec(&mut self, segs: &mut Vec<StabSeg>) -> u32 {
        if segs.is_empty() {
            return NONE;
        }
        // Median of finite endpoints keeps the tree balanced.
        let mut ends: Vec<Scalar> = Vec::with_capacity(2 * segs.len());
        for s in segs.iter() {
            if s.x1 != Scalar::MIN {
                ends.push(s.x1);
            }
            if s.x2 != Scalar::MAX {
                ends.push(s.x2);
            }
        }
        let center = if ends.is_empty() {
            0
        } else {
            let mid = ends.len() / 2;
            *ends.select_nth_unstable(mid).1
        };
        let mut here = Vec::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for s in segs.drain(..) {
            if s.x2 < center {
                left.push(s);
            } else if s.x1 > center {
                right.push(s);
            } else {
                here.push(s);
            }
        }
        let lo_pst = Pst::build(here.iter().map(|s| (s.y, s.x1, s.payload)).collect());
        let hi_pst = Pst::build(
            here.iter().map(|s| (s.y, s.x2.checked_neg().unwrap_or(Scalar::MIN), s.payload)).collect(),
        );
        let id = self.nodes.len() as u32;
        self.nodes.push(SrNode { center, left: NONE, right: NONE, lo_pst, hi_pst });
        let l = self.build_rec(&mut left);
        let r = self.build_rec(&mut right);
        self.nodes[id as usize].left = l;
        self.nodes[id as usize].right = r;
        id
    }

    /// Payloads of all segments with `x1 <= x0 <= x2` and `y ∈ [y1, y2]`.
    pub fn stab(
        &self,
        x0: Scalar,
        y1: Scalar,
        y2: Scalar,
        cnt: &mut QueryCounters,
        out: &mut impl FnMut(u32),
    ) {
        let mut id = self.root;
        while id != NONE {
            cnt.node();
            let n = &self.nodes[id as usize];
            if x0 <= n.center {
                n.lo_pst.report(y1, y2, x0, cnt, out);
                if x0 == n.center {
                    return;
                }
                id = n.left;
            } else {
                let bound = x0.checked_neg().unwrap_or(Scalar::MIN);
                n.hi_pst.report(y1, y2, bound, cnt, out);
                id = n.right;
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
    fn differential_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [0usize, 1, 5, 40, 300] {
            let segs: Vec<StabSeg> = (0..n)
                .map(|i| {
                    let a = rng.gen_range(-10..=10);
                    let b = rng.gen_range(a..=10);
                    StabSeg { x1: a, x2: b, y: rng.gen_range(-10..=10), payload: i as u32 }
                })
                .collect();
            let t = StabReporter::build(segs.clone());
            let mut cnt = QueryCounters::new();
            for _ in 0..200 {
                let x0 = rng.gen_range(-12..=12);
                let y1 = rng.gen_range(-12..=12);
                let y2 = rng.gen_range(y1..=12);
                let mut got = Vec::new();
                t.stab(x0, y1, y2, &mut cnt, &mut |p| got.push(p));
                got.sort_unstable();
                let want: Vec<u32> = segs
                    .iter()
                    .filter(|s| s.x1 <= x0 && x0 <= s.x2 && s.y >= y1 && s.y <= y2)
                    .map(|s| s.payload)
                    .collect();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn unbounded_extents() {
        let segs = vec![
            StabSeg { x1: Scalar::MIN, x2: Scalar::MAX, y: 0, payload: 0 },
            StabSeg { x1: Scalar::MIN, x2: 5, y: 1, payload: 1 },
            StabSeg { x1: 5, x2: Scalar::MAX, y: 2, payload: 2 },
        ];
        let t = StabReporter::build(segs);
        let mut cnt = QueryCounters::new();
        let mut got = Vec::new();
        t.stab(4, 0, 2, &mut cnt, &mut |p| got.push(p));
        got.sort_unstable();
        assert_eq!(got, vec![0, 1]);
        got.clear();
        t.stab(5, 0, 2, &mut cnt, &mut |p| got.push(p));
        got.sort_unstable();
        assert_eq!(got, vec![0, 1, 2]);
    }
}
