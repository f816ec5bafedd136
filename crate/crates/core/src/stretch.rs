//! Stretch computation by plane sweep.
//!
//! For each rectangle side, the stretch spans between the extreme points of
//! the side's intersection with the other input rectangles. One sweep per
//! orientation; active rectangles are tracked in a stabbing counter plus
//! ordered endpoint sets, so each side resolves in O(log n).

use std::collections::BTreeSet;

use crate::geom::{BoxD, Scalar, Side, Stretch};

struct Fenwick {
    tree: Vec<i64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick { tree: vec![0; n + 1] }
    }

    fn add(&mut self, mut i: usize, d: i64) {
        i += 1;
        while i < self.tree.len() {
            self.tree[i] += d;
            i += i & i.wrapping_neg();
        }
    }

    /// Range add on compressed indices [l, r].
    fn range_add(&mut self, l: usize, r: usize, d: i64) {
        self.add(l, d);
        if r + 1 < self.tree.len() {
            self.add(r + 1, -d);
        }
    }

    /// Point value at compressed index i.
    fn point(&self, mut i: usize) -> i64 {
        i += 1;
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}

/// Stretches of every rectangle, listed per rectangle in Side order.
pub fn compute_stretches(boxes: &[BoxD]) -> Vec<Vec<Stretch>> {
    for b in boxes {
        assert_eq!(b.dim(), 2, "stretches are planar");
    }
    let mut out = vec![Vec::new(); boxes.len()];
    sweep(boxes, 0, Side::Left, Side::Right, &mut out);
    sweep(boxes, 1, Side::Bottom, Side::Top, &mut out);
    for v in &mut out {
        v.sort_by_key(|s| s.side);
    }
    out
}

/// Sweeps along `sweep_ax` resolving the sides orthogonal to it.
fn sweep(boxes: &[BoxD], sweep_ax: usize, lo_side: Side, hi_side: Side, out: &mut [Vec<Stretch>]) {
    let span_ax = 1 - sweep_ax;
    let n = boxes.len();
    if n == 0 {
        return;
    }

    // Compressed span-axis coordinates for the stabbing counter.
    let mut coords: Vec<Scalar> = Vec::with_capacity(2 * n);
    for b in boxes {
        coords.push(b.lo[span_ax]);
        coords.push(b.hi[span_ax]);
    }
    coords.sort_unstable();
    coords.dedup();
    let ci = |x: Scalar| coords.binary_search(&x).unwrap();

    // Sweep positions: all sweep-axis endpoints.
    let mut positions: Vec<Scalar> = Vec::with_capacity(2 * n);
    for b in boxes {
        positions.push(b.lo[sweep_ax]);
        positions.push(b.hi[sweep_ax]);
    }
    positions.sort_unstable();
    positions.dedup();

    let mut starts: Vec<Vec<u32>> = vec![Vec::new(); positions.len()];
    let mut ends: Vec<Vec<u32>> = vec![Vec::new(); positions.len()];
    for (i, b) in boxes.iter().enumerate() {
        let s = positions.binary_search(&b.lo[sweep_ax]).unwrap();
        let e = positions.binary_search(&b.hi[sweep_ax]).unwrap();
        starts[s].push(i as u32);
        ends[e].push(i as u32);
    }

    let mut cover = Fenwick::new(coords.len());
    let mut lows: BTreeSet<(Scalar, u32)> = BTreeSet::new();
    let mut highs: BTreeSet<(Scalar, u32)> = BTreeSet::new();

    for (pi, &pos) in positions.iter().enumerate() {
        for &i in &starts[pi] {
            let b = &boxes[i as usize];
            cover.range_add(ci(b.lo[span_ax]), ci(b.hi[span_ax]), 1);
            lows.insert((b.lo[span_ax], i));
            highs.insert((b.hi[span_ax], i));
        }
        // A rectangle degenerate on the sweep axis appears in both lists and
        // gets both of its coincident sides resolved, once each.
        for &i in &starts[pi] {
            resolve_side(boxes, i, lo_side, span_ax, pos, &cover, &lows, &highs, &coords, out);
        }
        for &i in &ends[pi] {
            resolve_side(boxes, i, hi_side, span_ax, pos, &cover, &lows, &highs, &coords, out);
        }
        for &i in &ends[pi] {
            let b = &boxes[i as usize];
            cover.range_add(ci(b.lo[span_ax]), ci(b.hi[span_ax]), -1);
            lows.remove(&(b.lo[span_ax], i));
            highs.remove(&(b.hi[span_ax], i));
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn resolve_side(
    boxes: &[BoxD],
    i: u32,
    side: Side,
    span_ax: usize,
    fixed: Scalar,
    cover: &Fenwick,
    lows: &BTreeSet<(Scalar, u32)>,
    highs: &BTreeSet<(Scalar, u32)>,
    coords: &[Scalar],
    out: &mut [Vec<Stretch>],
) {
    let b = &boxes[i as usize];
    let y1 = b.lo[span_ax];
    let y2 = b.hi[span_ax];
    let ci = |x: Scalar| coords.binary_search(&x).unwrap();

    // Low end: y1 itself when another active rectangle covers it, else the
    // smallest active lower endpoint strictly inside (y1, y2].
    let low = if cover.point(ci(y1)) >= 2 {
        Some(y1)
    } else {
        lows.range((
            std::ops::Bound::Excluded((y1, u32::MAX)),
            std::ops::Bound::Included((y2, u32::MAX)),
        ))
        .next()
        .map(|&(v, _)| v)
    };
    let high = if cover.point(ci(y2)) >= 2 {
        Some(y2)
    } else {
        highs
            .range((
                std::ops::Bound::Included((y1, 0)),
                std::ops::Bound::Excluded((y2, 0)),
            ))
            .next_back()
            .map(|&(v, _)| v)
    };

    match (low, high) {
        (Some(lo), Some(hi)) => {
            debug_assert!(lo <= hi);
            out[i as usize].push(Stretch { owner: b.id, side, fixed, lo, hi });
        }
        (None, None) => {}
        _ => unreachable!("stretch ends must resolve together"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_stretches;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn b2(id: u32, x1: i64, y1: i64, x2: i64, y2: i64) -> BoxD {
        BoxD::new(id, vec![x1, y1], vec![x2, y2])
    }

    #[test]
    fn two_squares() {
        let boxes = [b2(1, 0, 0, 4, 4), b2(2, 2, 2, 6, 6)];
        let got = compute_stretches(&boxes);
        let top1 = got[0].iter().find(|s| s.side == Side::Top).unwrap();
        assert_eq!((top1.fixed, top1.lo, top1.hi), (4, 2, 4));
        assert_eq!(got[0].len(), 2); // top + right only
        assert_eq!(got[1].len(), 2); // bottom + left only
    }

    #[test]
    fn isolated_has_none() {
        let boxes = [b2(1, 0, 0, 4, 4), b2(2, 100, 100, 101, 101)];
        let got = compute_stretches(&boxes);
        assert!(got[0].is_empty() && got[1].is_empty());
    }

    #[test]
    fn covered_side_full_stretch() {
        let boxes = [b2(1, 2, 2, 4, 4), b2(2, 0, 0, 6, 6)];
        let got = compute_stretches(&boxes);
        assert_eq!(got[0].len(), 4);
        for s in &got[0] {
            assert_eq!((s.lo, s.hi), (2, 4));
        }
    }

    #[test]
    fn matches_oracle_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for case in 0..1000 {
            let n = rng.gen_range(1..=24);
            let range = if case % 2 == 0 { 8 } else { 40 };
            let boxes: Vec<BoxD> = (0..n)
                .map(|i| {
                    let x1 = rng.gen_range(0..=range);
                    let x2 = rng.gen_range(x1..=range);
                    let y1 = rng.gen_range(0..=range);
                    let y2 = rng.gen_range(y1..=range);
                    b2(i + 1, x1, y1, x2, y2)
                })
                .collect();
            let mut got = compute_stretches(&boxes);
            let mut want = oracle_stretches(&boxes);
            for v in got.iter_mut().chain(want.iter_mut()) {
                v.sort_by_key(|s| s.side);
            }
            assert_eq!(got, want, "case {case}");
        }
    }
}
