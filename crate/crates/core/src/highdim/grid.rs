//! Per-axis grid construction: every ⌊n^{1-δ}⌋-th facet projection is a
//! chosen point; consecutive chosen points bound the intervals, with
//! unbounded sentinel intervals at both ends so that every coordinate has a
//! home. A coordinate equal to a chosen point belongs to the interval having
//! that point as its left endpoint.

use crate::geom::{BoxD, Scalar};

#[derive(Debug, Clone)]
pub struct GridAxis {
    /// Deduplicated chosen values, ascending.
    pub chosen: Vec<Scalar>,
    /// Step used at construction (⌊n^{1-δ}⌋).
    pub step: usize,
}

impl GridAxis {
    /// Interval index of a coordinate: 0 is the low sentinel, `chosen.len()`
    /// the high sentinel; ties go to the interval whose left endpoint is the
    /// chosen value.
    pub fn locate(&self, x: Scalar) -> u32 {
        self.chosen.partition_point(|&p| p <= x) as u32
    }

    pub fn interval_count(&self) -> usize {
        self.chosen.len() + 1
    }

    /// Closed bounds of interval `i`; sentinels use i64::MIN / i64::MAX.
    pub fn interval_bounds(&self, i: u32) -> (Scalar, Scalar) {
        let i = i as usize;
        let lo = if i == 0 { Scalar::MIN } else { self.chosen[i - 1] };
        let hi = if i == self.chosen.len() { Scalar::MAX } else { self.chosen[i] };
        (lo, hi)
    }

    /// Index range of the intervals fully contained in the closed range
    /// [lo, hi]; sentinel intervals are never contained.
    pub fn contained_range(&self, lo: Scalar, hi: Scalar) -> Option<(u32, u32)> {
        if self.chosen.is_empty() {
            return None;
        }
        let first = self.chosen.partition_point(|&p| p < lo) + 1;
        let last = self.chosen.partition_point(|&p| p <= hi);
        if first > last || last == 0 {
            None
        } else {
            Some((first as u32, last as u32 - 1)).filter(|(a, b)| a <= b)
        }
    }
}

/// Chosen points for one axis: sort the 2n facet projections (duplicates
/// kept so repeated coordinates still advance the count) and take every
/// step-th element, 1-indexed.
pub fn build_grid(boxes: &[BoxD], axis: usize, delta: f64) -> GridAxis {
    let n = boxes.len();
    let mut projs: Vec<Scalar> = Vec::with_capacity(2 * n);
    for b in boxes {
        projs.push(b.lo[axis]);
        projs.push(b.hi[axis]);
    }
    projs.sort_unstable();
    let step = if n == 0 { 1 } else { ((n as f64).powf(1.0 - delta).floor() as usize).max(1) };
    let mut chosen: Vec<Scalar> = projs.iter().skip(step - 1).step_by(step).copied().collect();
    chosen.dedup();
    GridAxis { chosen, step }
}

/// Number of facet projections strictly inside each interval; the
/// construction guarantees at most 2⌊n^{1-δ}⌋ per interval.
pub fn strict_inside_counts(boxes: &[BoxD], axis: usize, grid: &GridAxis) -> Vec<usize> {
    let mut counts = vec![0usize; grid.interval_count()];
    for b in boxes {
        for v in [b.lo[axis], b.hi[axis]] {
            let i = grid.locate(v);
            let (lo, hi) = grid.interval_bounds(i);
            if (lo == Scalar::MIN || lo < v) && (hi == Scalar::MAX || v < hi) {
                counts[i as usize] += 1;
            }
        }
    }
    counts
}

/// The grid cell holding a box's minimum corner.
pub fn canonical_cell(grid: &[GridAxis], b: &BoxD) -> Vec<u32> {
    (0..b.dim()).map(|t| grid[t].locate(b.lo[t])).collect()
}
