//! Layered range tree over d-dimensional integer points, closed query boxes.
//!
//! Each level is a balanced hierarchy over one axis; every canonical node
//! carries a structure over the remaining axes, bottoming out in a sorted
//! array on the last axis. Space O(n log^{d-1} n), query
//! O(log^{d-1} n + output) without fractional cascading.

use crate::counters::QueryCounters;
use crate::geom::Scalar;

#[derive(Debug, Clone)]
enum Level {
    /// Last axis: (coordinate, payload) sorted by coordinate.
    Flat(Vec<(Scalar, u32)>),
    Inner(InnerLevel),
}

#[derive(Debug, Clone)]
struct InnerLevel {
    /// This level's axis coordinates, sorted, aligned with `pts` order.
    keys: Vec<Scalar>,
    nodes: Vec<RtNode>,
    root: u32,
}

#[derive(Debug, Clone)]
struct RtNode {
    /// Rank range [lo, hi) of the key array covered by this node.
    lo: u32,
    hi: u32,
    left: u32,
    right: u32,
    sub: Level,
}

const NONE: u32 = u32::MAX;

/// Static d-dimensional orthogonal range reporting structure.
#[derive(Debug, Clone)]
pub struct RangeTreeNd {
    dims: usize,
    len: usize,
    top: Level,
}

impl RangeTreeNd {
    /// `pts` is a flat row-major array of `len * dims` coordinates; payload i
    /// is the row index cast to u32 unless `payloads` is given.
    pub fn build(dims: usize, pts: &[Scalar], payloads: Option<&[u32]>) -> Self {
        assert!(dims >= 1);
        assert_eq!(pts.len() % dims, 0);
        let len = pts.len() / dims;
        let rows: Vec<u32> = match payloads {
            Some(p) => {
                assert_eq!(p.len(), len);
                p.to_vec()
            }
            None => (0..len as u32).collect(),
        };
        let idx: Vec<u32> = (0..len as u32).collect();
        let top = Self::build_level(dims, pts, &rows, idx, 0);
        RangeTreeNd { dims, len, top }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Total stored coordinate/payload cells across all levels.
    pub fn stored_cells(&self) -> u64 {
        fn level_cells(l: &Level) -> u64 {
            match l {
                Level::Flat(v) => v.len() as u64,
                Level::Inner(inner) => {
                    inner.keys.len() as u64
                        + inner.nodes.iter().map(|n| level_cells(&n.sub)).sum::<u64>()
                }
            }
        }
        level_cells(&self.top)
    }

    fn build_level(dims: usize, pts: &[Scalar], rows: &[u32], mut idx: Vec<u32>, axis: usize) -> Level {
        idx.sort_unstable_by_key(|&i| (pts[i as usize * dims + axis], i));
        if axis + 1 == dims {
            return Level::Flat(
                idx.iter().map(|&i| (pts[i as usize * dims + axis], rows[i as usize])).collect(),
            );
        }
        let keys: Vec<Scalar> = idx.iter().map(|&i| pts[i as usize * dims + axis]).collect();
        let mut inner = InnerLevel { keys, nodes: Vec::new(), root: NONE };
        inner.root = Self::build_nodes(&mut inner.nodes, dims, pts, rows, &idx, 0, axis);
        Level::Inner(inner)
    }

    fn build_nodes(
        nodes: &mut Vec<RtNode>,
        dims: usize,
        pts: &[Scalar],
        rows: &[u32],
        idx: &[u32],
        base: u32,
        axis: usize,
    ) -> u32 {
        if idx.is_empty() {
            return NONE;
        }
        let sub = Self::build_level(dims, pts, rows, idx.to_vec(), axis + 1);
        let id = nodes.len() as u32;
        nodes.push(RtNode {
            lo: base,
            hi: base + idx.len() as u32,
            left: NONE,
            right: NONE,
            sub,
        });
        if idx.len() > 1 {
            let mid = idx.len() / 2;
            let left = Self::build_nodes(nodes, dims, pts, rows, &idx[..mid], base, axis);
            let right =
                Self::build_nodes(nodes, dims, pts, rows, &idx[mid..], base + mid as u32, axis);
            nodes[id as usize].left = left;
            nodes[id as usize].right = right;
        }
        id
    }

    /// Report payloads of all points inside the closed box `lo..=hi`
    /// (one bound pair per axis).
    pub fn report(
        &self,
        lo: &[Scalar],
        hi: &[Scalar],
        cnt: &mut QueryCounters,
        out: &mut impl FnMut(u32),
    ) {
        assert_eq!(lo.len(), self.dims);
        assert_eq!(hi.len(), self.dims);
        Self::report_level(&self.top, lo, hi, 0, cnt, out);
    }

    fn report_level(
        level: &Level,
        lo: &[Scalar],
        hi: &[Scalar],
        axis: usize,
        cnt: &mut QueryCounters,
        out: &mut impl FnMut(u32),
    ) {
        match level {
            Level::Flat(v) => {
                cnt.bsearch(v.len());
                let a = v.partition_point(|p| p.0 < lo[axis]);
                for &(c, payload) in &v[a..] {
                    if c > hi[axis] {
                        break;
                    }
                    cnt.step();
                    out(payload);
                }
            }
            Level::Inner(inner) => {
                // Rank range of keys within [lo, hi] on this axis.
                cnt.bsearch(inner.keys.len());
                let r1 = inner.keys.partition_point(|&k| k < lo[axis]) as u32;
                let r2 = inner.keys.partition_point(|&k| k <= hi[axis]) as u32;
                if r1 >= r2 {
                    return;
                }
                Self::descend(inner, inner.root, r1, r2, lo, hi, axis, cnt, out);
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        inner: &InnerLevel,
        id: u32,
        r1: u32,
        r2: u32,
        lo: &[Scalar],
        hi: &[Scalar],
        axis: usize,
        cnt: &mut QueryCounters,
        out: &mut impl FnMut(u32),
    ) {
        if id == NONE {
            return;
        }
        let n = &inner.nodes[id as usize];
        if n.hi <= r1 || n.lo >= r2 {
            return;
        }
        cnt.node();
        if r1 <= n.lo && n.hi <= r2 {
            Self::report_level(&n.sub, lo, hi, axis + 1, cnt, out);
            return;
        }
        Self::descend(inner, n.left, r1, r2, lo, hi, axis, cnt, out);
        Self::descend(inner, n.right, r1, r2, lo, hi, axis, cnt, out);
    }
}
