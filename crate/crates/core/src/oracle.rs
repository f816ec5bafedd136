//! Brute-force ground truth for every queryable contract.
//!
//! Everything here is a direct evaluation of a definition: quadratic pair
//! scans, per-side linear scans, exhaustive node scans. The oracles share
//! only the value-level predicates from [`crate::geom`] with the query
//! structures they check; none of them touch a library query path.

use std::collections::BTreeSet;

use crate::geom::{
    config_membership, intersect_boxes, triple_intersects, BoxD, ConfigTag, Scalar, Side, Stretch,
};

/// All pairs `(i, j)`, `i < j` by id, with `S_i ∩ S_j ∩ q != ∅`.
pub fn oracle_pairs(boxes: &[BoxD], q: &BoxD) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    for (a, sa) in boxes.iter().enumerate() {
        for sb in &boxes[a + 1..] {
            if triple_intersects(sa, sb, q) {
                out.insert((sa.id.min(sb.id), sa.id.max(sb.id)));
            }
        }
    }
    out
}

/// Configuration sets of every oracle pair, keyed by (i, j).
pub fn oracle_configs(
    boxes: &[BoxD],
    stretches: &[Vec<Stretch>],
    q: &BoxD,
) -> Vec<((u32, u32), Vec<ConfigTag>)> {
    let mut out = Vec::new();
    for (a, sa) in boxes.iter().enumerate() {
        for (off, sb) in boxes[a + 1..].iter().enumerate() {
            let b = a + 1 + off;
            if triple_intersects(sa, sb, q) {
                let m = config_membership(sa, sb, &stretches[a], &stretches[b], q);
                let key = (sa.id.min(sb.id), sa.id.max(sb.id));
                out.push((key, m));
            }
        }
    }
    out
}

fn side_segment(b: &BoxD, side: Side) -> (Scalar, Scalar, Scalar) {
    // (fixed, lo, hi) in the side's own coordinates.
    match side {
        Side::Top => (b.hi[1], b.lo[0], b.hi[0]),
        Side::Bottom => (b.lo[1], b.lo[0], b.hi[0]),
        Side::Left => (b.lo[0], b.lo[1], b.hi[1]),
        Side::Right => (b.hi[0], b.lo[1], b.hi[1]),
    }
}

/// Stretches by per-side linear scan over all other rectangles.
pub fn oracle_stretches(boxes: &[BoxD]) -> Vec<Vec<Stretch>> {
    let mut out = vec![Vec::new(); boxes.len()];
    for (a, sa) in boxes.iter().enumerate() {
        assert_eq!(sa.dim(), 2, "stretches are planar");
        for side in [Side::Top, Side::Bottom, Side::Left, Side::Right] {
            let (fixed, lo, hi) = side_segment(sa, side);
            let horizontal = side.is_horizontal();
            let mut best: Option<(Scalar, Scalar)> = None;
            for (b, sb) in boxes.iter().enumerate() {
                if a == b {
                    continue;
                }
                // Clip the side segment against sb.
                let (f_lo, f_hi, s_lo, s_hi) = if horizontal {
                    (sb.lo[1], sb.hi[1], sb.lo[0], sb.hi[0])
                } else {
                    (sb.lo[0], sb.hi[0], sb.lo[1], sb.hi[1])
                };
                if fixed < f_lo || fixed > f_hi {
                    continue;
                }
                let c_lo = lo.max(s_lo);
                let c_hi = hi.min(s_hi);
                if c_lo > c_hi {
                    continue;
                }
                best = Some(match best {
                    None => (c_lo, c_hi),
                    Some((x, y)) => (x.min(c_lo), y.max(c_hi)),
                });
            }
            if let Some((s_lo, s_hi)) = best {
                out[a].push(Stretch { owner: sa.id, side, fixed, lo: s_lo, hi: s_hi });
            }
        }
    }
    out
}

/// Rectangles containing a query point, closed containment.
pub fn oracle_point_enclosure(boxes: &[BoxD], p: &[Scalar]) -> BTreeSet<u32> {
    boxes.iter().filter(|b| b.contains_point(p)).map(|b| b.id).collect()
}

/// Rectangles intersecting a query box.
pub fn oracle_box_intersect(boxes: &[BoxD], q: &BoxD) -> BTreeSet<u32> {
    boxes.iter().filter(|b| b.intersects(q)).map(|b| b.id).collect()
}

/// Stretches of one orientation crossing `q`, by predicate filter.
pub fn oracle_crossing(stretches: &[Stretch], q: &BoxD, vertical: bool) -> BTreeSet<(u32, Side)> {
    stretches
        .iter()
        .filter(|s| s.is_vertical() == vertical && s.crosses(q))
        .map(|s| (s.owner, s.side))
        .collect()
}

/// Sides of rectangles other than `skip_owner` crossed by the vertical
/// segment `x = xs, y ∈ [y_lo, y_hi]`, sorted by (y, owner); `ascending`
/// selects the reading direction. Used to check the segment-walk order.
pub fn oracle_vertical_walk(
    boxes: &[BoxD],
    skip_owner: u32,
    xs: Scalar,
    y_lo: Scalar,
    y_hi: Scalar,
    ascending: bool,
) -> Vec<(Scalar, u32)> {
    let mut hits = Vec::new();
    for b in boxes {
        if b.id == skip_owner || xs < b.lo[0] || xs > b.hi[0] {
            continue;
        }
        for y in [b.lo[1], b.hi[1]] {
            if y >= y_lo && y <= y_hi {
                hits.push((y, b.id));
            }
        }
    }
    hits.sort();
    hits.dedup();
    if !ascending {
        hits.reverse();
    }
    hits
}

/// Marked grid cells: canonical cell index tuple of every nonempty pairwise
/// intersection. `locate` must behave like the grid's tie rule: a coordinate
/// equal to a chosen point belongs to the interval with that point as its
/// left endpoint.
pub fn oracle_marked_cells(boxes: &[BoxD], chosen: &[Vec<Scalar>]) -> BTreeSet<Vec<u32>> {
    let locate = |axis: &Vec<Scalar>, x: Scalar| -> u32 {
        axis.iter().take_while(|&&p| p <= x).count() as u32
    };
    let mut out = BTreeSet::new();
    for (a, sa) in boxes.iter().enumerate() {
        for sb in &boxes[a + 1..] {
            if let Some(i) = intersect_boxes(sa, sb) {
                let cell: Vec<u32> =
                    (0..i.dim()).map(|t| locate(&chosen[t], i.lo[t])).collect();
                out.insert(cell);
            }
        }
    }
    out
}

/// A read-only view of one segment-tree node, enough to evaluate the
/// canonical-node definition from coordinates alone.
#[derive(Debug, Clone, Copy)]
pub struct NodeView {
    pub id: u32,
    /// Closed slab; i64::MIN / i64::MAX stand for the unbounded ends.
    pub slab: (Scalar, Scalar),
    pub parent_slab: Option<(Scalar, Scalar)>,
}

fn crosses(slab: (Scalar, Scalar), lo: Scalar, hi: Scalar) -> bool {
    // The slab is contained in [lo, hi]; unbounded slabs cross nothing finite.
    slab.0 != Scalar::MIN && slab.1 != Scalar::MAX && lo <= slab.0 && slab.1 <= hi
}

fn side_in_interior(slab: (Scalar, Scalar), x: Scalar) -> bool {
    (slab.0 == Scalar::MIN || slab.0 < x) && (slab.1 == Scalar::MAX || x < slab.1)
}

fn in_sstar(v: &NodeView, lo: Scalar, hi: Scalar) -> (bool, bool) {
    let cross_self = crosses(v.slab, lo, hi);
    let cross_parent = v.parent_slab.map_or(false, |p| crosses(p, lo, hi));
    let in_si = cross_self && !cross_parent;
    let in_sc = side_in_interior(v.slab, lo) || side_in_interior(v.slab, hi);
    (in_si, in_sc)
}

fn on_left_path(slab: (Scalar, Scalar), c: Scalar) -> bool {
    (slab.0 == Scalar::MIN || slab.0 < c) && (slab.1 == Scalar::MAX || c <= slab.1)
}

fn on_right_path(slab: (Scalar, Scalar), c: Scalar) -> bool {
    (slab.0 == Scalar::MIN || slab.0 <= c) && (slab.1 == Scalar::MAX || c < slab.1)
}

/// Direct evaluation of the canonical-node predicate for a pair against one
/// walked-axis tree. `ranges` are the walked-axis extents of the two
/// rectangles; `q_lo` is the walked-axis coordinate of the query side the
/// tree is keyed to. Returns the node ids satisfying the definition.
pub fn oracle_canonical_nodes(
    nodes: &[NodeView],
    ri: (Scalar, Scalar),
    rj: (Scalar, Scalar),
    q_lo: Scalar,
) -> Vec<u32> {
    // Tie rule: the pair is keyed to the left-adjacent root-leaf path when
    // the intersection starts strictly left of the query side, otherwise to
    // the right-adjacent path.
    let i_lo = ri.0.max(rj.0);
    let take_left = i_lo < q_lo;
    let mut out = Vec::new();
    for v in nodes {
        let on_path = if take_left { on_left_path(v.slab, q_lo) } else { on_right_path(v.slab, q_lo) };
        if !on_path {
            continue;
        }
        let (i_si, i_sc) = in_sstar(v, ri.0, ri.1);
        let (j_si, j_sc) = in_sstar(v, rj.0, rj.1);
        if (i_si || i_sc) && (j_si || j_sc) && (i_si || j_si) {
            out.push(v.id);
        }
    }
    out
}
