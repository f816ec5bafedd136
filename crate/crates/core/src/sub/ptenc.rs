//! Point enclosure over rectangles: a balanced slab tree on x, each node
//! holding the rectangles assigned to its slab in a partially persistent
//! list swept along y. Arbitrary points resolve a version by binary search;
//! stretch endpoints get their (version, head) entries precomputed so that
//! enumeration visits no empty node and costs O(1 + output).

use crate::counters::QueryCounters;
use crate::geom::Scalar;
use crate::plist::{Entry, PList, PListBuilder};
use crate::sub::Rect2;

const NONE: u32 = u32::MAX;

#[derive(Debug)]
struct PeNode {
    slab: (Scalar, Scalar),
    left: u32,
    right: u32,
    /// Rectangles spanning this slab, alive while y covers their extent.
    list: PList,
    /// (y, is_delete) event log for version lookup, sorted.
    events: Vec<(Scalar, bool)>,
}

#[derive(Debug)]
pub struct PointEnclosure {
    nodes: Vec<PeNode>,
    root: u32,
    rects: Vec<Rect2>,
}

impl PointEnclosure {
    pub fn build(rects: &[Rect2]) -> Self {
        let mut coords: Vec<Scalar> = rects.iter().flat_map(|r| [r.x1, r.x2]).collect();
        coords.sort_unstable();
        coords.dedup();
        // Elementary slabs alternate point pieces and gap pieces so that
        // degenerate x-extents still own a slab; sentinels close both ends.
        let mut leaves: Vec<(Scalar, Scalar)> = Vec::with_capacity(2 * coords.len() + 1);
        if coords.is_empty() {
            leaves.push((Scalar::MIN, Scalar::MAX));
        } else {
            leaves.push((Scalar::MIN, coords[0]));
            leaves.push((coords[0], coords[0]));
            for w in coords.windows(2) {
                leaves.push((w[0], w[1]));
                leaves.push((w[1], w[1]));
            }
            leaves.push((*coords.last().unwrap(), Scalar::MAX));
        }
        let mut shell = Vec::new();
        let root = build_shell(&mut shell, &leaves, 0, leaves.len());

        // Canonical assignment of each rectangle's x-extent.
        let mut assigned: Vec<Vec<u32>> = vec![Vec::new(); shell.len()];
        for (i, r) in rects.iter().enumerate() {
            assign(&shell, root, r.x1, r.x2, i as u32, &mut assigned);
        }

        let mut nodes = Vec::with_capacity(shell.len());
        for (ni, sh) in shell.iter().enumerate() {
            let mut evs: Vec<(Scalar, bool, u32)> = Vec::with_capacity(2 * assigned[ni].len());
            for &ri in &assigned[ni] {
                let r = &rects[ri as usize];
                evs.push((r.y1, false, ri));
                evs.push((r.y2, true, ri));
            }
            evs.sort_unstable();
            let mut b = PListBuilder::new();
            let mut events = Vec::with_capacity(evs.len());
            for (y, del, ri) in evs {
                let key = rects[ri as usize].y1;
                if del {
                    b.remove(key, ri as u64);
                } else {
                    b.insert(key, ri as u64);
                }
                events.push((y, del));
            }
            nodes.push(PeNode {
                slab: sh.slab,
                left: sh.left,
                right: sh.right,
                list: b.finish(),
                events,
            });
        }
        PointEnclosure { nodes, root, rects: rects.to_vec() }
    }

    pub fn rects(&self) -> &[Rect2] {
        &self.rects
    }

    /// Version seeing all rectangles alive at y (closed at both ends).
    fn version_at(events: &[(Scalar, bool)], y: Scalar) -> u32 {
        events.partition_point(|&(ey, del)| ey < y || (ey == y && !del)) as u32
    }

    fn path_nodes(&self, x: Scalar, cnt: &mut QueryCounters, mut f: impl FnMut(&PeNode, &mut QueryCounters) -> bool) {
        // Both root-leaf paths when x sits on a shared slab boundary.
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            if id == NONE {
                continue;
            }
            let n = &self.nodes[id as usize];
            if !(slab_contains(n.slab, x)) {
                continue;
            }
            cnt.node();
            if !f(n, cnt) {
                return;
            }
            stack.push(n.left);
            stack.push(n.right);
        }
    }

    /// All rectangle ids containing the point, closed containment.
    pub fn report(&self, x: Scalar, y: Scalar, cnt: &mut QueryCounters) -> Vec<u32> {
        let mut out: Vec<u32> =
            self.report_positions(x, y, cnt).iter().map(|&p| self.rects[p as usize].id).collect();
        out.sort_unstable();
        out
    }

    /// Same as `report` but yields positions into the build slice.
    pub fn report_positions(&self, x: Scalar, y: Scalar, cnt: &mut QueryCounters) -> Vec<u32> {
        let mut out = Vec::new();
        self.path_nodes(x, cnt, |n, cnt| {
            cnt.bsearch(n.events.len());
            let v = Self::version_at(&n.events, y);
            for (_, uid) in n.list.iter_from(n.list.head_at(v)) {
                cnt.step();
                out.push(uid as u32);
            }
            true
        });
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Emptiness check without enumeration.
    pub fn any(&self, x: Scalar, y: Scalar, cnt: &mut QueryCounters) -> bool {
        let mut found = false;
        self.path_nodes(x, cnt, |n, cnt| {
            cnt.bsearch(n.events.len());
            let v = Self::version_at(&n.events, y);
            if !n.list.head_at(v).is_empty() {
                found = true;
                return false;
            }
            true
        });
        found
    }

    /// Nonempty (node, entry) pairs for a fixed point, for entry tables.
    fn entries_for(&self, x: Scalar, y: Scalar) -> Vec<(u32, Entry)> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            if id == NONE {
                continue;
            }
            let n = &self.nodes[id as usize];
            if !slab_contains(n.slab, x) {
                continue;
            }
            let v = Self::version_at(&n.events, y);
            let e = n.list.head_at(v);
            if !e.is_empty() {
                out.push((id, e));
            }
            stack.push(n.left);
            stack.push(n.right);
        }
        out
    }
}

fn slab_contains(slab: (Scalar, Scalar), x: Scalar) -> bool {
    (slab.0 == Scalar::MIN || slab.0 <= x) && (slab.1 == Scalar::MAX || x <= slab.1)
}

struct ShellNode {
    slab: (Scalar, Scalar),
    left: u32,
    right: u32,
}

fn build_shell(out: &mut Vec<ShellNode>, leaves: &[(Scalar, Scalar)], lo: usize, hi: usize) -> u32 {
    debug_assert!(lo < hi);
    let id = out.len() as u32;
    out.push(ShellNode { slab: (leaves[lo].0, leaves[hi - 1].1), left: NONE, right: NONE });
    if hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let l = build_shell(out, leaves, lo, mid);
        let r = build_shell(out, leaves, mid, hi);
        out[id as usize].left = l;
        out[id as usize].right = r;
    }
    id
}

/// Canonical decomposition: store at every highest node whose slab is inside
/// the closed range.
fn assign(shell: &[ShellNode], id: u32, x1: Scalar, x2: Scalar, ri: u32, out: &mut Vec<Vec<u32>>) {
    if id == NONE {
        return;
    }
    let n = &shell[id as usize];
    let (lo, hi) = n.slab;
    // No overlap with the closed range.
    if (lo != Scalar::MIN && lo > x2) || (hi != Scalar::MAX && hi < x1) {
        return;
    }
    let inside = lo != Scalar::MIN && hi != Scalar::MAX && x1 <= lo && hi <= x2;
    if inside {
        out[id as usize].push(ri);
        return;
    }
    if n.left == NONE {
        return;
    }
    assign(shell, n.left, x1, x2, ri, out);
    assign(shell, n.right, x1, x2, ri, out);
}

/// Precomputed enumeration entries for stretch endpoints (or any fixed point
/// set): only nodes that yield at least one containing rectangle are stored.
#[derive(Debug)]
pub struct EndpointEntries {
    /// Per endpoint: offsets into `flat`.
    spans: Vec<(u32, u32)>,
    flat: Vec<(u32, Entry)>,
}

impl EndpointEntries {
    pub fn build(pe: &PointEnclosure, points: &[(Scalar, Scalar)]) -> Self {
        let mut spans = Vec::with_capacity(points.len());
        let mut flat = Vec::new();
        for &(x, y) in points {
            let start = flat.len() as u32;
            flat.extend(pe.entries_for(x, y));
            spans.push((start, flat.len() as u32));
        }
        EndpointEntries { spans, flat }
    }

    /// Total stored entry pointers (for the space accounting tests).
    pub fn entry_count(&self) -> usize {
        self.flat.len()
    }

    pub fn len(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    /// Rectangles containing the endpoint, in O(1 + output): every stored
    /// entry yields at least one item.
    pub fn enumerate(&self, pe: &PointEnclosure, endpoint: usize, cnt: &mut QueryCounters) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .enumerate_positions(pe, endpoint, cnt)
            .iter()
            .map(|&p| pe.rects[p as usize].id)
            .collect();
        out.sort_unstable();
        out
    }

    /// Same as `enumerate` but yields positions into the build slice.
    pub fn enumerate_positions(
        &self,
        pe: &PointEnclosure,
        endpoint: usize,
        cnt: &mut QueryCounters,
    ) -> Vec<u32> {
        let (a, b) = self.spans[endpoint];
        let mut out = Vec::new();
        for &(node, entry) in &self.flat[a as usize..b as usize] {
            cnt.node();
            let n = &pe.nodes[node as usize];
            for (_, uid) in n.list.iter_from(entry) {
                cnt.step();
                out.push(uid as u32);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_point_enclosure;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn r2(id: u32, x1: i64, y1: i64, x2: i64, y2: i64) -> Rect2 {
        Rect2 { id, x1, y1, x2, y2 }
    }

    #[test]
    fn two_squares_examples() {
        let rects = vec![r2(1, 0, 0, 4, 4), r2(2, 2, 2, 6, 6)];
        let pe = PointEnclosure::build(&rects);
        let mut cnt = QueryCounters::new();
        assert_eq!(pe.report(3, 3, &mut cnt), vec![1, 2]);
        assert_eq!(pe.report(7, 7, &mut cnt), Vec::<u32>::new());
        // Boundary of box 2 counts.
        assert_eq!(pe.report(2, 3, &mut cnt), vec![1, 2]);
        assert!(pe.any(3, 3, &mut cnt));
        assert!(!pe.any(7, 7, &mut cnt));
    }

    #[test]
    fn differential_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..300 {
            let n = rng.gen_range(0..=30);
            let rects: Vec<Rect2> = (0..n)
                .map(|i| {
                    let x1 = rng.gen_range(0..=12);
                    let x2 = rng.gen_range(x1..=12);
                    let y1 = rng.gen_range(0..=12);
                    let y2 = rng.gen_range(y1..=12);
                    r2(i + 1, x1, y1, x2, y2)
                })
                .collect();
            let boxes: Vec<_> = rects.iter().map(|r| r.to_box()).collect();
            let pe = PointEnclosure::build(&rects);
            let mut cnt = QueryCounters::new();
            for _ in 0..40 {
                let x = rng.gen_range(-1..=13);
                let y = rng.gen_range(-1..=13);
                let got = pe.report(x, y, &mut cnt);
                let want: Vec<u32> = oracle_point_enclosure(&boxes, &[x, y]).into_iter().collect();
                assert_eq!(got, want);
                assert_eq!(pe.any(x, y, &mut cnt), !want.is_empty());
            }
        }
    }

    #[test]
    fn endpoint_entries_match_report_and_stay_output_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(78);
        for _ in 0..120 {
            let n = rng.gen_range(2..=30);
            let rects: Vec<Rect2> = (0..n)
                .map(|i| {
                    let x1 = rng.gen_range(0..=10);
                    let x2 = rng.gen_range(x1..=10);
                    let y1 = rng.gen_range(0..=10);
                    let y2 = rng.gen_range(y1..=10);
                    r2(i + 1, x1, y1, x2, y2)
                })
                .collect();
            let pe = PointEnclosure::build(&rects);
            let pts: Vec<(i64, i64)> =
                (0..20).map(|_| (rng.gen_range(0..=10), rng.gen_range(0..=10))).collect();
            let ee = EndpointEntries::build(&pe, &pts);
            for (i, &(x, y)) in pts.iter().enumerate() {
                let mut c1 = QueryCounters::new();
                let got = ee.enumerate(&pe, i, &mut c1);
                let mut c2 = QueryCounters::new();
                let want = pe.report(x, y, &mut c2);
                assert_eq!(got, want);
                // Work bound: node visits + steps <= C * (1 + output).
                assert!(
                    c1.nodes_visited + c1.list_steps <= 3 * (1 + got.len() as u64),
                    "entry enumeration visited {} nodes / {} steps for {} results",
                    c1.nodes_visited,
                    c1.list_steps,
                    got.len()
                );
            }
        }
    }
}
