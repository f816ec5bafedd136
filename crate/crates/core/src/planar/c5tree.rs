//! The segment tree driving crossing-pair reporting.
//!
//! One instance handles the orientation where the horizontal sides of a
//! pair's intersection cross the query's vertical sides; the mirrored
//! orientation is served by a second instance built on axis-swapped copies.
//!
//! Per node the tree stores the rectangles that span its slab (crossSet),
//! the rectangles with a vertical side strictly inside it (sideSet), the
//! crossSet sorted by top and by bottom with precomputed walk entries, a
//! persistent list of the crossSet swept along y, and the trimmed rectangle
//! of every member. The horizontal trimmed sides across all nodes form the
//! catalog walked by the query's left side.

use crate::counters::QueryCounters;
use crate::geom::Scalar;
use crate::plist::{Entry, PList, PListBuilder};
use crate::sub::{Rect2, StabReporter, StabSeg};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct TNode {
    slab: (Scalar, Scalar),
    parent: u32,
    left: u32,
    right: u32,
}

#[derive(Debug, Clone, Copy)]
pub struct Member {
    pub pos: u32,
    pub in_cross_set: bool,
    /// Trimmed rectangle's y-extent; absent when no crossSet rectangle meets
    /// this member's y-range.
    pub trim: Option<(Scalar, Scalar)>,
    a_up: u32,
    a_dn: u32,
    b_up: u32,
    b_dn: u32,
    pl_bot: Entry,
    pl_top: Entry,
}

#[derive(Debug)]
struct NodeData {
    /// crossSet sorted ascending by (top, pos) / (bottom, pos).
    tops: Vec<(Scalar, u32)>,
    bots: Vec<(Scalar, u32)>,
    list: PList,
    /// All of S_*(v), sorted by pos.
    members: Vec<Member>,
}

/// Read-only node view for the exhaustive definition scans in tests.
#[derive(Debug, Clone, Copy)]
pub struct TreeNodeView {
    pub id: u32,
    pub slab: (Scalar, Scalar),
    pub parent_slab: Option<(Scalar, Scalar)>,
}

#[derive(Debug)]
pub struct C5Tree {
    nodes: Vec<TNode>,
    data: Vec<NodeData>,
    root: u32,
    rects: Vec<Rect2>,
    catalog: StabReporter,
    /// Catalog payloads: (node, rect position).
    side_table: Vec<(u32, u32)>,
}

impl C5Tree {
    pub fn build(rects: &[Rect2]) -> Self {
        let mut coords: Vec<Scalar> = rects.iter().flat_map(|r| [r.x1, r.x2]).collect();
        coords.sort_unstable();
        coords.dedup();
        let mut leaves: Vec<(Scalar, Scalar)> = Vec::with_capacity(coords.len() + 1);
        if coords.is_empty() {
            leaves.push((Scalar::MIN, Scalar::MAX));
        } else {
            leaves.push((Scalar::MIN, coords[0]));
            for w in coords.windows(2) {
                leaves.push((w[0], w[1]));
            }
            leaves.push((*coords.last().unwrap(), Scalar::MAX));
        }
        let mut nodes = Vec::new();
        let root = build_nodes(&mut nodes, &leaves, 0, leaves.len(), NONE);

        // Membership: canonical decomposition for the crossSet, root-down
        // walks for sides strictly inside a slab.
        let mut cross: Vec<Vec<u32>> = vec![Vec::new(); nodes.len()];
        let mut sides: Vec<Vec<u32>> = vec![Vec::new(); nodes.len()];
        for (i, r) in rects.iter().enumerate() {
            assign_cross(&nodes, root, r.x1, r.x2, i as u32, &mut cross);
            for side in [r.x1, r.x2] {
                let mut v = root;
                while v != NONE {
                    let n = &nodes[v as usize];
                    if !interior(n.slab, side) {
                        break;
                    }
                    sides[v as usize].push(i as u32);
                    v = if n.left == NONE {
                        NONE
                    } else {
                        let m = nodes[n.left as usize].slab.1;
                        if side < m {
                            n.left
                        } else if side > m {
                            n.right
                        } else {
                            NONE // boundary between the children
                        }
                    };
                }
            }
        }

        for v in &mut cross {
            v.sort_unstable();
        }

        let mut data = Vec::with_capacity(nodes.len());
        let mut catalog_segs = Vec::new();
        let mut side_table = Vec::new();
        for ni in 0..nodes.len() {
            let slab = nodes[ni].slab;
            let cs = &cross[ni];
            let mut tops: Vec<(Scalar, u32)> =
                cs.iter().map(|&p| (rects[p as usize].y2, p)).collect();
            let mut bots: Vec<(Scalar, u32)> =
                cs.iter().map(|&p| (rects[p as usize].y1, p)).collect();
            tops.sort_unstable();
            bots.sort_unstable();
            // Suffix-min of bottoms over the top-sorted order, and prefix-max
            // of tops over the bottom-sorted order; used for coverage tests.
            let mut sufmin_bot = vec![Scalar::MAX; tops.len() + 1];
            for i in (0..tops.len()).rev() {
                sufmin_bot[i] = sufmin_bot[i + 1].min(rects[tops[i].1 as usize].y1);
            }
            let mut premax_top = vec![Scalar::MIN; bots.len() + 1];
            for i in 0..bots.len() {
                premax_top[i + 1] = premax_top[i].max(rects[bots[i].1 as usize].y2);
            }

            let mut member_pos: Vec<u32> = cs.iter().chain(&sides[ni]).copied().collect();
            member_pos.sort_unstable();
            member_pos.dedup();

            // Persistent list of the crossSet swept along y, with snapshots
            // at every member's bottom and top.
            #[derive(Clone, Copy)]
            enum Ev {
                Ins(u32),
                Snap(u32, bool),
                Del(u32),
            }
            let mut evs: Vec<(Scalar, u8, u32, Ev)> = Vec::new();
            for &p in cs {
                let r = &rects[p as usize];
                evs.push((r.y1, 0, p, Ev::Ins(p)));
                evs.push((r.y2, 2, p, Ev::Del(p)));
            }
            for (mi, &p) in member_pos.iter().enumerate() {
                let r = &rects[p as usize];
                evs.push((r.y1, 1, mi as u32, Ev::Snap(mi as u32, false)));
                evs.push((r.y2, 1, mi as u32, Ev::Snap(mi as u32, true)));
            }
            evs.sort_by_key(|e| (e.0, e.1, e.2));
            let mut builder = PListBuilder::new();
            let mut snaps = vec![(Entry::EMPTY, Entry::EMPTY); member_pos.len()];
            for (_, _, _, ev) in evs {
                match ev {
                    Ev::Ins(p) => builder.insert(0, p as u64),
                    Ev::Del(p) => builder.remove(0, p as u64),
                    Ev::Snap(mi, is_top) => {
                        let s = builder.snapshot();
                        if is_top {
                            snaps[mi as usize].1 = s;
                        } else {
                            snaps[mi as usize].0 = s;
                        }
                    }
                }
            }
            let list = builder.finish();

            let mut members = Vec::with_capacity(member_pos.len());
            for (mi, &p) in member_pos.iter().enumerate() {
                let r = &rects[p as usize];
                let in_cross_set = cs.binary_search(&p).is_ok();
                let trim = trimmed_extent(r, &tops, &bots, &sufmin_bot, &premax_top);
                let a_up = tops.partition_point(|&(t, _)| t < r.y1) as u32;
                let a_dn = tops.partition_point(|&(t, _)| t <= r.y2) as u32; // exclusive
                let b_up = bots.partition_point(|&(b, _)| b < r.y1) as u32;
                let b_dn = bots.partition_point(|&(b, _)| b <= r.y2) as u32; // exclusive
                let (pl_bot, pl_top) = snaps[mi];
                members.push(Member {
                    pos: p,
                    in_cross_set,
                    trim,
                    a_up,
                    a_dn,
                    b_up,
                    b_dn,
                    pl_bot,
                    pl_top,
                });
                if let Some((tb, tt)) = trim {
                    let x1 = r.x1.max(slab.0);
                    let x2 = r.x2.min(slab.1);
                    let payload = side_table.len() as u32;
                    side_table.push((ni as u32, p));
                    catalog_segs.push(StabSeg { x1, x2, y: tt, payload });
                    if tb != tt {
                        catalog_segs.push(StabSeg { x1, x2, y: tb, payload });
                    }
                }
            }
            data.push(NodeData { tops, bots, list, members });
        }

        let catalog = StabReporter::build(catalog_segs);
        C5Tree { nodes, data, root, rects: rects.to_vec(), catalog, side_table }
    }

    pub fn rects(&self) -> &[Rect2] {
        &self.rects
    }

    /// Catalog walk along the query's left side: distinct (node, member
    /// position) pairs whose trimmed sides cross it.
    pub fn catalog_hits(&self, q: &Rect2, cnt: &mut QueryCounters) -> Vec<(u32, u32)> {
        let mut hits = Vec::new();
        let table = &self.side_table;
        self.catalog.stab(q.x1, q.y1, q.y2, cnt, &mut |payload| {
            hits.push(table[payload as usize]);
        });
        hits.sort_unstable();
        hits.dedup();
        hits
    }

    fn member_of(&self, node: u32, pos: u32) -> &Member {
        let members = &self.data[node as usize].members;
        let i = members.binary_search_by_key(&pos, |m| m.pos).expect("hit names a non-member");
        &members[i]
    }

    /// Partners of member `pos` at `node`: crossSet rectangles whose y-range
    /// meets y(member) ∩ y(q). Work is O(1 + partners found).
    pub fn enumerate_partners(
        &self,
        node: u32,
        pos: u32,
        q: &Rect2,
        cnt: &mut QueryCounters,
    ) -> Vec<u32> {
        let m = self.member_of(node, pos);
        let r = self.rects[pos as usize];
        let d = &self.data[node as usize];
        let mut out = Vec::new();
        if r.y1 >= q.y1 && r.y1 <= q.y2 {
            // Low endpoint of the member lies in the query's y-range.
            let ylo = r.y1;
            let yhi = r.y2.min(q.y2);
            let mut i = m.a_up as usize;
            while i < d.tops.len() && d.tops[i].0 <= yhi {
                cnt.step();
                out.push(d.tops[i].1);
                i += 1;
            }
            let mut i = m.b_up as usize;
            while i < d.bots.len() && d.bots[i].0 <= yhi {
                cnt.step();
                let p = d.bots[i].1;
                if self.rects[p as usize].y2 > yhi {
                    out.push(p); // tops walk already covers the rest
                }
                i += 1;
            }
            for (_, uid) in d.list.iter_from(m.pl_bot) {
                cnt.step();
                let p = uid as u32;
                let pr = &self.rects[p as usize];
                let top_in = pr.y2 >= ylo && pr.y2 <= yhi;
                let bot_in = pr.y1 >= ylo && pr.y1 <= yhi;
                if !top_in && !bot_in {
                    out.push(p);
                }
            }
        } else if r.y2 >= q.y1 && r.y2 <= q.y2 {
            // Only the high endpoint lies in the query's y-range.
            let ylo = q.y1;
            let yhi = r.y2;
            let mut i = m.a_dn as usize;
            while i > 0 && d.tops[i - 1].0 >= ylo {
                cnt.step();
                out.push(d.tops[i - 1].1);
                i -= 1;
            }
            let mut i = m.b_dn as usize;
            while i > 0 && d.bots[i - 1].0 >= ylo {
                cnt.step();
                let p = d.bots[i - 1].1;
                if self.rects[p as usize].y2 > yhi {
                    out.push(p);
                }
                i -= 1;
            }
            for (_, uid) in d.list.iter_from(m.pl_top) {
                cnt.step();
                let p = uid as u32;
                let pr = &self.rects[p as usize];
                let top_in = pr.y2 >= ylo && pr.y2 <= yhi;
                let bot_in = pr.y1 >= ylo && pr.y1 <= yhi;
                if !top_in && !bot_in {
                    out.push(p);
                }
            }
        }
        // Neither endpoint in y(q) means y(q) is strictly inside y(member);
        // any crossing pair canonical here would then be claimed by C1.
        out.retain(|&p| p != pos);
        out
    }

    fn crosses(&self, slab: (Scalar, Scalar), r: &Rect2) -> bool {
        slab.0 != Scalar::MIN && slab.1 != Scalar::MAX && r.x1 <= slab.0 && slab.1 <= r.x2
    }

    fn in_cross_set(&self, node: u32, r: &Rect2) -> bool {
        let n = &self.nodes[node as usize];
        if !self.crosses(n.slab, r) {
            return false;
        }
        n.parent == NONE || !self.crosses(self.nodes[n.parent as usize].slab, r)
    }

    fn in_side_set(&self, node: u32, r: &Rect2) -> bool {
        let slab = self.nodes[node as usize].slab;
        interior(slab, r.x1) || interior(slab, r.x2)
    }

    /// The canonical-node predicate for (i, j, q) at `node`, in O(1): the
    /// node lies on the tie-broken root-leaf path of the query's left side,
    /// both rectangles are members, and at least one is in the crossSet.
    pub fn is_canonical(&self, node: u32, pos_i: u32, pos_j: u32, q: &Rect2) -> bool {
        let ri = &self.rects[pos_i as usize];
        let rj = &self.rects[pos_j as usize];
        let slab = self.nodes[node as usize].slab;
        let i_lo = ri.x1.max(rj.x1);
        let on_path = if i_lo < q.x1 {
            on_left_path(slab, q.x1)
        } else {
            on_right_path(slab, q.x1)
        };
        if !on_path {
            return false;
        }
        let i_cross = self.in_cross_set(node, ri);
        let j_cross = self.in_cross_set(node, rj);
        if !i_cross && !j_cross {
            return false;
        }
        (i_cross || self.in_side_set(node, ri)) && (j_cross || self.in_side_set(node, rj))
    }

    pub fn node_views(&self) -> Vec<TreeNodeView> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| TreeNodeView {
                id: i as u32,
                slab: n.slab,
                parent_slab: (n.parent != NONE).then(|| self.nodes[n.parent as usize].slab),
            })
            .collect()
    }

    /// Σ_v |S_*(v)| — the structure-size figure the scaling suite tracks.
    pub fn sstar_total(&self) -> u64 {
        self.data.iter().map(|d| d.members.len() as u64).sum()
    }

    pub fn catalog_side_count(&self) -> u64 {
        self.side_table.len() as u64
    }

    pub fn plist_node_total(&self) -> u64 {
        self.data.iter().map(|d| d.list.node_count() as u64).sum()
    }

    /// Trimmed-rectangle sanity: contained in owner ∩ slab, horizontal sides
    /// inside some crossSet rectangle of the node.
    pub fn validate_trimmed(&self) {
        for (ni, d) in self.data.iter().enumerate() {
            let cs: Vec<&Rect2> =
                d.tops.iter().map(|&(_, p)| &self.rects[p as usize]).collect();
            for m in &d.members {
                let r = &self.rects[m.pos as usize];
                if let Some((tb, tt)) = m.trim {
                    assert!(r.y1 <= tb && tb <= tt && tt <= r.y2, "trim outside owner");
                    for side in [tb, tt] {
                        assert!(
                            cs.iter().any(|c| c.y1 <= side && side <= c.y2),
                            "trimmed side at node {ni} not inside any crossSet rectangle"
                        );
                    }
                }
            }
        }
    }
}

fn interior(slab: (Scalar, Scalar), x: Scalar) -> bool {
    (slab.0 == Scalar::MIN || slab.0 < x) && (slab.1 == Scalar::MAX || x < slab.1)
}

fn on_left_path(slab: (Scalar, Scalar), c: Scalar) -> bool {
    (slab.0 == Scalar::MIN || slab.0 < c) && (slab.1 == Scalar::MAX || c <= slab.1)
}

fn on_right_path(slab: (Scalar, Scalar), c: Scalar) -> bool {
    (slab.0 == Scalar::MIN || slab.0 <= c) && (slab.1 == Scalar::MAX || c < slab.1)
}

fn build_nodes(
    out: &mut Vec<TNode>,
    leaves: &[(Scalar, Scalar)],
    lo: usize,
    hi: usize,
    parent: u32,
) -> u32 {
    debug_assert!(lo < hi);
    let id = out.len() as u32;
    out.push(TNode { slab: (leaves[lo].0, leaves[hi - 1].1), parent, left: NONE, right: NONE });
    if hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let l = build_nodes(out, leaves, lo, mid, id);
        let r = build_nodes(out, leaves, mid, hi, id);
        out[id as usize].left = l;
        out[id as usize].right = r;
    }
    id
}

/// Canonical decomposition of a closed x-extent over the slab tree.
fn assign_cross(
    nodes: &[TNode],
    id: u32,
    x1: Scalar,
    x2: Scalar,
    pos: u32,
    out: &mut Vec<Vec<u32>>,
) {
    if id == NONE {
        return;
    }
    let n = &nodes[id as usize];
    let (lo, hi) = n.slab;
    if (lo != Scalar::MIN && lo > x2) || (hi != Scalar::MAX && hi < x1) {
        return;
    }
    if lo != Scalar::MIN && hi != Scalar::MAX && x1 <= lo && hi <= x2 {
        out[id as usize].push(pos);
        return;
    }
    if n.left == NONE {
        return;
    }
    assign_cross(nodes, n.left, x1, x2, pos, out);
    assign_cross(nodes, n.right, x1, x2, pos, out);
}

/// Bounding y-extent of (member ∩ slab) ∩ (union of crossSet rectangles),
/// or None when the member's y-range meets no crossSet rectangle.
fn trimmed_extent(
    r: &Rect2,
    tops: &[(Scalar, u32)],
    bots: &[(Scalar, u32)],
    sufmin_bot: &[Scalar],
    premax_top: &[Scalar],
) -> Option<(Scalar, Scalar)> {
    // Top: the member's own top when some crossSet rectangle covers it,
    // else the highest crossSet top inside the member's y-range.
    let i = tops.partition_point(|&(t, _)| t < r.y2);
    let covered_top = i < tops.len() && sufmin_bot[i] <= r.y2;
    let top = if covered_top {
        Some(r.y2)
    } else if i > 0 && tops[i - 1].0 >= r.y1 {
        Some(tops[i - 1].0)
    } else {
        None
    };
    let j = bots.partition_point(|&(b, _)| b <= r.y1);
    let covered_bot = j > 0 && premax_top[j] >= r.y1;
    let bot = if covered_bot {
        Some(r.y1)
    } else if j < bots.len() && bots[j].0 <= r.y2 {
        Some(bots[j].0)
    } else {
        None
    };
    match (bot, top) {
        (Some(b), Some(t)) => {
            debug_assert!(b <= t, "trimmed extent inverted");
            Some((b, t))
        }
        (None, None) => None,
        other => unreachable!("trimmed ends must resolve together: {other:?}"),
    }
}
