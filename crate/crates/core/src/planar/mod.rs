//! The full planar structure: stretches, the four auxiliary structures, the
//! configuration routines C1–C4, and the crossing-pair machinery over a pair
//! of segment trees, combined into one deduplicated query.

mod c5tree;

pub use c5tree::{C5Tree, TreeNodeView};

use std::collections::HashSet;

use crate::counters::QueryCounters;
use crate::geom::{dedup_tag, BoxD, ConfigTag, PairReport, Scalar, Stretch};
use crate::stretch::compute_stretches;
use crate::sub::{
    CrossingStructure, EndpointEntries, EndpointRangeStructure, PointEnclosure, Rect2,
    RecIntStructure, SegIntStructure,
};
use crate::{validate_boxes, BuildError};

/// Build-time figures used by the space-scaling suites.
#[derive(Debug, Clone, Copy, Default, serde::Serialize)]
pub struct PlanarStats {
    pub n: u64,
    /// Σ_v |S_*(v)| over both trees.
    pub sstar_total: u64,
    pub catalog_sides: u64,
    pub eptenc_entries: u64,
    pub plist_nodes: u64,
    pub stretch_count: u64,
    pub recenc_cells: u64,
}

impl PlanarStats {
    pub fn total_stored(&self) -> u64 {
        self.sstar_total + self.catalog_sides + self.eptenc_entries + self.plist_nodes
            + self.stretch_count
            + self.recenc_cells
    }
}

#[derive(Debug)]
pub struct PlanarStructure {
    boxes: Vec<BoxD>,
    rects: Vec<Rect2>,
    /// Per rectangle position, its stretches.
    stretches_of: Vec<Vec<Stretch>>,
    /// Flat stretch list; endpoint index = stretch * 2 + end.
    stretches: Vec<Stretch>,
    stretch_owner_pos: Vec<u32>,
    pe: PointEnclosure,
    epe: EndpointEntries,
    segint: SegIntStructure,
    recenc: EndpointRangeStructure,
    cross_v: CrossingStructure,
    cross_h: CrossingStructure,
    recint: RecIntStructure,
    xtree: C5Tree,
    ytree: C5Tree,
}

impl PlanarStructure {
    pub fn build(boxes: &[BoxD]) -> Result<Self, BuildError> {
        validate_boxes(boxes, 2)?;
        let rects: Vec<Rect2> = boxes.iter().map(Rect2::from_box).collect();
        let stretches_of = compute_stretches(boxes);

        let mut stretches = Vec::new();
        let mut stretch_owner_pos = Vec::new();
        for (pos, list) in stretches_of.iter().enumerate() {
            for s in list {
                stretches.push(*s);
                stretch_owner_pos.push(pos as u32);
            }
        }

        let pe = PointEnclosure::build(&rects);
        let endpoints: Vec<(Scalar, Scalar)> =
            stretches.iter().flat_map(|s| s.endpoints()).collect();
        let epe = EndpointEntries::build(&pe, &endpoints);
        let segint = SegIntStructure::build(&rects, &stretches);
        let recenc = EndpointRangeStructure::build(&stretches);

        let mut v_segs = Vec::new();
        let mut h_segs = Vec::new();
        for (i, s) in stretches.iter().enumerate() {
            if s.is_vertical() {
                v_segs.push((s.fixed, s.lo, s.hi, i as u32));
            } else {
                h_segs.push((s.fixed, s.lo, s.hi, i as u32));
            }
        }
        let cross_v = CrossingStructure::build(v_segs);
        let cross_h = CrossingStructure::build(h_segs);
        let recint = RecIntStructure::build(&rects);

        let xtree = C5Tree::build(&rects);
        let swapped: Vec<Rect2> = rects.iter().map(Rect2::swapped).collect();
        let ytree = C5Tree::build(&swapped);

        Ok(PlanarStructure {
            boxes: boxes.to_vec(),
            rects,
            stretches_of,
            stretches,
            stretch_owner_pos,
            pe,
            epe,
            segint,
            recenc,
            cross_v,
            cross_h,
            recint,
            xtree,
            ytree,
        })
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn boxes(&self) -> &[BoxD] {
        &self.boxes
    }

    pub fn stretches(&self) -> &[Stretch] {
        &self.stretches
    }

    pub fn stretches_of(&self) -> &[Vec<Stretch>] {
        &self.stretches_of
    }

    pub fn xtree(&self) -> &C5Tree {
        &self.xtree
    }

    pub fn ytree(&self) -> &C5Tree {
        &self.ytree
    }

    pub fn stats(&self) -> PlanarStats {
        PlanarStats {
            n: self.rects.len() as u64,
            sstar_total: self.xtree.sstar_total() + self.ytree.sstar_total(),
            catalog_sides: self.xtree.catalog_side_count() + self.ytree.catalog_side_count(),
            eptenc_entries: self.epe.entry_count() as u64,
            plist_nodes: self.xtree.plist_node_total() + self.ytree.plist_node_total(),
            stretch_count: self.stretches.len() as u64,
            recenc_cells: self.recenc.stored_cells(),
        }
    }

    /// The priority-minimal configuration of a pair for this query, given by
    /// positions into the build slice.
    fn tag_of(&self, a: u32, b: u32, q: &BoxD) -> Option<ConfigTag> {
        dedup_tag(
            &self.boxes[a as usize],
            &self.boxes[b as usize],
            &self.stretches_of[a as usize],
            &self.stretches_of[b as usize],
            q,
        )
    }

    fn emit(
        &self,
        a: u32,
        b: u32,
        want: ConfigTag,
        q: &BoxD,
        seen: &mut HashSet<(u32, u32)>,
        out: &mut Vec<PairReport>,
        cnt: &mut QueryCounters,
    ) {
        if a == b {
            return;
        }
        cnt.candidate();
        let key = (a.min(b), a.max(b));
        if seen.contains(&key) {
            return;
        }
        if self.tag_of(key.0, key.1, q) == Some(want) {
            seen.insert(key);
            let (ia, ib) = (self.rects[key.0 as usize].id, self.rects[key.1 as usize].id);
            out.push(PairReport::new(ia, ib, want));
        }
    }

    fn report_c1(
        &self,
        q: &BoxD,
        seen: &mut HashSet<(u32, u32)>,
        out: &mut Vec<PairReport>,
        cnt: &mut QueryCounters,
    ) {
        // Rectangles containing all four corners of q, via enclosure at one
        // corner filtered by containment.
        let s1: Vec<u32> = self
            .pe
            .report_positions(q.lo[0], q.lo[1], cnt)
            .into_iter()
            .filter(|&p| {
                let r = &self.rects[p as usize];
                r.x1 <= q.lo[0] && q.hi[0] <= r.x2 && r.y1 <= q.lo[1] && q.hi[1] <= r.y2
            })
            .collect();
        if s1.is_empty() {
            return;
        }
        let s2 = self.recint.report_positions(&self.pe, q.lo[0], q.lo[1], q.hi[0], q.hi[1], cnt);
        for &a in &s1 {
            for &b in &s2 {
                self.emit(a, b, ConfigTag::C1, q, seen, out, cnt);
            }
        }
    }

    fn report_c2(
        &self,
        q: &BoxD,
        seen: &mut HashSet<(u32, u32)>,
        out: &mut Vec<PairReport>,
        cnt: &mut QueryCounters,
    ) {
        let eps = self.recenc.report(q.lo[0], q.lo[1], q.hi[0], q.hi[1], cnt);
        for ep in eps {
            let sidx = (ep / 2) as usize;
            let end = (ep % 2) as usize;
            let owner = self.stretch_owner_pos[sidx];
            // Partners crossed along the stretch inside q, plus partners
            // containing the endpoint itself.
            for hit in self.segint.walk(sidx, end, q, cnt) {
                self.emit(owner, hit.rect_pos, ConfigTag::C2, q, seen, out, cnt);
            }
            for p in self.epe.enumerate_positions(&self.pe, ep as usize, cnt) {
                self.emit(owner, p, ConfigTag::C2, q, seen, out, cnt);
            }
        }
    }

    fn report_c3(
        &self,
        q: &BoxD,
        seen: &mut HashSet<(u32, u32)>,
        out: &mut Vec<PairReport>,
        cnt: &mut QueryCounters,
    ) {
        let (a, b, c, d) = (q.lo[0], q.hi[0], q.lo[1], q.hi[1]);
        // Vertical stretches: fixed x in [a,b], span covering [c,d];
        // horizontal ones have the roles swapped.
        if !self.cross_v.any(a, b, c, d, cnt) || !self.cross_h.any(c, d, a, b, cnt) {
            return;
        }
        let mut sv = Vec::new();
        self.cross_v.report(a, b, c, d, cnt, &mut |s| {
            sv.push(self.stretch_owner_pos[s as usize]);
        });
        sv.sort_unstable();
        sv.dedup();
        let mut sh = Vec::new();
        self.cross_h.report(c, d, a, b, cnt, &mut |s| {
            sh.push(self.stretch_owner_pos[s as usize]);
        });
        sh.sort_unstable();
        sh.dedup();
        for &i in &sv {
            for &j in &sh {
                self.emit(i, j, ConfigTag::C3, q, seen, out, cnt);
            }
        }
    }

    fn report_c4(
        &self,
        q: &BoxD,
        seen: &mut HashSet<(u32, u32)>,
        out: &mut Vec<PairReport>,
        cnt: &mut QueryCounters,
    ) {
        let mut corners = vec![
            (q.lo[0], q.lo[1]),
            (q.hi[0], q.lo[1]),
            (q.lo[0], q.hi[1]),
            (q.hi[0], q.hi[1]),
        ];
        corners.sort_unstable();
        corners.dedup();
        for (cx, cy) in corners {
            if !self.pe.any(cx, cy, cnt) {
                continue;
            }
            let hits = self.pe.report_positions(cx, cy, cnt);
            for (ai, &a) in hits.iter().enumerate() {
                for &b in &hits[ai + 1..] {
                    self.emit(a, b, ConfigTag::C4, q, seen, out, cnt);
                }
            }
        }
    }

    fn report_c5(
        &self,
        q: &BoxD,
        seen: &mut HashSet<(u32, u32)>,
        out: &mut Vec<PairReport>,
        cnt: &mut QueryCounters,
    ) {
        let qx = Rect2 { id: u32::MAX, x1: q.lo[0], y1: q.lo[1], x2: q.hi[0], y2: q.hi[1] };
        let qy = qx.swapped();
        for (tree, tq) in [(&self.xtree, &qx), (&self.ytree, &qy)] {
            for (node, pos_j) in tree.catalog_hits(tq, cnt) {
                for pos_i in tree.enumerate_partners(node, pos_j, tq, cnt) {
                    cnt.candidate();
                    let ri = &tree.rects()[pos_i as usize];
                    let rj = &tree.rects()[pos_j as usize];
                    // Constant-time re-verification before emission.
                    let xo = ri.x1.max(rj.x1).max(tq.x1) <= ri.x2.min(rj.x2).min(tq.x2);
                    let yo = ri.y1.max(rj.y1).max(tq.y1) <= ri.y2.min(rj.y2).min(tq.y2);
                    if !xo || !yo {
                        continue;
                    }
                    if !tree.is_canonical(node, pos_i, pos_j, tq) {
                        continue;
                    }
                    self.emit(pos_i, pos_j, ConfigTag::C5, q, seen, out, cnt);
                }
            }
        }
    }

    /// All pairs whose intersection meets the closed query box, tagged by
    /// the highest-priority configuration, each pair exactly once, sorted.
    pub fn query(&self, q: &BoxD, cnt: &mut QueryCounters) -> Vec<PairReport> {
        assert_eq!(q.dim(), 2, "planar query must be two-dimensional");
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        self.report_c1(q, &mut seen, &mut out, cnt);
        self.report_c2(q, &mut seen, &mut out, cnt);
        self.report_c3(q, &mut seen, &mut out, cnt);
        self.report_c4(q, &mut seen, &mut out, cnt);
        self.report_c5(q, &mut seen, &mut out, cnt);
        out.sort_unstable();
        out
    }

    /// Canonical-node discovery for one tree: distinct nodes and members
    /// whose trimmed sides cross the walked query side.
    pub fn find_canonical_nodes(
        &self,
        q: &BoxD,
        y_oriented: bool,
        cnt: &mut QueryCounters,
    ) -> (Vec<u32>, Vec<u32>) {
        let qx = Rect2 { id: u32::MAX, x1: q.lo[0], y1: q.lo[1], x2: q.hi[0], y2: q.hi[1] };
        let (tree, tq) = if y_oriented { (&self.ytree, qx.swapped()) } else { (&self.xtree, qx) };
        let hits = tree.catalog_hits(&tq, cnt);
        let mut nodes: Vec<u32> = hits.iter().map(|h| h.0).collect();
        let mut owners: Vec<u32> =
            hits.iter().map(|h| tree.rects()[h.1 as usize].id).collect();
        nodes.sort_unstable();
        nodes.dedup();
        owners.sort_unstable();
        owners.dedup();
        (nodes, owners)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_pairs;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn b2(id: u32, x1: i64, y1: i64, x2: i64, y2: i64) -> BoxD {
        BoxD::new(id, vec![x1, y1], vec![x2, y2])
    }

    fn pairs_of(reports: &[PairReport]) -> BTreeSet<(u32, u32)> {
        reports.iter().map(|r| (r.i, r.j)).collect()
    }

    #[test]
    fn c1_pair_both_containing() {
        let boxes = vec![b2(1, 0, 0, 8, 8), b2(2, 1, 1, 7, 7)];
        let ps = PlanarStructure::build(&boxes).unwrap();
        let mut cnt = QueryCounters::new();
        let got = ps.query(&b2(0, 3, 3, 4, 4), &mut cnt);
        assert_eq!(got.len(), 1);
        assert_eq!((got[0].i, got[0].j, got[0].tag), (1, 2, ConfigTag::C1));
    }

    #[test]
    fn two_squares_small_query() {
        let boxes = vec![b2(1, 0, 0, 4, 4), b2(2, 2, 2, 6, 6)];
        let ps = PlanarStructure::build(&boxes).unwrap();
        let mut cnt = QueryCounters::new();
        let got = ps.query(&b2(0, 1, 1, 3, 3), &mut cnt);
        assert_eq!(pairs_of(&got), BTreeSet::from([(1, 2)]));
        // q ⊆ box 1, so the pair's top configuration is C1.
        assert_eq!(got[0].tag, ConfigTag::C1);
    }

    #[test]
    fn pure_crossing_pair() {
        let boxes = vec![b2(1, 0, 4, 10, 6), b2(2, 0, 3, 10, 7)];
        let ps = PlanarStructure::build(&boxes).unwrap();
        let mut cnt = QueryCounters::new();
        let got = ps.query(&b2(0, 2, 0, 3, 10), &mut cnt);
        assert_eq!(got.len(), 1);
        assert_eq!((got[0].i, got[0].j, got[0].tag), (1, 2, ConfigTag::C5));
    }

    #[test]
    fn canonical_walk_single_pair_instance() {
        let boxes = vec![b2(1, 0, 4, 10, 6), b2(2, 0, 3, 10, 7)];
        let ps = PlanarStructure::build(&boxes).unwrap();
        let mut cnt = QueryCounters::new();
        let q = b2(0, 2, 0, 3, 10);
        let (nodes, owners) = ps.find_canonical_nodes(&q, false, &mut cnt);
        assert!(!nodes.is_empty());
        assert_eq!(owners, vec![1, 2]);
        // Partner enumeration from the hit recovers the mate.
        let qx = Rect2 { id: u32::MAX, x1: 2, y1: 0, x2: 3, y2: 10 };
        let hits = ps.xtree.catalog_hits(&qx, &mut cnt);
        let from_two = hits.iter().find(|h| ps.xtree.rects()[h.1 as usize].id == 2).unwrap();
        let partners = ps.xtree.enumerate_partners(from_two.0, from_two.1, &qx, &mut cnt);
        assert_eq!(partners.iter().map(|&p| ps.xtree.rects()[p as usize].id).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn query_in_empty_space() {
        let boxes = vec![b2(1, 0, 0, 4, 4), b2(2, 2, 2, 6, 6)];
        let ps = PlanarStructure::build(&boxes).unwrap();
        let mut cnt = QueryCounters::new();
        assert!(ps.query(&b2(0, 20, 20, 21, 21), &mut cnt).is_empty());
        let (nodes, owners) = ps.find_canonical_nodes(&b2(0, 20, 20, 21, 21), false, &mut cnt);
        assert!(nodes.is_empty() && owners.is_empty());
    }

    #[test]
    fn degenerate_point_query() {
        let boxes = vec![b2(1, 0, 0, 4, 4), b2(2, 2, 2, 6, 6), b2(3, 4, 4, 4, 4)];
        let ps = PlanarStructure::build(&boxes).unwrap();
        let mut cnt = QueryCounters::new();
        let got = ps.query(&b2(0, 3, 3, 3, 3), &mut cnt);
        assert_eq!(pairs_of(&got), BTreeSet::from([(1, 2)]));
        // A point query at the shared corner picks up the degenerate box.
        let got = ps.query(&b2(0, 4, 4, 4, 4), &mut cnt);
        assert_eq!(pairs_of(&got), BTreeSet::from([(1, 2), (1, 3), (2, 3)]));
    }

    #[test]
    fn differential_small_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for case in 0..400 {
            let n = rng.gen_range(1..=24);
            let range = if case % 3 == 0 { 10 } else { 24 };
            let boxes: Vec<BoxD> = (0..n)
                .map(|i| {
                    let x1 = rng.gen_range(0..=range);
                    let x2 = rng.gen_range(x1..=range);
                    let y1 = rng.gen_range(0..=range);
                    let y2 = rng.gen_range(y1..=range);
                    b2(i + 1, x1, y1, x2, y2)
                })
                .collect();
            let ps = PlanarStructure::build(&boxes).unwrap();
            let mut cnt = QueryCounters::new();
            for _ in 0..8 {
                let x1 = rng.gen_range(-2..=range + 2);
                let x2 = rng.gen_range(x1..=range + 2);
                let y1 = rng.gen_range(-2..=range + 2);
                let y2 = rng.gen_range(y1..=range + 2);
                let q = b2(0, x1, y1, x2, y2);
                let got = ps.query(&q, &mut cnt);
                let got_pairs = pairs_of(&got);
                assert_eq!(got_pairs.len(), got.len(), "duplicate pair in output");
                let want = oracle_pairs(&boxes, &q);
                assert_eq!(got_pairs, want, "case {case} q={q:?} boxes={boxes:?}");
            }
        }
    }
}

#[cfg(test)]
mod stress {
    use super::*;
    use crate::oracle::oracle_pairs;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn gen_box(rng: &mut ChaCha8Rng, id: u32, range: i64, degenerate: bool) -> BoxD {
        let mut dims = Vec::new();
        for _ in 0..2 {
            let a = rng.gen_range(0..=range);
            let b = if degenerate && rng.gen_bool(0.4) { a } else { rng.gen_range(a..=range) };
            dims.push((a, b));
        }
        BoxD::new(id, vec![dims[0].0, dims[1].0], vec![dims[0].1, dims[1].1])
    }

    #[test]
    fn differential_tie_heavy() {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        for case in 0..1500 {
            let n = rng.gen_range(1..=40);
            let range = *[4i64, 6, 9, 16, 32].choose(&mut rng).unwrap();
            let degenerate = case % 4 == 0;
            let boxes: Vec<BoxD> =
                (0..n).map(|i| gen_box(&mut rng, i + 1, range, degenerate)).collect();
            let ps = PlanarStructure::build(&boxes).unwrap();
            let mut cnt = QueryCounters::new();
            for _ in 0..6 {
                let q = gen_box(&mut rng, 0, range + 2, true);
                let got = ps.query(&q, &mut cnt);
                let set: BTreeSet<(u32, u32)> = got.iter().map(|r| (r.i, r.j)).collect();
                assert_eq!(set.len(), got.len(), "duplicates: case {case}");
                let want = oracle_pairs(&boxes, &q);
                assert_eq!(set, want, "case {case} q={q:?} boxes={boxes:?}");
            }
        }
    }
}
