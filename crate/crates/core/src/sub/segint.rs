//! Ordered segment-intersection walks along stretches.
//!
//! Rectangle sides are swept (horizontal sides along x, vertical along y)
//! into partially persistent lists sorted by the orthogonal coordinate, one
//! ascending and one descending per orientation. Each stretch endpoint gets
//! a precomputed entry into the list it walks, so a walk costs O(1) startup
//! and O(1) per reported side.

use crate::counters::QueryCounters;
use crate::geom::{BoxD, Scalar, Stretch};
use crate::plist::{Entry, PList, PListBuilder};
use crate::sub::Rect2;

/// One reported crossing: position along the stretch and the owning side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkHit {
    /// Coordinate along the stretch where the side is crossed.
    pub pos: Scalar,
    pub owner: u32,
    /// Position of the owner in the build slice.
    pub rect_pos: u32,
    /// True for the side at the owner's upper coordinate (top/right).
    pub upper: bool,
}

#[derive(Debug)]
pub struct SegIntStructure {
    h_up: PList,
    h_dn: PList,
    v_up: PList,
    v_dn: PList,
    /// Per stretch endpoint (2 per stretch): entry into the walked list.
    entries: Vec<Entry>,
    stretches: Vec<Stretch>,
    /// uid -> rect position, uid = rect_pos * 2 + upper_bit.
    rect_ids: Vec<u32>,
}

impl SegIntStructure {
    pub fn build(rects: &[Rect2], stretches: &[Stretch]) -> Self {
        let rect_ids: Vec<u32> = rects.iter().map(|r| r.id).collect();
        let mut entries = vec![Entry::EMPTY; stretches.len() * 2];

        // Horizontal sides swept along x, keyed by y: serves vertical stretches.
        let (h_up, h_dn) = sweep_orientation(
            rects,
            stretches,
            |r| [(r.y1, r.x1, r.x2, false), (r.y2, r.x1, r.x2, true)],
            |s| s.is_vertical(),
            &mut entries,
        );
        // Vertical sides swept along y, keyed by x: serves horizontal stretches.
        let (v_up, v_dn) = sweep_orientation(
            rects,
            stretches,
            |r| [(r.x1, r.y1, r.y2, false), (r.x2, r.y1, r.y2, true)],
            |s| !s.is_vertical(),
            &mut entries,
        );

        SegIntStructure { h_up, h_dn, v_up, v_dn, entries, stretches: stretches.to_vec(), rect_ids }
    }

    /// Sides of rectangles other than the stretch owner crossed by
    /// `stretch ∩ q`, ordered from the chosen endpoint. The endpoint must lie
    /// in `q`.
    pub fn walk(&self, stretch: usize, from_end: usize, q: &BoxD, cnt: &mut QueryCounters) -> Vec<WalkHit> {
        assert_eq!(q.dim(), 2);
        assert!(from_end < 2, "endpoint selector must be 0 (low) or 1 (high)");
        let s = &self.stretches[stretch];
        let (ex, ey) = {
            let e = s.endpoints()[from_end];
            (e.0, e.1)
        };
        assert!(
            q.contains_point(&[ex, ey]),
            "segint walk must start at an endpoint inside the query"
        );
        let (qlo, qhi) = if s.is_vertical() { (q.lo[1], q.hi[1]) } else { (q.lo[0], q.hi[0]) };
        let entry = self.entries[stretch * 2 + from_end];
        let list = match (s.is_vertical(), from_end) {
            (true, 0) => &self.h_up,
            (true, _) => &self.h_dn,
            (false, 0) => &self.v_up,
            (false, _) => &self.v_dn,
        };
        // Clip to the stretch and the query; keys in the descending lists are
        // negated so both directions read as ascending keys.
        let limit = if from_end == 0 { s.hi.min(qhi) } else { -(s.lo.max(qlo)) };
        let mut out = Vec::new();
        for (key, uid) in list.iter_from(entry) {
            if key > limit {
                break;
            }
            cnt.step();
            let pos = if from_end == 0 { key } else { -key };
            let rpos = (uid >> 1) as usize;
            let owner = self.rect_ids[rpos];
            if owner == s.owner {
                continue; // the stretch lies on this rectangle's own boundary
            }
            out.push(WalkHit { pos, owner, rect_pos: rpos as u32, upper: uid & 1 == 1 });
        }
        out
    }

    pub fn stretches(&self) -> &[Stretch] {
        &self.stretches
    }
}

/// Sweep one side orientation into ascending/descending persistent lists and
/// record entries for the stretch endpoints that walk them.
fn sweep_orientation(
    rects: &[Rect2],
    stretches: &[Stretch],
    sides_of: impl Fn(&Rect2) -> [(Scalar, Scalar, Scalar, bool); 2],
    walks_this: impl Fn(&Stretch) -> bool,
    entries: &mut [Entry],
) -> (PList, PList) {
    #[derive(Debug)]
    enum Ev {
        Insert(Scalar, u64),
        Remove(Scalar, u64),
        /// (stretch, end, key): snapshot an entry at the sweep position.
        Snap(usize, usize, Scalar),
    }
    // Sweep order: (pos, class) with inserts < snapshots < removes.
    let mut evs: Vec<(Scalar, u8, usize, Ev)> = Vec::new();
    for (ri, r) in rects.iter().enumerate() {
        for (key, from, to, upper) in sides_of(r) {
            let uid = (ri as u64) << 1 | upper as u64;
            evs.push((from, 0, evs.len(), Ev::Insert(key, uid)));
            evs.push((to, 2, evs.len(), Ev::Remove(key, uid)));
        }
    }
    for (si, s) in stretches.iter().enumerate() {
        if !walks_this(s) {
            continue;
        }
        // The endpoint's position along the sweep axis is the stretch's
        // fixed coordinate; the key is its position along the stretch.
        evs.push((s.fixed, 1, evs.len(), Ev::Snap(si, 0, s.lo)));
        evs.push((s.fixed, 1, evs.len(), Ev::Snap(si, 1, s.hi)));
    }
    evs.sort_by_key(|&(pos, class, seq, _)| (pos, class, seq));

    let mut up = PListBuilder::new();
    let mut dn = PListBuilder::new();
    for (_, _, _, ev) in evs {
        match ev {
            Ev::Insert(key, uid) => {
                up.insert(key, uid);
                dn.insert(-key, uid);
            }
            Ev::Remove(key, uid) => {
                up.remove(key, uid);
                dn.remove(-key, uid);
            }
            Ev::Snap(si, end, key) => {
                entries[si * 2 + end] = if end == 0 {
                    up.snapshot_at(key, 0)
                } else {
                    dn.snapshot_at(-key, 0)
                };
            }
        }
    }
    (up.finish(), dn.finish())
}
