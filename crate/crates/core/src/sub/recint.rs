//! Rectangle intersection reporting: a rectangle meets the query iff one of
//! its sides crosses it, one of its corners lies in it, or it contains the
//! query; the three cases are served by crossing structures on whole sides,
//! a corner range tree, and point enclosure at a query corner.

use crate::counters::QueryCounters;
use crate::geom::Scalar;
use crate::rangetree::RangeTreeNd;
use crate::sub::reccross::CrossingStructure;
use crate::sub::ptenc::PointEnclosure;
use crate::sub::Rect2;

#[derive(Debug)]
pub struct RecIntStructure {
    rects: Vec<Rect2>,
    v_sides: CrossingStructure,
    h_sides: CrossingStructure,
    corners: RangeTreeNd,
}

impl RecIntStructure {
    pub fn build(rects: &[Rect2]) -> Self {
        let mut v = Vec::with_capacity(rects.len() * 2);
        let mut h = Vec::with_capacity(rects.len() * 2);
        let mut corner_pts = Vec::with_capacity(rects.len() * 8);
        let mut corner_payloads = Vec::with_capacity(rects.len() * 4);
        for (i, r) in rects.iter().enumerate() {
            v.push((r.x1, r.y1, r.y2, i as u32));
            v.push((r.x2, r.y1, r.y2, i as u32));
            h.push((r.y1, r.x1, r.x2, i as u32));
            h.push((r.y2, r.x1, r.x2, i as u32));
            for (cx, cy) in [(r.x1, r.y1), (r.x2, r.y1), (r.x1, r.y2), (r.x2, r.y2)] {
                corner_pts.push(cx);
                corner_pts.push(cy);
                corner_payloads.push(i as u32);
            }
        }
        RecIntStructure {
            rects: rects.to_vec(),
            v_sides: CrossingStructure::build(v),
            h_sides: CrossingStructure::build(h),
            corners: RangeTreeNd::build(2, &corner_pts, Some(&corner_payloads)),
        }
    }

    /// Ids of rectangles intersecting the closed query box, via the shared
    /// point-enclosure structure for the containment case.
    pub fn report(
        &self,
        pe: &PointEnclosure,
        x1: Scalar,
        y1: Scalar,
        x2: Scalar,
        y2: Scalar,
        cnt: &mut QueryCounters,
    ) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .report_positions(pe, x1, y1, x2, y2, cnt)
            .iter()
            .map(|&p| self.rects[p as usize].id)
            .collect();
        out.sort_unstable();
        out
    }

    /// Same as `report` but yields positions into the build slice.
    pub fn report_positions(
        &self,
        pe: &PointEnclosure,
        x1: Scalar,
        y1: Scalar,
        x2: Scalar,
        y2: Scalar,
        cnt: &mut QueryCounters,
    ) -> Vec<u32> {
        let mut seen = vec![false; self.rects.len()];
        let mut out = Vec::new();
        let mut push = |pos: u32, out: &mut Vec<u32>, seen: &mut Vec<bool>| {
            if !seen[pos as usize] {
                seen[pos as usize] = true;
                out.push(pos);
            }
        };
        // Sides crossing the query.
        self.v_sides.report(x1, x2, y1, y2, cnt, &mut |p| push(p, &mut out, &mut seen));
        self.h_sides.report(y1, y2, x1, x2, cnt, &mut |p| push(p, &mut out, &mut seen));
        // Corners inside the query.
        self.corners.report(&[x1, y1], &[x2, y2], cnt, &mut |p| push(p, &mut out, &mut seen));
        // Query contained in a rectangle: enclosure at one corner, filtered
        // by full containment.
        for pos in pe.report_positions(x1, y1, cnt) {
            cnt.candidate();
            let r = &self.rects[pos as usize];
            if r.x1 <= x1 && x2 <= r.x2 && r.y1 <= y1 && y2 <= r.y2 {
                push(pos, &mut out, &mut seen);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_box_intersect;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn r2(id: u32, x1: i64, y1: i64, x2: i64, y2: i64) -> Rect2 {
        Rect2 { id, x1, y1, x2, y2 }
    }

    #[test]
    fn point_query_touching() {
        let rects = vec![r2(1, 0, 0, 4, 4), r2(2, 2, 2, 6, 6)];
        let pe = PointEnclosure::build(&rects);
        let ri = RecIntStructure::build(&rects);
        let mut cnt = QueryCounters::new();
        assert_eq!(ri.report(&pe, 3, 3, 3, 3, &mut cnt), vec![1, 2]);
        assert!(ri.report(&pe, 10, 10, 11, 11, &mut cnt).is_empty());
    }

    #[test]
    fn differential_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
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
            let ri = RecIntStructure::build(&rects);
            let mut cnt = QueryCounters::new();
            for _ in 0..40 {
                let x1 = rng.gen_range(-1..=13);
                let x2 = rng.gen_range(x1..=13);
                let y1 = rng.gen_range(-1..=13);
                let y2 = rng.gen_range(y1..=13);
                let got = ri.report(&pe, x1, y1, x2, y2, &mut cnt);
                let q = crate::geom::BoxD::new(0, vec![x1, y1], vec![x2, y2]);
                let want: Vec<u32> = oracle_box_intersect(&boxes, &q).into_iter().collect();
                assert_eq!(got, want);
            }
        }
    }
}
