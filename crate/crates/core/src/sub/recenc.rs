//! Orthogonal range reporting over stretch endpoints.

use crate::counters::QueryCounters;
use crate::geom::{Scalar, Stretch};
use crate::rangetree::RangeTreeNd;

/// Endpoints of all stretches in a 2D range tree; payloads identify
/// (stretch, end). Coincident endpoints of different stretches are distinct
/// entries and are reported per stretch.
#[derive(Debug)]
pub struct EndpointRangeStructure {
    tree: RangeTreeNd,
    points: Vec<(Scalar, Scalar)>,
}

impl EndpointRangeStructure {
    pub fn build(stretches: &[Stretch]) -> Self {
        let mut flat = Vec::with_capacity(stretches.len() * 4);
        let mut points = Vec::with_capacity(stretches.len() * 2);
        for s in stretches {
            for (x, y) in s.endpoints() {
                flat.push(x);
                flat.push(y);
                points.push((x, y));
            }
        }
        EndpointRangeStructure { tree: RangeTreeNd::build(2, &flat, None), points }
    }

    /// Endpoint indices (stretch * 2 + end) inside the closed query box.
    pub fn report(
        &self,
        x1: Scalar,
        y1: Scalar,
        x2: Scalar,
        y2: Scalar,
        cnt: &mut QueryCounters,
    ) -> Vec<u32> {
        let mut out = Vec::new();
        self.tree.report(&[x1, y1], &[x2, y2], cnt, &mut |p| out.push(p));
        out.sort_unstable();
        out
    }

    pub fn endpoint(&self, idx: u32) -> (Scalar, Scalar) {
        self.points[idx as usize]
    }

    pub fn stored_cells(&self) -> u64 {
        self.tree.stored_cells()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::BoxD;
    use crate::stretch::compute_stretches;

    #[test]
    fn two_squares_coincident_endpoints() {
        let boxes =
            [BoxD::new(1, vec![0, 0], vec![4, 4]), BoxD::new(2, vec![2, 2], vec![6, 6])];
        let stretches: Vec<Stretch> = compute_stretches(&boxes).into_iter().flatten().collect();
        let re = EndpointRangeStructure::build(&stretches);
        let mut cnt = QueryCounters::new();
        let got = re.report(1, 1, 3, 3, &mut cnt);
        // (2,2) is an endpoint of box 2's bottom-side and left-side
        // stretches; both are reported.
        assert_eq!(got.len(), 2);
        for idx in &got {
            assert_eq!(re.endpoint(*idx), (2, 2));
            assert_eq!(stretches[*idx as usize / 2].owner, 2);
        }
        // Full range covers every endpoint; empty space covers none.
        assert_eq!(re.report(-10, -10, 10, 10, &mut cnt).len(), stretches.len() * 2);
        assert!(re.report(7, 7, 9, 9, &mut cnt).is_empty());
    }
}
