//! Auxiliary query structures the planar algorithm is assembled from:
//! point enclosure with precomputed endpoint entries, ordered segment
//! intersection walks, stretch/side crossing, endpoint range reporting, and
//! their combination for rectangle intersection.

mod ptenc;
mod recenc;
mod reccross;
mod recint;
mod segint;
mod stab;

pub use ptenc::{EndpointEntries, PointEnclosure};
pub use recenc::EndpointRangeStructure;
pub use reccross::CrossingStructure;
pub use recint::RecIntStructure;
pub use segint::{SegIntStructure, WalkHit};
pub use stab::{StabReporter, StabSeg};

use crate::geom::{BoxD, Scalar};

/// Planar rectangle in the flat form the substructures work with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect2 {
    pub id: u32,
    pub x1: Scalar,
    pub y1: Scalar,
    pub x2: Scalar,
    pub y2: Scalar,
}

impl Rect2 {
    pub fn from_box(b: &BoxD) -> Self {
        assert_eq!(b.dim(), 2, "Rect2 is planar");
        Rect2 { id: b.id, x1: b.lo[0], y1: b.lo[1], x2: b.hi[0], y2: b.hi[1] }
    }

    /// Mirror across the main diagonal (swap axes), keeping the id.
    pub fn swapped(&self) -> Self {
        Rect2 { id: self.id, x1: self.y1, y1: self.x1, x2: self.y2, y2: self.x2 }
    }

    pub fn to_box(&self) -> BoxD {
        BoxD::new(self.id, vec![self.x1, self.y1], vec![self.x2, self.y2])
    }

    pub fn contains_point(&self, x: Scalar, y: Scalar) -> bool {
        self.x1 <= x && x <= self.x2 && self.y1 <= y && y <= self.y2
    }

    pub fn intersects(&self, o: &Rect2) -> bool {
        self.x1 <= o.x2 && o.x1 <= self.x2 && self.y1 <= o.y2 && o.y1 <= self.y2
    }

    pub fn contains_rect(&self, o: &Rect2) -> bool {
        self.x1 <= o.x1 && o.x2 <= self.x2 && self.y1 <= o.y1 && o.y2 <= self.y2
    }
}
