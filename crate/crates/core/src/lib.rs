//! Pair intersection searching over axis-parallel boxes.
//!
//! Preprocesses a set of boxes in R^d so that for an axis-parallel query box
//! Q, every pair of input boxes whose intersection meets Q is reported in
//! output-sensitive time. The planar structure answers queries through five
//! configuration routines over a pair of segment trees; higher dimensions
//! recurse through a grid of slabs down to the planar base. A brute-force
//! oracle and instrumented counters back the differential test suites.

pub mod counters;
pub mod gen;
pub mod geom;
pub mod highdim;
pub mod io;
pub mod oracle;
pub mod planar;
pub mod plist;
pub mod pst;
pub mod rangetree;
pub mod stretch;
pub mod sub;

pub use counters::QueryCounters;
pub use geom::{
    config_membership, dedup_tag, intersect_boxes, triple_intersects, BoxD, ConfigTag, PairReport,
    Scalar, Side, Stretch,
};
pub use stretch::compute_stretches;

/// Build/input validation failures surfaced through the library API.
#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error("delta must satisfy 1/d <= delta < 1 (got {0})")]
    DeltaOutOfRange(f64),
    #[error("dimension must be at least 2 (got {0})")]
    BadDimension(usize),
    #[error("box {id}: lo > hi on axis {axis}")]
    BadBox { id: u32, axis: usize },
    #[error("duplicate box id {0}")]
    DuplicateId(u32),
    #[error("box {id}: expected dimension {expect}, got {got}")]
    MixedDimension { id: u32, expect: usize, got: usize },
    #[error("coordinate magnitude over 2^40 on box {0}")]
    CoordinateTooLarge(u32),
}

/// Validate a box set as library input: uniform dimension, lo <= hi,
/// unique ids, bounded coordinates.
pub fn validate_boxes(boxes: &[geom::BoxD], dim: usize) -> Result<(), BuildError> {
    const LIMIT: i64 = 1 << 40;
    let mut seen = std::collections::HashSet::new();
    for b in boxes {
        if b.dim() != dim {
            return Err(BuildError::MixedDimension { id: b.id, expect: dim, got: b.dim() });
        }
        if !seen.insert(b.id) {
            return Err(BuildError::DuplicateId(b.id));
        }
        for t in 0..dim {
            if b.lo[t] > b.hi[t] {
                return Err(BuildError::BadBox { id: b.id, axis: t });
            }
            if b.lo[t].abs() > LIMIT || b.hi[t].abs() > LIMIT {
                return Err(BuildError::CoordinateTooLarge(b.id));
            }
        }
    }
    Ok(())
}
