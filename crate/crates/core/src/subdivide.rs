//! Constructive subdivision pipeline: split any closed surface into two
//! regions of near-equal area by a short curve.

mod basis;
mod cutting;
mod pipeline;
mod shelling;
mod splitting;

pub use basis::{homology_basis, HomologyBasis};
pub use cutting::{cut_to_disc, CutComplex};
pub use pipeline::{subdivide_half, SubdivisionResult};
pub use shelling::shelling_order;
pub use splitting::{split_disc, SplitOutcome};
