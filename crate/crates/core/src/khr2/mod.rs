//! Link homology: sliced diagrams, the scanning bracket, planar-diagram
//! input and an independent cube-style oracle used only in tests.

pub mod bracket;
pub mod diagram;
pub mod oracle;
pub mod pd;

pub use bracket::{bracket_tangle, khr2_closed, khr2_pd, GradedDims};
pub use diagram::{belt, belt_block, braid, orient, CrossKind, Slice, Sliced};
pub use pd::Pd;
