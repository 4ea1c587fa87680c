//! Chain complexes over the cobordism category: stacking, delooping,
//! Gaussian elimination with retractions, cones, and closures.

pub mod chain;
pub mod closure;
pub mod simplify;

pub use chain::{cone, hstack, stack, ChainMap, Complex, Obj};
pub use closure::{close, close_map, caps_flat, cups_flat, Closure};
pub use simplify::{simplify, transfer, Reduction};
