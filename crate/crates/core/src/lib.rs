//! Dotted cobordism calculus, gl2 link homology, and cabled skein invariants
//! of 2-handlebodies.
//!
//! Layers, bottom up:
//! - [`arith`]: exact rational scalars and dense matrices.
//! - [`cob`]: flat tangles and thin dotted-cobordism morphisms in normal form.
//! - [`complex`]: chain complexes over the cobordism category, delooping,
//!   Gaussian elimination with retraction data, stacking, cones, telescopes.
//! - [`khr2`]: sliced link diagrams, the gl2 bracket by scanning, closed
//!   homology, PD input/output and an independent cube-style oracle.
//! - [`cabling`]: belt cables, annulus creation/capping movies, swaps and
//!   symmetrizers, directed systems and colimits for 2-handlebody invariants.
//! - [`projector`]: finite torus-braid approximations of projectors and the
//!   associated splitting checks.
//! - [`io`]: reports, caching, and the command-line entry points.

pub mod arith;
pub mod cob;
pub mod complex;
pub mod khr2;
pub mod cabling;
pub mod projector;
pub mod io;
