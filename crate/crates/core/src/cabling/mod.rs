//! Cables, annulus movies, and directed systems.

pub mod checks;
pub mod lasagna;
pub mod movie;
pub mod scripts;
pub mod sym;
pub mod system;

pub use movie::{run_movie, Event, EventKind, MovieOpts, MovieResult, Scanner};
pub use scripts::{belt_pair_movie, cable_pair_movie, node_slices};
