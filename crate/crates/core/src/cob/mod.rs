//! Flat tangles and dotted cobordisms in thin normal form.

pub mod morphism;
pub mod tangle;

pub use morphism::Cob;
pub use tangle::{FlatTangle, TangleError};
