//! Closing an (n, n)-tangle complex into a closed diagram complex.
//!
//! The closure places the identity tangle to the right and joins everything
//! with nested cups below and caps above, then simplifies.  Because the extra
//! factors are single objects in degree zero, the big closed complex reuses
//! the tangle complex indexing on the nose; only the final simplification
//! reindexes, and that is captured by the stored reduction.

use super::chain::{hstack, stack, ChainMap, Complex};
use super::simplify::{simplify, transfer, Reduction};
use crate::cob::tangle::FlatTangle;
use crate::cob::Cob;

/// Nested cups `0 -> 2n`, pairing top `i` with top `2n - 1 - i`.
pub fn cups_flat(n: usize) -> FlatTangle {
    let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, 2 * n - 1 - i)).collect();
    FlatTangle::from_pairs(0, 2 * n, &pairs, 0).unwrap()
}

/// Nested caps `2n -> 0`.
pub fn caps_flat(n: usize) -> FlatTangle {
    let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, 2 * n - 1 - i)).collect();
    FlatTangle::from_pairs(2 * n, 0, &pairs, 0).unwrap()
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub n: usize,
    pub red: Reduction,
}

fn closed_big(c: &Complex, n: usize) -> Complex {
    let idn = Complex::single(FlatTangle::identity(n), 0, 0);
    let t = hstack(c, &idn);
    let t = stack(&Complex::single(cups_flat(n), 0, 0), &t);
    stack(&t, &Complex::single(caps_flat(n), 0, 0))
}

/// Close an (n, n)-tangle complex.  The small model always has zero
/// differential.
pub fn close(c: &Complex, n: usize, track: bool) -> Closure {
    let red = simplify(&closed_big(c, n), track);
    assert!(red.small.has_zero_d(), "closed complex did not reach zero differential");
    Closure { n, red }
}

/// Push a tangle-level chain map through the closure of its source and target.
pub fn close_map(m: &ChainMap, src: &Closure, tgt: &Closure) -> ChainMap {
    assert_eq!(src.n, tgt.n, "closures of different widths");
    let n = src.n;
    let idn = Cob::identity(&FlatTangle::identity(n));
    let cup = Cob::identity(&cups_flat(n));
    let cap = Cob::identity(&caps_flat(n));
    let mut lifted = ChainMap::zero(m.dq);
    for ((h, i, j), e) in &m.entries {
        lifted.add_entry((*h, *i, *j), cup.vstack(&e.hcompose(&idn)).vstack(&cap));
    }
    transfer(&lifted, &src.red, &tgt.red)
}
