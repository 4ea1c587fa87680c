//! Finite approximations to the symmetric projector: truncated full-twist
//! complexes, their duals, and the cone complement used for the two-strand
//! belt tail.
//!
//! A truncation is the simplified bracket of an `m`-fold full twist.  Its
//! identity object sits alone at bidegree `(0, 0)`; everything else lives in
//! negative homological degree and is pushed further out as `m` grows, so
//! closure homology in a fixed window stabilises.  The certificate for a
//! window is agreement with the next-shallower truncation.

pub mod checks;

use std::collections::BTreeMap;

use crate::complex::{close, cone, simplify, ChainMap, Complex, Obj};
use crate::complex::chain::{add_entry, Diff};
use crate::cob::{Cob, FlatTangle};
use crate::khr2::{bracket_tangle, braid, GradedDims};

/// Word for the `m`-fold full twist on `n` strands: `(s_1 .. s_{n-1})^{n m}`.
pub fn full_twist_word(n: usize, m: usize) -> Vec<i32> {
    let round: Vec<i32> = (1..n as i32).collect();
    round.iter().copied().cycle().take(round.len() * n * m).collect()
}

/// Simplified bracket of the `m`-fold full twist on `n` strands.
pub struct TruncProjector {
    pub n: usize,
    pub m: usize,
    pub complex: Complex,
    /// Closure homology at `h > h_cert` agrees with the `m - 1` truncation
    /// (`i32::MIN` when the two tables agree everywhere).
    pub h_cert: i32,
}

/// Largest floor `f` such that two graded tables agree at every bidegree with
/// `h > f`; `i32::MIN` when they agree everywhere.
pub fn agreement_floor(a: &GradedDims, b: &GradedDims) -> i32 {
    let mut f = i32::MIN;
    for (k, v) in a {
        if b.get(k).copied().unwrap_or(0) != *v {
            f = f.max(k.0);
        }
    }
    for (k, v) in b {
        if a.get(k).copied().unwrap_or(0) != *v {
            f = f.max(k.0);
        }
    }
    f
}

/// Closure homology table of an `n`-strand tangle complex.
pub fn closed_table(c: &Complex, n: usize) -> GradedDims {
    let cl = close(c, n, false);
    cl.red.small.graded_dims()
}

fn twist_bracket(n: usize, m: usize) -> Complex {
    bracket_tangle(&braid(n, &full_twist_word(n, m)))
}

/// Truncated projector on `n` strands at depth `m`, with its certified
/// window floor.  Guarded to the range exercised by the checks.
pub fn truncated_projector(n: usize, m: usize) -> TruncProjector {
    assert!(n >= 1 && m >= 1, "truncation needs n >= 1, m >= 1");
    assert!(n <= 3 && m <= 4, "truncation out of supported range");
    let complex = twist_bracket(n, m);
    let prev = twist_bracket(n, m - 1);
    let h_cert = agreement_floor(&closed_table(&complex, n), &closed_table(&prev, n));
    TruncProjector { n, m, complex, h_cert }
}

/// Contravariant dual: flats mirrored top-to-bottom, both gradings negated,
/// differentials transposed.
pub fn dualize(c: &Complex) -> Complex {
    let kk = c.n_cols();
    if kk == 0 {
        return c.clone();
    }
    let h_max = c.h_min + kk as i32 - 1;
    let cols: Vec<Vec<Obj>> = c
        .cols
        .iter()
        .rev()
        .map(|col| col.iter().map(|o| Obj { flat: o.flat.flip(), q: -o.q }).collect())
        .collect();
    let mut d: Vec<Diff> = vec![BTreeMap::new(); kk.saturating_sub(1)];
    for (k, layer) in c.d.iter().enumerate() {
        for (&(s, t), e) in layer {
            add_entry(&mut d[kk - 2 - k], (t, s), e.transpose());
        }
    }
    Complex { h_min: -h_max, cols, d }
}

/// Index of the unique identity object at bidegree `(0, 0)`, if the complex
/// has exactly one identity object overall and it sits there.
pub fn identity_slot(c: &Complex, n: usize) -> Option<usize> {
    let id = FlatTangle::identity(n);
    let mut found = None;
    for (k, col) in c.cols.iter().enumerate() {
        for (j, o) in col.iter().enumerate() {
            if o.flat == id {
                if c.h_min + k as i32 != 0 || o.q != 0 || found.is_some() {
                    return None;
                }
                found = Some(j);
            }
        }
    }
    found
}

/// Complement of the dual truncation on two strands: the simplified cone on
/// the counit `dual(P) -> 1`.  The identity pair cancels and every surviving
/// object is a turnback on the line `(j, -2j - 1)`.
pub fn rozansky_projector_trunc(m: usize) -> Complex {
    assert!(m >= 1 && m <= 3, "complement truncation out of supported range");
    let p = truncated_projector(2, m);
    let dual = dualize(&p.complex);
    let slot = identity_slot(&dual, 2).expect("dual truncation has a unique identity at (0, 0)");
    let one = Complex::single(FlatTangle::identity(2), 0, 0);
    let mut f = ChainMap::zero(0);
    f.add_entry((0, slot, 0), Cob::identity(&FlatTangle::identity(2)));
    assert!(f.is_chain_map(&dual, &one), "counit off the dual truncation");
    let c = simplify(&cone(&f, &dual, &one), false).small;
    let tau = FlatTangle::new(2, 2, vec![1, 0, 3, 2], 0).unwrap();
    assert!(
        c.cols.iter().flatten().all(|o| o.flat == tau),
        "complement survivors are turnbacks"
    );
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::khr2::diagram::closed_tangle;
    use crate::khr2::{braid, khr2_closed, Slice, Sliced};

    fn table(v: &[(i32, i32, usize)]) -> GradedDims {
        v.iter().map(|&(h, q, d)| ((h, q), d)).collect()
    }

    #[test]
    fn dualize_is_an_involution() {
        for word in [vec![1], vec![-1], vec![1, 1], vec![1, -2, 1]] {
            let n = 3;
            let c = bracket_tangle(&braid(n, &word));
            let dd = dualize(&dualize(&c));
            assert_eq!(dd.h_min, c.h_min);
            assert_eq!(dd.shape(), c.shape());
            for (k, col) in c.cols.iter().enumerate() {
                for (j, o) in col.iter().enumerate() {
                    assert_eq!(dd.cols[k][j].flat, o.flat);
                    assert_eq!(dd.cols[k][j].q, o.q);
                }
            }
            for (k, layer) in c.d.iter().enumerate() {
                assert_eq!(&dd.d[k], layer);
            }
        }
    }

    #[test]
    fn dualize_swaps_crossing_signs() {
        // Dual of the positive-crossing bracket is the negative-crossing
        // bracket in its invariant normalization (one negative crossing).
        let pos = bracket_tangle(&braid(2, &[1]));
        let neg = bracket_tangle(&braid(2, &[-1])).shift_h(1).shift_q(-1);
        let d = dualize(&pos);
        assert_eq!(d.h_min, neg.h_min);
        assert_eq!(d.shape(), neg.shape());
        for (k, col) in neg.cols.iter().enumerate() {
            for (j, o) in col.iter().enumerate() {
                assert_eq!(d.cols[k][j].flat, o.flat);
                assert_eq!(d.cols[k][j].q, o.q);
            }
        }
        assert!(d.check_d2());
    }

    #[test]
    fn dualize_negates_closure_tables() {
        let c = bracket_tangle(&braid(2, &[1, 1, 1]));
        let t = closed_table(&c, 2);
        let td = closed_table(&dualize(&c), 2);
        let flipped: GradedDims = t.iter().map(|(&(h, q), &d)| ((-h, -q), d)).collect();
        assert_eq!(td, flipped);
    }

    #[test]
    fn one_strand_truncation_is_the_identity() {
        for m in 1..=3 {
            let p = truncated_projector(1, m);
            assert_eq!(p.complex.shape(), vec![1]);
            assert_eq!(p.h_cert, i32::MIN);
            assert_eq!(closed_table(&p.complex, 1), table(&[(0, 1, 1), (0, -1, 1)]));
        }
    }

    #[test]
    fn two_strand_truncations() {
        // Objects: identity at (0, 0), one turnback at (-j, 2j - 1) for
        // j = 1 .. 2m; deeper truncations only extend the tail.
        for m in 1..=3 {
            let p = truncated_projector(2, m);
            assert_eq!(identity_slot(&p.complex, 2), Some(0));
            let mut dims: Vec<(i32, i32)> = p
                .complex
                .cols
                .iter()
                .enumerate()
                .flat_map(|(k, col)| {
                    let h = p.complex.h_min + k as i32;
                    col.iter().map(move |o| (h, o.q))
                })
                .collect();
            dims.sort();
            let mut want: Vec<(i32, i32)> =
                (1..=2 * m as i32).map(|j| (-j, 2 * j - 1)).collect();
            want.push((0, 0));
            want.sort();
            assert_eq!(dims, want);
        }
        let p2 = truncated_projector(2, 2);
        let p3 = truncated_projector(2, 3);
        let t2 = closed_table(&p2.complex, 2);
        let t3 = closed_table(&p3.complex, 2);
        assert!(p3.h_cert < 0);
        for (&(h, q), &d) in &t3 {
            if h > p3.h_cert {
                assert_eq!(t2.get(&(h, q)).copied().unwrap_or(0), d, "({h}, {q})");
            }
        }
    }

    #[test]
    fn three_strand_truncation_normalises() {
        let p = truncated_projector(3, 1);
        assert_eq!(identity_slot(&p.complex, 3), Some(0));
        assert!(p.complex.h_min + p.complex.n_cols() as i32 - 1 == 0);
    }

    #[test]
    fn complement_objects_sit_on_the_predicted_line() {
        for m in 1..=2 {
            let c = rozansky_projector_trunc(m);
            let mut got: Vec<(i32, i32)> = c
                .cols
                .iter()
                .enumerate()
                .flat_map(|(k, col)| {
                    let h = c.h_min + k as i32;
                    col.iter().map(move |o| (h, o.q))
                })
                .collect();
            got.sort();
            let want: Vec<(i32, i32)> =
                (0..2 * m as i32).map(|j| (j, -2 * j - 1)).collect();
            assert_eq!(got, want);
            assert!(c.check_d2());
        }
    }

    #[test]
    fn turnback_trace_closes_to_one_circle() {
        let t = closed_tangle(&Sliced::new(2, vec![Slice::Cap(0), Slice::Cup(0)]).unwrap());
        assert_eq!(khr2_closed(&t, 0), table(&[(0, 1, 1), (0, -1, 1)]));
    }
}
