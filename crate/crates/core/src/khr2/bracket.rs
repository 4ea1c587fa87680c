//! The bracket of a sliced diagram by scanning: stack one slice at a time
//! and simplify after every step.

use std::collections::BTreeMap;

use crate::cob::{Cob, FlatTangle};
use crate::complex::{simplify, stack, Complex, Obj};
use crate::khr2::diagram::{orient, CrossKind, Slice, Sliced};
use crate::khr2::pd::Pd;

pub type GradedDims = BTreeMap<(i32, i32), usize>;

fn pass_pairs(w: usize, skip: Option<(usize, usize)>) -> Vec<(usize, usize)> {
    (0..w)
        .filter(|i| skip.map_or(true, |(a, b)| *i != a && *i != b))
        .map(|i| (i, w + i))
        .collect()
}

/// Identity flat of width `w` with the strands at (p, p + 1) turned back.
pub fn tau_at(w: usize, p: usize) -> FlatTangle {
    let mut pairs = pass_pairs(w, Some((p, p + 1)));
    pairs.push((p, p + 1));
    pairs.push((w + p, w + p + 1));
    FlatTangle::from_pairs(w, w, &pairs, 0).unwrap()
}

/// Cup slice as a flat (w, w + 2)-tangle.
pub fn cup_at(w: usize, p: usize) -> FlatTangle {
    let mut pairs: Vec<(usize, usize)> = (0..w)
        .map(|i| (i, w + if i < p { i } else { i + 2 }))
        .collect();
    pairs.push((w + p, w + p + 1));
    FlatTangle::from_pairs(w, w + 2, &pairs, 0).unwrap()
}

/// Cap slice as a flat (w, w - 2)-tangle.
pub fn cap_at(w: usize, p: usize) -> FlatTangle {
    let mut pairs: Vec<(usize, usize)> = (0..w)
        .filter(|&i| i != p && i != p + 1)
        .map(|i| (i, w + if i < p { i } else { i - 2 }))
        .collect();
    pairs.push((p, p + 1));
    FlatTangle::from_pairs(w, w - 2, &pairs, 0).unwrap()
}

/// The local complex of one slice at entry width `w`.
///
/// A crossing contributes a two-object complex with its turnback-free
/// resolution in homological degree 0 and the other one in degree -1 with an
/// extra internal grading shift; the differential is the saddle between them.
pub fn slice_complex(s: &Slice, w: usize) -> Complex {
    match s {
        Slice::Cup(p) => Complex::single(cup_at(w, *p), 0, 0),
        Slice::Cap(p) => Complex::single(cap_at(w, *p), 0, 0),
        Slice::X(p, kind) => {
            let id = FlatTangle::identity(w);
            let tau = tau_at(w, *p);
            let (b, a) = match kind {
                CrossKind::LOver => (tau, id),
                CrossKind::ROver => (id, tau),
            };
            let d0: BTreeMap<(usize, usize), Cob> =
                [((0, 0), Cob::saddle_arcs(&b, &a))].into();
            Complex {
                h_min: -1,
                cols: vec![
                    vec![Obj { flat: b, q: 1 }],
                    vec![Obj { flat: a, q: 0 }],
                ],
                d: vec![d0],
            }
        }
    }
}

/// Scan a sliced tangle diagram into a simplified complex (no global shift).
pub fn bracket_tangle(d: &Sliced) -> Complex {
    let mut c = Complex::single(FlatTangle::identity(d.width0), 0, 0);
    let mut w = d.width0;
    for s in &d.slices {
        c = stack(&c, &slice_complex(s, w));
        w = s.width_out(w);
        c = simplify(&c, false).small;
    }
    c
}

/// Homology of a closed diagram with `n_neg` negative crossings: the scanned
/// complex always reduces to zero differential, so the graded dimensions of
/// the shifted result are the answer.
pub fn khr2_closed(d: &Sliced, n_neg: usize) -> GradedDims {
    assert!(d.is_closed());
    let c = bracket_tangle(d).shift_h(n_neg as i32).shift_q(-(n_neg as i32));
    assert!(c.has_zero_d(), "closed scan did not fully reduce");
    c.graded_dims()
}

/// Homology of an oriented closed diagram; `flips` selects component
/// orientations as in [`orient`].
pub fn khr2_oriented(d: &Sliced, flips: &[bool]) -> GradedDims {
    let o = orient(d, flips);
    khr2_closed(d, o.n_minus())
}

/// Homology from planar-diagram input.
pub fn khr2_pd(pd: &Pd) -> GradedDims {
    let n_neg = pd.signs().iter().filter(|&&s| s < 0).count();
    khr2_closed(&pd.to_sliced(), n_neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::khr2::diagram::{belt, closed_braid, closed_tangle};

    fn dims(v: &[(i32, i32, usize)]) -> GradedDims {
        v.iter().map(|&(h, q, n)| ((h, q), n)).collect()
    }

    #[test]
    fn unknot_and_empty() {
        let unknot = Sliced::new(0, vec![Slice::Cup(0), Slice::Cap(0)]).unwrap();
        assert_eq!(khr2_closed(&unknot, 0), dims(&[(0, 1, 1), (0, -1, 1)]));
        let empty = Sliced::new(0, vec![]).unwrap();
        assert_eq!(khr2_closed(&empty, 0), dims(&[(0, 0, 1)]));
    }

    #[test]
    fn reidemeister_one_kinks() {
        // Closure of a single positive generator: unknot, one extra positive
        // crossing shifts q down by one.
        let pos = closed_braid(2, &[1]);
        assert_eq!(khr2_oriented(&pos, &[]), dims(&[(0, 0, 1), (0, -2, 1)]));
        let neg = closed_braid(2, &[-1]);
        assert_eq!(khr2_oriented(&neg, &[]), dims(&[(0, 2, 1), (0, 0, 1)]));
    }

    #[test]
    fn trefoils() {
        let right = closed_braid(2, &[1, 1, 1]);
        assert_eq!(
            khr2_oriented(&right, &[]),
            dims(&[(0, -2, 1), (0, 0, 1), (-2, 2, 1), (-3, 6, 1)])
        );
        let left = closed_braid(2, &[-1, -1, -1]);
        assert_eq!(
            khr2_oriented(&left, &[]),
            dims(&[(0, 2, 1), (0, 0, 1), (2, -2, 1), (3, -6, 1)])
        );
    }

    #[test]
    fn hopf_links_both_orientations() {
        let hopf = closed_braid(2, &[1, 1]);
        // Parallel strands: both crossings positive.
        assert_eq!(
            khr2_oriented(&hopf, &[]),
            dims(&[(0, -2, 1), (0, 0, 1), (-2, 2, 1), (-2, 4, 1)])
        );
        // Reversing one component makes both crossings negative.
        assert_eq!(
            khr2_oriented(&hopf, &[false, true]),
            dims(&[(2, -4, 1), (2, -2, 1), (0, 0, 1), (0, 2, 1)])
        );
    }

    #[test]
    fn figure_eight() {
        let fig8 = closed_braid(3, &[1, -2, 1, -2]);
        assert_eq!(
            khr2_oriented(&fig8, &[]),
            dims(&[(-2, 5, 1), (-1, 1, 1), (0, 1, 1), (0, -1, 1), (1, -1, 1), (2, -5, 1)])
        );
    }

    #[test]
    fn belt_closure_is_hopf() {
        // One belt around one strand, closed off, is a Hopf link; with the
        // belt clasping the strand the total homology has dimension four.
        let d = closed_tangle(&belt(1, 1));
        let o = orient(&d, &[]);
        assert_eq!(o.n_components, 2);
        assert_eq!(o.linking(0, 1).abs(), 1);
        let total: usize = khr2_oriented(&d, &[]).values().sum();
        assert_eq!(total, 4);
    }
}
