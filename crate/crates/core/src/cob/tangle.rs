//! Flat (crossingless) tangles in a square.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TangleError {
    #[error("pairing length {0} does not match endpoint count {1}")]
    BadLength(usize, usize),
    #[error("pairing is not a fixed-point-free involution at endpoint {0}")]
    NotInvolution(usize),
    #[error("chords {0:?} and {1:?} interleave")]
    NotPlanar((usize, usize), (usize, usize)),
    #[error("widths do not match: {0} vs {1}")]
    WidthMismatch(usize, usize),
}

/// A crossingless tangle in a square: `bottom` endpoints on the lower edge,
/// `top` endpoints on the upper edge, a planar `pairing` of all endpoints and
/// some closed `loops`.  Endpoint `i < bottom` is the i-th bottom point, left
/// to right; endpoint `bottom + j` is the j-th top point, left to right.
/// Loops carry no geometry beyond their index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FlatTangle {
    pub bottom: usize,
    pub top: usize,
    pub pairing: Vec<usize>,
    pub loops: usize,
}

impl FlatTangle {
    pub fn new(
        bottom: usize,
        top: usize,
        pairing: Vec<usize>,
        loops: usize,
    ) -> Result<Self, TangleError> {
        let e = bottom + top;
        if pairing.len() != e {
            return Err(TangleError::BadLength(pairing.len(), e));
        }
        for p in 0..e {
            if pairing[p] >= e || pairing[p] == p || pairing[pairing[p]] != p {
                return Err(TangleError::NotInvolution(p));
            }
        }
        let t = FlatTangle { bottom, top, pairing, loops };
        // Planarity: no two chords interleave on the boundary circle.
        let chords: Vec<(usize, usize)> = t
            .arcs()
            .map(|(p, q)| {
                let (a, b) = (t.circpos(p), t.circpos(q));
                (a.min(b), a.max(b))
            })
            .collect();
        for (i, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[i + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return Err(TangleError::NotPlanar((a, b), (c, d)));
                }
            }
        }
        Ok(t)
    }

    /// Position of an endpoint on the boundary circle of the square, walking
    /// counterclockwise: bottom points left to right, then top points right to
    /// left.
    fn circpos(&self, p: usize) -> usize {
        if p < self.bottom {
            p
        } else {
            self.bottom + (self.top - 1) - (p - self.bottom)
        }
    }

    pub fn endpoints(&self) -> usize {
        self.bottom + self.top
    }

    /// Arcs as endpoint pairs (p, q) with p < q.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.endpoints()).filter_map(|p| {
            let q = self.pairing[p];
            (p < q).then_some((p, q))
        })
    }

    pub fn identity(n: usize) -> Self {
        let pairing = (0..2 * n).map(|p| if p < n { n + p } else { p - n }).collect();
        FlatTangle { bottom: n, top: n, pairing, loops: 0 }
    }

    pub fn empty() -> Self {
        Self::identity(0)
    }

    /// Build from explicit arcs; every endpoint must occur in exactly one pair.
    pub fn from_pairs(
        bottom: usize,
        top: usize,
        pairs: &[(usize, usize)],
        loops: usize,
    ) -> Result<Self, TangleError> {
        let e = bottom + top;
        let mut pairing = vec![usize::MAX; e];
        for &(p, q) in pairs {
            pairing[p] = q;
            pairing[q] = p;
        }
        Self::new(bottom, top, pairing, loops)
    }

    pub fn is_identity(&self) -> bool {
        self.loops == 0
            && self.bottom == self.top
            && (0..self.bottom).all(|i| self.pairing[i] == self.bottom + i)
    }

    pub fn with_loops(&self, loops: usize) -> Self {
        FlatTangle { loops, ..self.clone() }
    }

    /// Reflect across a horizontal axis, exchanging bottom and top.
    pub fn flip(&self) -> Self {
        let (b, t) = (self.bottom, self.top);
        let m = |e: usize| if e < b { t + e } else { e - b };
        let mut pairing = vec![usize::MAX; b + t];
        for e in 0..b + t {
            pairing[m(e)] = m(self.pairing[e]);
        }
        FlatTangle { bottom: t, top: b, pairing, loops: self.loops }
    }
}

/// Stack `upper` on top of `lower`.  Returns the composite together with the
/// middle-point sets of the loops created by the composition, sorted by their
/// minimal middle point.  Result loops are ordered: loops of `lower`, loops of
/// `upper`, created loops.
pub fn vstack_flat(
    lower: &FlatTangle,
    upper: &FlatTangle,
) -> Result<(FlatTangle, Vec<Vec<usize>>), TangleError> {
    if lower.top != upper.bottom {
        return Err(TangleError::WidthMismatch(lower.top, upper.bottom));
    }
    let (a, mid, b) = (lower.bottom, lower.top, upper.top);
    let mut pairing = vec![usize::MAX; a + b];
    let mut mid_seen = vec![false; mid];
    for start in 0..a + b {
        if pairing[start] != usize::MAX {
            continue;
        }
        // Walk the strand through the middle; `false` = in lower, `true` = in upper.
        let (mut in_upper, mut e) =
            if start < a { (false, start) } else { (true, mid + (start - a)) };
        let arrive = loop {
            if in_upper {
                let q = upper.pairing[e];
                if q >= mid {
                    break a + (q - mid);
                }
                mid_seen[q] = true;
                in_upper = false;
                e = a + q;
            } else {
                let q = lower.pairing[e];
                if q < a {
                    break q;
                }
                mid_seen[q - a] = true;
                in_upper = true;
                e = q - a;
            }
        };
        pairing[start] = arrive;
        pairing[arrive] = start;
    }
    let mut created = Vec::new();
    for m0 in 0..mid {
        if mid_seen[m0] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut m = m0;
        loop {
            // Lower arc from middle point m, then upper arc back to the middle.
            mid_seen[m] = true;
            cycle.push(m);
            let m1 = lower.pairing[a + m] - a;
            mid_seen[m1] = true;
            cycle.push(m1);
            m = upper.pairing[m1];
            if m == m0 {
                break;
            }
        }
        cycle.sort_unstable();
        created.push(cycle);
    }
    let loops = lower.loops + upper.loops + created.len();
    Ok((FlatTangle::new(a, b, pairing, loops)?, created))
}

/// Place `right` to the right of `left`.  Result loops: loops of `left`, then
/// loops of `right`.
pub fn hcompose_flat(left: &FlatTangle, right: &FlatTangle) -> FlatTangle {
    let (lb, lt) = (left.bottom, left.top);
    let (rb, rt) = (right.bottom, right.top);
    let map_l = |e: usize| if e < lb { e } else { (lb + rb) + (e - lb) };
    let map_r = |e: usize| if e < rb { lb + e } else { (lb + rb) + lt + (e - rb) };
    let mut pairing = vec![usize::MAX; lb + rb + lt + rt];
    for p in 0..lb + lt {
        pairing[map_l(p)] = map_l(left.pairing[p]);
    }
    for p in 0..rb + rt {
        pairing[map_r(p)] = map_r(right.pairing[p]);
    }
    FlatTangle::new(lb + rb, lt + rt, pairing, left.loops + right.loops)
        .expect("side-by-side union of planar tangles is planar")
}

/// The canonical circle set of a pair of flat tangles with the same endpoints:
/// arc-cycles (alternating source and target arcs), then source loops, then
/// target loops.  `Hom(src, tgt)` has one dot slot per circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomStructure {
    /// Arc-cycles in walk order, one per circle meeting the boundary; each
    /// starts at its minimal endpoint and cycles are sorted by that endpoint.
    pub cycles: Vec<Vec<usize>>,
    /// Circle index containing each endpoint.
    pub at_end: Vec<usize>,
    pub src_loop0: usize,
    pub tgt_loop0: usize,
    pub n_circ: usize,
}

impl HomStructure {
    pub fn new(src: &FlatTangle, tgt: &FlatTangle) -> Self {
        assert_eq!((src.bottom, src.top), (tgt.bottom, tgt.top), "hom endpoint mismatch");
        let e = src.endpoints();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut at_end = vec![usize::MAX; e];
        for p in 0..e {
            if at_end[p] != usize::MAX {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = p;
            loop {
                at_end[cur] = cycles.len();
                cycle.push(cur);
                let q = src.pairing[cur];
                at_end[q] = cycles.len();
                cycle.push(q);
                let r = tgt.pairing[q];
                if r == p {
                    break;
                }
                cur = r;
            }
            cycles.push(cycle);
        }
        let src_loop0 = cycles.len();
        let tgt_loop0 = src_loop0 + src.loops;
        let n_circ = tgt_loop0 + tgt.loops;
        assert!(n_circ <= 64, "too many circles for a 64-bit dot mask");
        HomStructure { cycles, at_end, src_loop0, tgt_loop0, n_circ }
    }

    pub fn src_loop(&self, j: usize) -> usize {
        self.src_loop0 + j
    }

    pub fn tgt_loop(&self, j: usize) -> usize {
        self.tgt_loop0 + j
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_validity() {
        let id = FlatTangle::identity(3);
        assert!(id.is_identity());
        assert_eq!(FlatTangle::new(3, 3, id.pairing.clone(), 0), Ok(id.clone()));
        // A fixed point is rejected.
        assert!(FlatTangle::new(1, 1, vec![0, 1], 0).is_err());
        // Interleaving chords are rejected: 0-2, 1-3 on a width-4 bottom... on circle.
        assert!(FlatTangle::from_pairs(4, 0, &[(0, 2), (1, 3)], 0).is_err());
        // Nested chords are fine.
        assert!(FlatTangle::from_pairs(4, 0, &[(0, 3), (1, 2)], 0).is_ok());
    }

    #[test]
    fn turnback_is_planar() {
        // Bottom pair 0-1, top pair 0-1 (endpoints 2,3).
        let tau = FlatTangle::from_pairs(2, 2, &[(0, 1), (2, 3)], 0).unwrap();
        assert!(!tau.is_identity());
        assert_eq!(tau.pairing, vec![1, 0, 3, 2]);
    }

    #[test]
    fn vstack_traces_strands_and_loops() {
        let id = FlatTangle::identity(2);
        let (c, created) = vstack_flat(&id, &id).unwrap();
        assert!(c.is_identity());
        assert!(created.is_empty());

        // Cap then cup over width 0: a single created loop through middle points 0,1.
        let cap = FlatTangle::from_pairs(2, 0, &[(0, 1)], 0).unwrap();
        let cup = FlatTangle::from_pairs(0, 2, &[(0, 1)], 0).unwrap();
        let (c, created) = vstack_flat(&cup, &cap).unwrap();
        assert_eq!((c.bottom, c.top, c.loops), (0, 0, 1));
        assert_eq!(created, vec![vec![0, 1]]);

        // tau . tau = tau with one created loop.
        let tau = FlatTangle::from_pairs(2, 2, &[(0, 1), (2, 3)], 0).unwrap();
        let (c, created) = vstack_flat(&tau, &tau).unwrap();
        assert_eq!(c.pairing, tau.pairing);
        assert_eq!(c.loops, 1);
        assert_eq!(created, vec![vec![0, 1]]);
    }

    #[test]
    fn hcompose_places_side_by_side() {
        let id1 = FlatTangle::identity(1);
        let tau = FlatTangle::from_pairs(2, 2, &[(0, 1), (2, 3)], 0).unwrap();
        let c = hcompose_flat(&id1, &tau);
        assert_eq!((c.bottom, c.top), (3, 3));
        // Strand 0 passes through; 1-2 capped below, 1-2 cupped above.
        assert_eq!(c.pairing, vec![3, 2, 1, 0, 5, 4]);
    }

    #[test]
    fn hom_structure_circles() {
        let id = FlatTangle::identity(2).with_loops(1);
        let h = HomStructure::new(&id, &id.with_loops(2));
        // Two bands, one source loop, two target loops.
        assert_eq!(h.cycles, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(h.at_end, vec![0, 1, 0, 1]);
        assert_eq!((h.src_loop0, h.tgt_loop0, h.n_circ), (2, 3, 5));

        let tau = FlatTangle::from_pairs(2, 2, &[(0, 1), (2, 3)], 0).unwrap();
        let h = HomStructure::new(&FlatTangle::identity(2), &tau);
        // One 4-cycle: S-arc 0-2, T-arc 2-3, S-arc 3-1, T-arc 1-0.
        assert_eq!(h.cycles, vec![vec![0, 2, 3, 1]]);
        assert_eq!(h.n_circ, 1);
    }
}
