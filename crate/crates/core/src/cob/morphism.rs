//! Dotted cobordisms between flat tangles, kept in thin normal form.
//!
//! A morphism from `src` to `tgt` is a rational combination of thin surfaces:
//! one disk piece per canonical circle of `Hom(src, tgt)` (bands over
//! arc-cycles, caps over source loops, cups over target loops), each carrying
//! at most one dot.  A term is stored as a dot mask over the canonical
//! circles.  All gluing operations renormalize through the local relations:
//! sphere = 0, dotted sphere = 1, two dots = 0, neck cutting.

use std::collections::BTreeMap;

use itertools::Itertools;
use num::{One, Zero};

use super::tangle::{hcompose_flat, vstack_flat, FlatTangle, HomStructure};
use crate::arith::{pow2, Q, UnionFind};

/// Value of a closed connected surface of genus `g` with `d` dots.
pub fn evaluate_closed(g: usize, d: usize) -> Q {
    if g + d == 1 {
        pow2(g)
    } else {
        Q::zero()
    }
}

/// Normal form of one raw connected component of a cobordism: `circles` are
/// its boundary circles as canonical indices, `chi` its Euler characteristic,
/// `dots` the number of dots it carries.  Returns thin terms as (mask,
/// coefficient) pairs; empty means the component evaluates to zero.
fn expand_component(circles: &[usize], chi: i32, dots: usize) -> Vec<(u64, Q)> {
    let b = circles.len();
    if b == 0 {
        let gg = 2 - chi;
        assert!(gg >= 0 && gg % 2 == 0, "closed component with chi {chi}");
        let g = (gg / 2) as usize;
        let v = evaluate_closed(g, dots);
        return if v.is_zero() { vec![] } else { vec![(0, v)] };
    }
    let gg = 2 - chi - b as i32;
    assert!(gg >= 0 && gg % 2 == 0, "component with chi {chi} and {b} boundary circles");
    let g = (gg / 2) as usize;
    let d = dots + g + b - 1;
    if d > b {
        return vec![];
    }
    circles
        .iter()
        .combinations(d)
        .map(|dotted| (dotted.iter().fold(0u64, |m, &&c| m | (1 << c)), pow2(g)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Cob {
    pub src: FlatTangle,
    pub tgt: FlatTangle,
    pub hom: HomStructure,
    /// Dot mask over the canonical circles -> coefficient.  No zero values.
    pub terms: BTreeMap<u64, Q>,
}

impl PartialEq for Cob {
    fn eq(&self, o: &Self) -> bool {
        self.src == o.src && self.tgt == o.tgt && self.terms == o.terms
    }
}

impl Eq for Cob {}

impl Cob {
    pub fn zero(src: FlatTangle, tgt: FlatTangle) -> Self {
        let hom = HomStructure::new(&src, &tgt);
        Cob { src, tgt, hom, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Build from raw connected components; `comps` must cover every canonical
    /// circle of `Hom(src, tgt)` exactly once.
    pub fn from_components(
        src: &FlatTangle,
        tgt: &FlatTangle,
        comps: &[(Vec<usize>, i32, usize)],
    ) -> Self {
        let hom = HomStructure::new(src, tgt);
        let mut seen = 0u64;
        for (circles, _, _) in comps {
            for &c in circles {
                assert!(c < hom.n_circ && seen >> c & 1 == 0, "bad component cover");
                seen |= 1 << c;
            }
        }
        assert_eq!(seen.count_ones() as usize, hom.n_circ, "components must cover all circles");
        let mut acc: Vec<(u64, Q)> = vec![(0, Q::one())];
        for (circles, chi, dots) in comps {
            let terms = expand_component(circles, *chi, *dots);
            if terms.is_empty() {
                acc.clear();
                break;
            }
            acc = acc
                .iter()
                .flat_map(|(m, c)| terms.iter().map(move |(tm, tc)| (m | tm, c * tc)))
                .collect();
        }
        let mut map = BTreeMap::new();
        for (m, c) in acc {
            let e = map.entry(m).or_insert_with(Q::zero);
            *e += c;
        }
        map.retain(|_, c: &mut Q| !c.is_zero());
        Cob { src: src.clone(), tgt: tgt.clone(), hom, terms: map }
    }

    pub fn identity(t: &FlatTangle) -> Self {
        let hom = HomStructure::new(t, t);
        let mut comps: Vec<(Vec<usize>, i32, usize)> =
            (0..hom.cycles.len()).map(|c| (vec![c], 1, 0)).collect();
        for j in 0..t.loops {
            comps.push((vec![hom.src_loop(j), hom.tgt_loop(j)], 0, 0));
        }
        Self::from_components(t, t, &comps)
    }

    /// Identity away from loop `at` of `tgt`, which is born (with a dot if
    /// `dotted`).  Loops `j >= at` of `t` shift up by one in the target.
    pub fn birth(t: &FlatTangle, at: usize, dotted: bool) -> Self {
        assert!(at <= t.loops);
        let tgt = t.with_loops(t.loops + 1);
        let hom = HomStructure::new(t, &tgt);
        let mut comps: Vec<(Vec<usize>, i32, usize)> =
            (0..hom.cycles.len()).map(|c| (vec![c], 1, 0)).collect();
        for j in 0..t.loops {
            let jt = if j < at { j } else { j + 1 };
            comps.push((vec![hom.src_loop(j), hom.tgt_loop(jt)], 0, 0));
        }
        comps.push((vec![hom.tgt_loop(at)], 1, dotted as usize));
        Self::from_components(t, &tgt, &comps)
    }

    /// Identity away from loop `at` of `t`, which dies (with a dot if
    /// `dotted`).  Loops `j > at` shift down by one in the target.
    pub fn death(t: &FlatTangle, at: usize, dotted: bool) -> Self {
        assert!(at < t.loops);
        let tgt = t.with_loops(t.loops - 1);
        let hom = HomStructure::new(t, &tgt);
        let mut comps: Vec<(Vec<usize>, i32, usize)> =
            (0..hom.cycles.len()).map(|c| (vec![c], 1, 0)).collect();
        for j in 0..t.loops {
            if j == at {
                continue;
            }
            let jt = if j < at { j } else { j - 1 };
            comps.push((vec![hom.src_loop(j), hom.tgt_loop(jt)], 0, 0));
        }
        comps.push((vec![hom.src_loop(at)], 1, dotted as usize));
        Self::from_components(t, &tgt, &comps)
    }

    /// Identity with one dot on the tube over loop `at`.
    pub fn dot_on_loop(t: &FlatTangle, at: usize) -> Self {
        assert!(at < t.loops);
        let hom = HomStructure::new(t, t);
        let mut comps: Vec<(Vec<usize>, i32, usize)> =
            (0..hom.cycles.len()).map(|c| (vec![c], 1, 0)).collect();
        for j in 0..t.loops {
            let dots = (j == at) as usize;
            comps.push((vec![hom.src_loop(j), hom.tgt_loop(j)], 0, dots));
        }
        Self::from_components(t, t, &comps)
    }

    /// Identity with one dot on the band through endpoint `p`.
    pub fn dot_on_arc(t: &FlatTangle, p: usize) -> Self {
        let hom = HomStructure::new(t, t);
        let band = hom.at_end[p];
        let mut comps: Vec<(Vec<usize>, i32, usize)> =
            (0..hom.cycles.len()).map(|c| (vec![c], 1, (c == band) as usize)).collect();
        for j in 0..t.loops {
            comps.push((vec![hom.src_loop(j), hom.tgt_loop(j)], 0, 0));
        }
        Self::from_components(t, t, &comps)
    }

    /// The saddle between two flats differing by a single arc surgery; loops
    /// must agree and are carried by tubes.
    pub fn saddle_arcs(s: &FlatTangle, t: &FlatTangle) -> Self {
        assert_eq!(s.loops, t.loops, "saddle with mismatched loops");
        let hom = HomStructure::new(s, t);
        let mut comps: Vec<(Vec<usize>, i32, usize)> = Vec::new();
        let mut site = Vec::new();
        for (c, cyc) in hom.cycles.iter().enumerate() {
            if cyc.len() == 2 {
                comps.push((vec![c], 1, 0));
            } else {
                assert_eq!(cyc.len(), 4, "not a single surgery");
                site.push(c);
            }
        }
        assert_eq!(site.len(), 1, "not a single surgery");
        comps.push((site, 1, 0));
        for j in 0..s.loops {
            comps.push((vec![hom.src_loop(j), hom.tgt_loop(j)], 0, 0));
        }
        Self::from_components(s, t, &comps)
    }

    /// Pair of pants splitting loop `at` into target loops `at`, `at + 1`.
    pub fn loop_split(t: &FlatTangle, at: usize) -> Self {
        assert!(at < t.loops);
        let tgt = t.with_loops(t.loops + 1);
        let hom = HomStructure::new(t, &tgt);
        let mut comps: Vec<(Vec<usize>, i32, usize)> =
            (0..hom.cycles.len()).map(|c| (vec![c], 1, 0)).collect();
        for j in 0..t.loops {
            if j == at {
                continue;
            }
            let jt = if j < at { j } else { j + 1 };
            comps.push((vec![hom.src_loop(j), hom.tgt_loop(jt)], 0, 0));
        }
        comps.push((vec![hom.src_loop(at), hom.tgt_loop(at), hom.tgt_loop(at + 1)], -1, 0));
        Self::from_components(t, &tgt, &comps)
    }

    /// Pair of pants merging loops `at`, `at + 1` into target loop `at`.
    pub fn loop_merge(t: &FlatTangle, at: usize) -> Self {
        assert!(at + 1 < t.loops);
        let tgt = t.with_loops(t.loops - 1);
        let hom = HomStructure::new(t, &tgt);
        let mut comps: Vec<(Vec<usize>, i32, usize)> =
            (0..hom.cycles.len()).map(|c| (vec![c], 1, 0)).collect();
        for j in 0..t.loops {
            if j == at || j == at + 1 {
                continue;
            }
            let jt = if j < at { j } else { j - 1 };
            comps.push((vec![hom.src_loop(j), hom.tgt_loop(jt)], 0, 0));
        }
        comps.push((vec![hom.src_loop(at), hom.src_loop(at + 1), hom.tgt_loop(at)], -1, 0));
        Self::from_components(t, &tgt, &comps)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut r = self.clone();
        if c.is_zero() {
            r.terms.clear();
            return r;
        }
        for v in r.terms.values_mut() {
            *v *= c;
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((&self.src, &self.tgt), (&o.src, &o.tgt), "sum of mismatched cobordisms");
        let mut r = self.clone();
        for (m, c) in &o.terms {
            let e = r.terms.entry(*m).or_insert_with(Q::zero);
            *e += c;
        }
        r.terms.retain(|_, c| !c.is_zero());
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Internal q-degree; `None` for the zero morphism or inhomogeneous sums.
    /// Conventions: identity 0, saddle +1, undotted birth/death -1, dot +2.
    pub fn deg(&self) -> Option<i32> {
        let n = ((self.src.bottom + self.src.top) / 2) as i32 - self.hom.n_circ as i32;
        let mut it = self.terms.keys().map(|m| n + 2 * m.count_ones() as i32);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Value of a closed morphism (empty source and target).
    pub fn scalar(&self) -> Q {
        assert_eq!(self.hom.n_circ, 0, "scalar of a non-closed morphism");
        self.terms.get(&0).cloned().unwrap_or_else(Q::zero)
    }

    /// Composition in time: `self` then `other`.
    pub fn compose(&self, other: &Cob) -> Cob {
        assert_eq!(self.tgt, other.src, "composition of mismatched cobordisms");
        let src = self.src.clone();
        let tgt = other.tgt.clone();
        let hom = HomStructure::new(&src, &tgt);
        let mut anchors = Vec::with_capacity(hom.n_circ);
        for cyc in &hom.cycles {
            anchors.push(Side::F(self.hom.at_end[cyc[0]]));
        }
        for j in 0..src.loops {
            anchors.push(Side::F(self.hom.src_loop(j)));
        }
        for j in 0..tgt.loops {
            anchors.push(Side::G(other.hom.tgt_loop(j)));
        }
        let arc_joins = self
            .tgt
            .arcs()
            .map(|(p, _)| (self.hom.at_end[p], other.hom.at_end[p]))
            .collect();
        let loop_joins = (0..self.tgt.loops)
            .map(|j| (self.hom.tgt_loop(j), other.hom.src_loop(j)))
            .collect();
        glue(self, other, src, tgt, hom, &GlueSpec { anchors, arc_joins, loop_joins })
    }

    /// Stack `upper` on top of `self` in the plane.  Loops of the composite
    /// flats are ordered: lower loops, upper loops, loops created by the
    /// stacking (by minimal middle point).
    pub fn vstack(&self, upper: &Cob) -> Cob {
        let a = self.src.bottom;
        let mid = self.src.top;
        let (rs, created_s) = vstack_flat(&self.src, &upper.src).expect("vstack width mismatch");
        let (rt, created_t) = vstack_flat(&self.tgt, &upper.tgt).expect("vstack width mismatch");
        let hom = HomStructure::new(&rs, &rt);
        let mut anchors = Vec::with_capacity(hom.n_circ);
        for cyc in &hom.cycles {
            let e = cyc[0];
            if e < a {
                anchors.push(Side::F(self.hom.at_end[e]));
            } else {
                anchors.push(Side::G(upper.hom.at_end[mid + (e - a)]));
            }
        }
        for (loops_f, loops_g, created, loop_f, loop_g) in [
            (
                self.src.loops,
                upper.src.loops,
                &created_s,
                self.hom.src_loop0,
                upper.hom.src_loop0,
            ),
            (
                self.tgt.loops,
                upper.tgt.loops,
                &created_t,
                self.hom.tgt_loop0,
                upper.hom.tgt_loop0,
            ),
        ] {
            for j in 0..loops_f {
                anchors.push(Side::F(loop_f + j));
            }
            for j in 0..loops_g {
                anchors.push(Side::G(loop_g + j));
            }
            for pts in created {
                anchors.push(Side::F(self.hom.at_end[a + pts[0]]));
            }
        }
        let arc_joins =
            (0..mid).map(|m| (self.hom.at_end[a + m], upper.hom.at_end[m])).collect();
        glue(self, upper, rs, rt, hom, &GlueSpec { anchors, arc_joins, loop_joins: vec![] })
    }

    /// Place `right` to the right of `self`.
    pub fn hcompose(&self, right: &Cob) -> Cob {
        let (lb, lt) = (self.src.bottom, self.src.top);
        let rb = right.src.bottom;
        let rs = hcompose_flat(&self.src, &right.src);
        let rtgt = hcompose_flat(&self.tgt, &right.tgt);
        let hom = HomStructure::new(&rs, &rtgt);
        let mut anchors = Vec::with_capacity(hom.n_circ);
        for cyc in &hom.cycles {
            let e = cyc[0];
            anchors.push(if e < lb {
                Side::F(self.hom.at_end[e])
            } else if e < lb + rb {
                Side::G(right.hom.at_end[e - lb])
            } else if e - (lb + rb) < lt {
                Side::F(self.hom.at_end[lb + (e - (lb + rb))])
            } else {
                Side::G(right.hom.at_end[rb + (e - (lb + rb) - lt)])
            });
        }
        for j in 0..self.src.loops {
            anchors.push(Side::F(self.hom.src_loop(j)));
        }
        for j in 0..right.src.loops {
            anchors.push(Side::G(right.hom.src_loop(j)));
        }
        for j in 0..self.tgt.loops {
            anchors.push(Side::F(self.hom.tgt_loop(j)));
        }
        for j in 0..right.tgt.loops {
            anchors.push(Side::G(right.hom.tgt_loop(j)));
        }
        glue(
            self,
            right,
            rs,
            rtgt,
            hom,
            &GlueSpec { anchors, arc_joins: vec![], loop_joins: vec![] },
        )
    }

    /// Reflect across a horizontal axis: a morphism `src -> tgt` becomes
    /// `flip(tgt) -> flip(src)`, thin terms mapping one to one.
    pub fn transpose(&self) -> Cob {
        let src = self.tgt.flip();
        let tgt = self.src.flip();
        let hom = HomStructure::new(&src, &tgt);
        let b = self.src.bottom;
        let t = self.src.top;
        let m = |e: usize| if e < b { t + e } else { e - b };
        let mut cmap = vec![usize::MAX; self.hom.n_circ];
        for (c, cyc) in self.hom.cycles.iter().enumerate() {
            cmap[c] = hom.at_end[m(cyc[0])];
        }
        for j in 0..self.src.loops {
            cmap[self.hom.src_loop(j)] = hom.tgt_loop(j);
        }
        for j in 0..self.tgt.loops {
            cmap[self.hom.tgt_loop(j)] = hom.src_loop(j);
        }
        let terms = self
            .terms
            .iter()
            .map(|(&mask, c)| {
                let nm = (0..self.hom.n_circ)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(0u64, |acc, i| acc | (1 << cmap[i]));
                (nm, c.clone())
            })
            .collect();
        Cob { src, tgt, hom, terms }
    }
}

enum Side {
    F(usize),
    G(usize),
}

struct GlueSpec {
    /// For each circle of the result hom structure, the piece of `f` or `g`
    /// whose component it bounds.
    anchors: Vec<Side>,
    /// Pairs of (f-circle, g-circle) glued along an interval: chi cost -1 each.
    arc_joins: Vec<(usize, usize)>,
    /// Pairs glued along a full circle: no chi cost.
    loop_joins: Vec<(usize, usize)>,
}


struct Comp {
    pieces: usize,
    arc_joins: usize,
    f_mask: u64,
    g_mask: u64,
    out: Vec<usize>,
}

/// Glue the thin pieces of `f` and `g` along the given joins and renormalize.
fn glue(
    f: &Cob,
    g: &Cob,
    src: FlatTangle,
    tgt: FlatTangle,
    hom: HomStructure,
    spec: &GlueSpec,
) -> Cob {
    assert_eq!(hom.n_circ, spec.anchors.len());
    let nf = f.hom.n_circ;
    let ng = g.hom.n_circ;
    let mut uf = UnionFind::new(nf + ng);
    for &(a, b) in spec.arc_joins.iter().chain(&spec.loop_joins) {
        uf.union(a, nf + b);
    }
    let mut comp_of = vec![usize::MAX; nf + ng];
    let mut comps: Vec<Comp> = Vec::new();
    for n in 0..nf + ng {
        let r = uf.find(n);
        if comp_of[r] == usize::MAX {
            comp_of[r] = comps.len();
            comps.push(Comp { pieces: 0, arc_joins: 0, f_mask: 0, g_mask: 0, out: vec![] });
        }
        comp_of[n] = comp_of[r];
        let c = &mut comps[comp_of[n]];
        c.pieces += 1;
        if n < nf {
            c.f_mask |= 1 << n;
        } else {
            c.g_mask |= 1 << (n - nf);
        }
    }
    for &(a, _) in &spec.arc_joins {
        let r = uf.find(a);
        comps[comp_of[r]].arc_joins += 1;
    }
    for (circ, side) in spec.anchors.iter().enumerate() {
        let n = match side {
            Side::F(c) => *c,
            Side::G(c) => nf + *c,
        };
        let r = uf.find(n);
        comps[comp_of[r]].out.push(circ);
    }
    let mut memo: BTreeMap<(usize, usize), Vec<(u64, Q)>> = BTreeMap::new();
    let mut result: BTreeMap<u64, Q> = BTreeMap::new();
    for (fm, fc) in &f.terms {
        for (gm, gc) in &g.terms {
            let mut acc: Vec<(u64, Q)> = vec![(0, fc * gc)];
            for (ci, comp) in comps.iter().enumerate() {
                let dots = ((fm & comp.f_mask).count_ones() + (gm & comp.g_mask).count_ones())
                    as usize;
                let chi = comp.pieces as i32 - comp.arc_joins as i32;
                let terms = memo
                    .entry((ci, dots))
                    .or_insert_with(|| expand_component(&comp.out, chi, dots));
                if terms.is_empty() {
                    acc.clear();
                    break;
                }
                acc = acc
                    .iter()
                    .flat_map(|(m, c)| terms.iter().map(move |(tm, tc)| (m | tm, c * tc)))
                    .collect();
            }
            for (m, c) in acc {
                let e = result.entry(m).or_insert_with(Q::zero);
                *e += c;
            }
        }
    }
    result.retain(|_, c| !c.is_zero());
    Cob { src, tgt, hom, terms: result }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qi;

    fn loops(n: usize) -> FlatTangle {
        FlatTangle::empty().with_loops(n)
    }

    /// The element of V^{otimes n} with a dot pattern, as a cobordism from
    /// the empty tangle.
    fn elt(dots: &[bool]) -> Cob {
        let mut c = Cob::identity(&FlatTangle::empty());
        for (i, &d) in dots.iter().enumerate() {
            c = c.compose(&Cob::birth(&loops(i), i, d));
        }
        c
    }

    #[test]
    fn closed_surface_values() {
        let sphere = Cob::birth(&loops(0), 0, false).compose(&Cob::death(&loops(1), 0, false));
        assert_eq!(sphere.scalar(), qi(0));
        let dotted = Cob::birth(&loops(0), 0, true).compose(&Cob::death(&loops(1), 0, false));
        assert_eq!(dotted.scalar(), qi(1));
        let two_dots = Cob::birth(&loops(0), 0, true).compose(&Cob::death(&loops(1), 0, true));
        assert_eq!(two_dots.scalar(), qi(0));

        let handle = Cob::loop_split(&loops(1), 0).compose(&Cob::loop_merge(&loops(2), 0));
        let torus = Cob::birth(&loops(0), 0, false)
            .compose(&handle)
            .compose(&Cob::death(&loops(1), 0, false));
        assert_eq!(torus.scalar(), qi(2));

        let genus2 = Cob::birth(&loops(0), 0, false)
            .compose(&handle)
            .compose(&handle)
            .compose(&Cob::death(&loops(1), 0, false));
        assert_eq!(genus2.scalar(), qi(0));

        let dotted_torus = Cob::birth(&loops(0), 0, true)
            .compose(&handle)
            .compose(&Cob::death(&loops(1), 0, false));
        assert_eq!(dotted_torus.scalar(), qi(0));
    }

    #[test]
    fn frobenius_tables() {
        let m = Cob::loop_merge(&loops(2), 0);
        assert_eq!(elt(&[false, false]).compose(&m), elt(&[false]));
        assert_eq!(elt(&[true, false]).compose(&m), elt(&[true]));
        assert_eq!(elt(&[false, true]).compose(&m), elt(&[true]));
        assert!(elt(&[true, true]).compose(&m).is_zero());

        let delta = Cob::loop_split(&loops(1), 0);
        assert_eq!(
            elt(&[false]).compose(&delta),
            elt(&[true, false]).add(&elt(&[false, true]))
        );
        assert_eq!(elt(&[true]).compose(&delta), elt(&[true, true]));
    }

    #[test]
    fn identity_laws() {
        let tau = FlatTangle::from_pairs(2, 2, &[(0, 1), (2, 3)], 1).unwrap();
        let id = Cob::identity(&tau);
        assert_eq!(id.compose(&id), id);

        let s = Cob::saddle_arcs(&FlatTangle::identity(2), &tau.with_loops(0));
        assert_eq!(Cob::identity(&FlatTangle::identity(2)).compose(&s), s);
        assert_eq!(s.compose(&Cob::identity(&tau.with_loops(0))), s);
    }

    #[test]
    fn delooping_pairings() {
        let i_plus = Cob::birth(&loops(0), 0, true);
        let i_minus = Cob::birth(&loops(0), 0, false);
        let p_plus = Cob::death(&loops(1), 0, false);
        let p_minus = Cob::death(&loops(1), 0, true);
        assert_eq!(i_plus.compose(&p_plus).scalar(), qi(1));
        assert_eq!(i_minus.compose(&p_minus).scalar(), qi(1));
        assert_eq!(i_plus.compose(&p_minus).scalar(), qi(0));
        assert_eq!(i_minus.compose(&p_plus).scalar(), qi(0));
        let split = p_plus.compose(&i_plus).add(&p_minus.compose(&i_minus));
        assert_eq!(split, Cob::identity(&loops(1)));
    }

    #[test]
    fn saddle_pair_is_neck_cut() {
        let id2 = FlatTangle::identity(2);
        let tau = FlatTangle::from_pairs(2, 2, &[(0, 1), (2, 3)], 0).unwrap();
        let up = Cob::saddle_arcs(&id2, &tau);
        let down = Cob::saddle_arcs(&tau, &id2);
        let both = up.compose(&down);
        assert_eq!(both, Cob::dot_on_arc(&id2, 0).add(&Cob::dot_on_arc(&id2, 1)));
        assert_eq!(up.deg(), Some(1));
        assert_eq!(down.deg(), Some(1));
        // The other order creates and caps a loop through the turnback.
        let other = down.compose(&up);
        assert_eq!(other, Cob::dot_on_arc(&tau, 0).add(&Cob::dot_on_arc(&tau, 2)));
    }

    #[test]
    fn degrees() {
        assert_eq!(Cob::birth(&loops(0), 0, false).deg(), Some(-1));
        assert_eq!(Cob::birth(&loops(0), 0, true).deg(), Some(1));
        assert_eq!(Cob::death(&loops(1), 0, false).deg(), Some(-1));
        assert_eq!(Cob::loop_merge(&loops(2), 0).deg(), Some(1));
        assert_eq!(Cob::loop_split(&loops(1), 0).deg(), Some(1));
        assert_eq!(Cob::identity(&FlatTangle::identity(3).with_loops(2)).deg(), Some(0));
        assert_eq!(Cob::dot_on_loop(&loops(1), 0).deg(), Some(2));
        assert_eq!(Cob::dot_on_arc(&FlatTangle::identity(1), 0).deg(), Some(2));
        assert!(Cob::zero(loops(0), loops(0)).deg().is_none());
    }

    #[test]
    fn associativity() {
        let f = Cob::birth(&loops(0), 0, true);
        let g = Cob::loop_split(&loops(1), 0);
        let h = Cob::loop_merge(&loops(2), 0);
        assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));

        let id2 = FlatTangle::identity(2);
        let tau = FlatTangle::from_pairs(2, 2, &[(0, 1), (2, 3)], 0).unwrap();
        let a = Cob::saddle_arcs(&id2, &tau);
        let b = Cob::saddle_arcs(&tau, &id2);
        let c = Cob::dot_on_arc(&id2, 0);
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn hcompose_interchange() {
        let f = Cob::dot_on_loop(&loops(1), 0);
        let f2 = Cob::identity(&loops(1));
        let g = Cob::dot_on_arc(&FlatTangle::identity(1), 0);
        let g2 = Cob::identity(&FlatTangle::identity(1));
        assert_eq!(
            f.compose(&f2).hcompose(&g.compose(&g2)),
            f.hcompose(&g).compose(&f2.hcompose(&g2))
        );
        let id_pair = Cob::identity(&loops(1)).hcompose(&Cob::identity(&FlatTangle::identity(1)));
        assert_eq!(id_pair, Cob::identity(&FlatTangle::identity(1).with_loops(1)));
    }

    #[test]
    fn vstack_interchange_with_loop_creation() {
        let id2 = FlatTangle::identity(2);
        let tau = FlatTangle::from_pairs(2, 2, &[(0, 1), (2, 3)], 0).unwrap();
        let cap = FlatTangle::from_pairs(2, 0, &[(0, 1)], 0).unwrap();
        let up = Cob::saddle_arcs(&id2, &tau);
        let down = Cob::saddle_arcs(&tau, &id2);
        let idc = Cob::identity(&cap);
        let lhs = up.vstack(&idc).compose(&down.vstack(&idc));
        let rhs = up.compose(&down).vstack(&idc);
        assert_eq!(lhs, rhs);
        // The middle object really did acquire a loop.
        assert_eq!(up.vstack(&idc).tgt.loops, 1);
    }

    #[test]
    fn transpose_antihomomorphism() {
        let id2 = FlatTangle::identity(2);
        let tau = FlatTangle::from_pairs(2, 2, &[(0, 1), (2, 3)], 0).unwrap();
        let a = Cob::saddle_arcs(&id2, &tau);
        let b = Cob::saddle_arcs(&tau, &id2);
        assert_eq!(a.transpose(), b);
        assert_eq!(
            a.compose(&b).transpose(),
            b.transpose().compose(&a.transpose())
        );
        let id = Cob::identity(&tau.with_loops(2));
        assert_eq!(id.transpose(), id);
    }
}
