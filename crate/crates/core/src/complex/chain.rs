//! Chain complexes of flat tangles with cobordism differentials.
//!
//! Objects carry a quantum shift; differentials raise homological degree by
//! one and have total quantum degree zero (internal degree of an entry from
//! `X{qs}` to `Y{qt}` must be `qs - qt`).

use std::collections::BTreeMap;

use crate::arith::Q;
use crate::cob::tangle::{hcompose_flat, vstack_flat, FlatTangle};
use crate::cob::Cob;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obj {
    pub flat: FlatTangle,
    pub q: i32,
}

pub type Diff = BTreeMap<(usize, usize), Cob>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    /// Homological degree of column 0.
    pub h_min: i32,
    pub cols: Vec<Vec<Obj>>,
    /// `d[k]` maps column `k` to column `k + 1`; length `cols.len() - 1`.
    pub d: Vec<Diff>,
}

pub fn add_entry(map: &mut Diff, key: (usize, usize), cob: Cob) {
    if cob.is_zero() {
        return;
    }
    match map.remove(&key) {
        None => {
            map.insert(key, cob);
        }
        Some(old) => {
            let sum = old.add(&cob);
            if !sum.is_zero() {
                map.insert(key, sum);
            }
        }
    }
}

impl Complex {
    pub fn empty() -> Self {
        Complex { h_min: 0, cols: vec![], d: vec![] }
    }

    pub fn single(flat: FlatTangle, q: i32, h: i32) -> Self {
        Complex { h_min: h, cols: vec![vec![Obj { flat, q }]], d: vec![] }
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.cols.iter().map(|c| c.len()).collect()
    }

    pub fn n_objects(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn col_at(&self, h: i32) -> Option<usize> {
        let k = h - self.h_min;
        (0..self.cols.len() as i32).contains(&k).then_some(k as usize)
    }

    pub fn shift_q(&self, dq: i32) -> Self {
        let mut c = self.clone();
        for col in &mut c.cols {
            for o in col {
                o.q += dq;
            }
        }
        c
    }

    /// Shift homological degree; an odd shift negates the differential.
    pub fn shift_h(&self, dh: i32) -> Self {
        let mut c = self.clone();
        c.h_min += dh;
        if dh.rem_euclid(2) == 1 {
            for layer in &mut c.d {
                for e in layer.values_mut() {
                    *e = e.neg();
                }
            }
        }
        c
    }

    /// Drop empty boundary columns.
    pub fn trim(&self) -> Self {
        let mut lo = 0;
        let mut hi = self.cols.len();
        while lo < hi && self.cols[lo].is_empty() {
            lo += 1;
        }
        while hi > lo && self.cols[hi - 1].is_empty() {
            hi -= 1;
        }
        Complex {
            h_min: self.h_min + lo as i32,
            cols: self.cols[lo..hi].to_vec(),
            d: if hi - lo <= 1 { vec![] } else { self.d[lo..hi - 1].to_vec() },
        }
    }

    pub fn check_d2(&self) -> bool {
        for k in 0..self.d.len().saturating_sub(1) {
            let mut acc: Diff = BTreeMap::new();
            for ((a, b), e) in &self.d[k] {
                for ((b2, c), f) in &self.d[k + 1] {
                    if b == b2 {
                        add_entry(&mut acc, (*a, *c), e.compose(f));
                    }
                }
            }
            if !acc.is_empty() {
                return false;
            }
        }
        true
    }

    pub fn check_degrees(&self) -> bool {
        for (k, layer) in self.d.iter().enumerate() {
            for ((s, t), e) in layer {
                let want = self.cols[k][*s].q - self.cols[k + 1][*t].q;
                if e.deg() != Some(want) {
                    return false;
                }
            }
        }
        true
    }

    /// Bidegree multiplicities (h, q) -> count, meaningful for complexes with
    /// zero differential.
    pub fn graded_dims(&self) -> BTreeMap<(i32, i32), usize> {
        let mut m = BTreeMap::new();
        for (k, col) in self.cols.iter().enumerate() {
            for o in col {
                *m.entry((self.h_min + k as i32, o.q)).or_insert(0) += 1;
            }
        }
        m
    }

    pub fn has_zero_d(&self) -> bool {
        self.d.iter().all(|layer| layer.is_empty())
    }
}

/// Pair layout for stacked complexes: for each result column, the triples
/// (lower column, lower index, upper index) in order.
pub fn stack_layout(lower: &[usize], upper: &[usize]) -> Vec<Vec<(usize, usize, usize)>> {
    if lower.is_empty() || upper.is_empty() {
        return vec![];
    }
    let n = lower.len() + upper.len() - 1;
    (0..n)
        .map(|k| {
            let mut col = Vec::new();
            for k1 in k.saturating_sub(upper.len() - 1)..=k.min(lower.len() - 1) {
                for i in 0..lower[k1] {
                    for j in 0..upper[k - k1] {
                        col.push((k1, i, j));
                    }
                }
            }
            col
        })
        .collect()
}

/// Index of the pair (k1, i, j) within its result column.
pub fn stack_index(
    layout: &[Vec<(usize, usize, usize)>],
    k: usize,
    key: (usize, usize, usize),
) -> usize {
    layout[k].iter().position(|&t| t == key).expect("pair not in stack layout")
}

fn stack_generic(
    lower: &Complex,
    upper: &Complex,
    pair_flat: &dyn Fn(&FlatTangle, &FlatTangle) -> FlatTangle,
    lift_lower: &dyn Fn(&Cob, &FlatTangle) -> Cob,
    lift_upper: &dyn Fn(&FlatTangle, &Cob) -> Cob,
) -> Complex {
    if lower.cols.is_empty() || upper.cols.is_empty() {
        return Complex::empty();
    }
    let layout = stack_layout(&lower.shape(), &upper.shape());
    let n = layout.len();
    let mut cols = Vec::with_capacity(n);
    for (k, lcol) in layout.iter().enumerate() {
        let mut col = Vec::with_capacity(lcol.len());
        for &(k1, i, j) in lcol {
            let x = &lower.cols[k1][i];
            let y = &upper.cols[k - k1][j];
            col.push(Obj { flat: pair_flat(&x.flat, &y.flat), q: x.q + y.q });
        }
        cols.push(col);
    }
    let mut d: Vec<Diff> = vec![BTreeMap::new(); n - 1];
    for (k, layer) in d.iter_mut().enumerate() {
        for (src_idx, &(k1, i, j)) in layout[k].iter().enumerate() {
            let k2 = k - k1;
            let x = &lower.cols[k1][i];
            let y = &upper.cols[k2][j];
            if k1 < lower.d.len() {
                for ((s, t), e) in &lower.d[k1] {
                    if *s == i {
                        let tgt = stack_index(&layout, k + 1, (k1 + 1, *t, j));
                        add_entry(layer, (src_idx, tgt), lift_lower(e, &y.flat));
                    }
                }
            }
            if k2 < upper.d.len() {
                let odd = (lower.h_min + k1 as i32).rem_euclid(2) == 1;
                for ((s, t), e) in &upper.d[k2] {
                    if *s == j {
                        let tgt = stack_index(&layout, k + 1, (k1, i, *t));
                        let cob = lift_upper(&x.flat, e);
                        add_entry(layer, (src_idx, tgt), if odd { cob.neg() } else { cob });
                    }
                }
            }
        }
    }
    Complex { h_min: lower.h_min + upper.h_min, cols, d }
}

/// Stack `upper` on top of `lower` (vertical tangle composition).  The upper
/// differential acquires the Koszul sign `(-1)^{h_lower}`.
pub fn stack(lower: &Complex, upper: &Complex) -> Complex {
    stack_generic(
        lower,
        upper,
        &|x, y| vstack_flat(x, y).expect("stack width mismatch").0,
        &|e, y| e.vstack(&Cob::identity(y)),
        &|x, e| Cob::identity(x).vstack(e),
    )
}

/// Place `right` to the right of `left`.  The right differential acquires the
/// Koszul sign `(-1)^{h_left}`.
pub fn hstack(left: &Complex, right: &Complex) -> Complex {
    stack_generic(
        left,
        right,
        &hcompose_flat,
        &|e, y| e.hcompose(&Cob::identity(y)),
        &|x, e| Cob::identity(x).hcompose(e),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub dq: i32,
    /// (absolute homological degree, source index, target index) -> morphism.
    pub entries: BTreeMap<(i32, usize, usize), Cob>,
}

impl ChainMap {
    pub fn zero(dq: i32) -> Self {
        ChainMap { dq, entries: BTreeMap::new() }
    }

    pub fn identity(c: &Complex) -> Self {
        let mut entries = BTreeMap::new();
        for (k, col) in c.cols.iter().enumerate() {
            for (i, o) in col.iter().enumerate() {
                entries.insert((c.h_min + k as i32, i, i), Cob::identity(&o.flat));
            }
        }
        ChainMap { dq: 0, entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, key: (i32, usize, usize), cob: Cob) {
        if cob.is_zero() {
            return;
        }
        match self.entries.remove(&key) {
            None => {
                self.entries.insert(key, cob);
            }
            Some(old) => {
                let sum = old.add(&cob);
                if !sum.is_zero() {
                    self.entries.insert(key, sum);
                }
            }
        }
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let mut r = ChainMap::zero(self.dq + other.dq);
        for ((h, i, m), e) in &self.entries {
            for ((h2, m2, j), f) in &other.entries {
                if h == h2 && m == m2 {
                    r.add_entry((*h, *i, *j), e.compose(f));
                }
            }
        }
        r
    }

    pub fn scale(&self, c: &Q) -> ChainMap {
        let mut r = ChainMap::zero(self.dq);
        for (k, e) in &self.entries {
            r.add_entry(*k, e.scale(c));
        }
        r
    }

    pub fn neg(&self) -> ChainMap {
        self.scale(&-Q::from_integer(1.into()))
    }

    pub fn add(&self, o: &ChainMap) -> ChainMap {
        assert_eq!(self.dq, o.dq, "sum of maps with different degrees");
        let mut r = self.clone();
        for (k, e) in &o.entries {
            r.add_entry(*k, e.clone());
        }
        r
    }

    pub fn sub(&self, o: &ChainMap) -> ChainMap {
        self.add(&o.neg())
    }

    /// Does `self` commute with the differentials of `a` and `b`?
    pub fn is_chain_map(&self, a: &Complex, b: &Complex) -> bool {
        let h_lo = a.h_min.min(b.h_min) - 1;
        let h_hi = (a.h_min + a.n_cols() as i32).max(b.h_min + b.n_cols() as i32);
        for h in h_lo..=h_hi {
            let mut acc: Diff = BTreeMap::new();
            // f then d_b ...
            if let Some(kb) = b.col_at(h) {
                if kb < b.d.len() {
                    for ((h2, i, m), e) in &self.entries {
                        if *h2 != h {
                            continue;
                        }
                        for ((m2, j), g) in &b.d[kb] {
                            if m == m2 {
                                add_entry(&mut acc, (*i, *j), e.compose(g));
                            }
                        }
                    }
                }
            }
            // ... minus d_a then f.
            if let Some(ka) = a.col_at(h) {
                if ka < a.d.len() {
                    for ((i, m), e) in &a.d[ka] {
                        for ((h2, m2, j), g) in &self.entries {
                            if *h2 == h + 1 && m == m2 {
                                add_entry(&mut acc, (*i, *j), e.compose(g).neg());
                            }
                        }
                    }
                }
            }
            if !acc.is_empty() {
                return false;
            }
        }
        true
    }

    pub fn degrees_ok(&self, a: &Complex, b: &Complex) -> bool {
        self.entries.iter().all(|((h, i, j), e)| {
            let (Some(ka), Some(kb)) = (a.col_at(*h), b.col_at(*h)) else {
                return false;
            };
            e.deg() == Some(self.dq + a.cols[ka][*i].q - b.cols[kb][*j].q)
        })
    }

    /// Lift `self: A -> B` to `stack(X, A) -> stack(X, B)` over a fixed lower
    /// complex; no signs for maps of homological degree zero.
    pub fn lift_stack_upper(&self, x: &Complex, a: &Complex, b: &Complex) -> ChainMap {
        let la = stack_layout(&x.shape(), &a.shape());
        let lb = stack_layout(&x.shape(), &b.shape());
        let mut r = ChainMap::zero(self.dq);
        for (k1, col) in x.cols.iter().enumerate() {
            for (i, xo) in col.iter().enumerate() {
                let idx = Cob::identity(&xo.flat);
                for ((h, s, t), e) in &self.entries {
                    let (Some(ka), Some(kb)) = (a.col_at(*h), b.col_at(*h)) else {
                        continue;
                    };
                    let si = stack_index(&la, k1 + ka, (k1, i, *s));
                    let ti = stack_index(&lb, k1 + kb, (k1, i, *t));
                    r.add_entry((x.h_min + k1 as i32 + *h, si, ti), idx.vstack(e));
                }
            }
        }
        r
    }

    /// Lift `self: A -> B` to `stack(A, Y) -> stack(B, Y)` over a fixed upper
    /// complex.
    pub fn lift_stack_lower(&self, a: &Complex, b: &Complex, y: &Complex) -> ChainMap {
        let la = stack_layout(&a.shape(), &y.shape());
        let lb = stack_layout(&b.shape(), &y.shape());
        let mut r = ChainMap::zero(self.dq);
        for (k2, col) in y.cols.iter().enumerate() {
            for (j, yo) in col.iter().enumerate() {
                let idy = Cob::identity(&yo.flat);
                for ((h, s, t), e) in &self.entries {
                    let (Some(ka), Some(kb)) = (a.col_at(*h), b.col_at(*h)) else {
                        continue;
                    };
                    let si = stack_index(&la, ka + k2, (ka, *s, j));
                    let ti = stack_index(&lb, kb + k2, (kb, *t, j));
                    r.add_entry((*h + y.h_min + k2 as i32, si, ti), e.vstack(&idy));
                }
            }
        }
        r
    }
}

/// Mapping cone of a chain map `f: A -> B` with bidegree (0, 0): `A` shifted
/// to `h - 1` with negated differential, `B` unchanged, `f` as the connecting
/// entries.
pub fn cone(f: &ChainMap, a: &Complex, b: &Complex) -> Complex {
    assert_eq!(f.dq, 0, "cone of a map with nonzero q-degree");
    if a.cols.is_empty() {
        return b.clone();
    }
    if b.cols.is_empty() {
        return a.shift_h(-1);
    }
    let h_min = (a.h_min - 1).min(b.h_min);
    let h_max = (a.h_min - 1 + a.n_cols() as i32 - 1).max(b.h_min + b.n_cols() as i32 - 1);
    let n = (h_max - h_min + 1) as usize;
    // Column of degree h holds A-objects of degree h + 1, then B-objects of
    // degree h.
    let a_part = |h: i32| a.col_at(h + 1).map(|k| a.cols[k].len()).unwrap_or(0);
    let mut cols: Vec<Vec<Obj>> = Vec::with_capacity(n);
    for k in 0..n {
        let h = h_min + k as i32;
        let mut col = Vec::new();
        if let Some(ka) = a.col_at(h + 1) {
            col.extend(a.cols[ka].iter().cloned());
        }
        if let Some(kb) = b.col_at(h) {
            col.extend(b.cols[kb].iter().cloned());
        }
        cols.push(col);
    }
    let mut d: Vec<Diff> = vec![BTreeMap::new(); n.saturating_sub(1)];
    for (k, layer) in d.iter_mut().enumerate() {
        let h = h_min + k as i32;
        if let Some(ka) = a.col_at(h + 1) {
            if ka < a.d.len() {
                for ((s, t), e) in &a.d[ka] {
                    add_entry(layer, (*s, *t), e.neg());
                }
            }
            for ((h2, s, t), e) in &f.entries {
                if *h2 == h + 1 {
                    add_entry(layer, (*s, a_part(h + 1) + t), e.clone());
                }
            }
        }
        if let Some(kb) = b.col_at(h) {
            if kb < b.d.len() {
                for ((s, t), e) in &b.d[kb] {
                    add_entry(layer, (a_part(h) + s, a_part(h + 1) + t), e.clone());
                }
            }
        }
    }
    Complex { h_min, cols, d }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cob::tangle::FlatTangle;

    fn saddle_complex(q0: i32, h: i32) -> Complex {
        // One positive-crossing bracket column pair: turnback at (h, q0 + 1),
        // identity at (h + 1, q0), saddle between them.
        let id2 = FlatTangle::identity(2);
        let tau = FlatTangle::from_pairs(2, 2, &[(0, 1), (2, 3)], 0).unwrap();
        let mut d0 = BTreeMap::new();
        d0.insert((0, 0), Cob::saddle_arcs(&tau, &id2));
        Complex {
            h_min: h,
            cols: vec![
                vec![Obj { flat: tau, q: q0 + 1 }],
                vec![Obj { flat: id2, q: q0 }],
            ],
            d: vec![d0],
        }
    }

    #[test]
    fn saddle_complex_is_valid() {
        let c = saddle_complex(0, -1);
        assert!(c.check_d2());
        assert!(c.check_degrees());
    }

    #[test]
    fn stack_squares_anticommute() {
        let c = saddle_complex(0, 0);
        let s = stack(&c, &c);
        assert_eq!(s.shape(), vec![1, 2, 1]);
        assert!(s.check_d2(), "Koszul sign must make the square anticommute");
        assert!(s.check_degrees());
        let s3 = stack(&s, &c);
        assert!(s3.check_d2());
        assert_eq!(s3.shape(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn hstack_squares_anticommute() {
        let c = saddle_complex(0, 0);
        let s = hstack(&c, &c);
        assert!(s.check_d2());
        assert!(s.check_degrees());
        let m = hstack(&s, &saddle_complex(2, -1));
        assert!(m.check_d2());
        assert_eq!(m.h_min, -1);
    }

    #[test]
    fn shift_h_negates_differential() {
        let c = saddle_complex(0, 0);
        let s = c.shift_h(1);
        assert_eq!(s.h_min, 1);
        assert_eq!(s.d[0][&(0, 0)], c.d[0][&(0, 0)].neg());
        assert_eq!(c.shift_h(2).d[0][&(0, 0)], c.d[0][&(0, 0)]);
        assert!(s.check_d2());
    }

    #[test]
    fn identity_is_chain_map() {
        let c = stack(&saddle_complex(0, 0), &saddle_complex(0, 0));
        let id = ChainMap::identity(&c);
        assert!(id.is_chain_map(&c, &c));
        assert!(id.degrees_ok(&c, &c));
        assert_eq!(id.compose(&id), id);
    }

    #[test]
    fn cone_of_identity_is_valid() {
        let c = saddle_complex(0, 0);
        let f = ChainMap::identity(&c);
        let cn = cone(&f, &c, &c);
        assert_eq!(cn.shape(), vec![1, 2, 1]);
        assert!(cn.check_d2());
        assert!(cn.check_degrees());
    }

    #[test]
    fn lifted_identity_matches_stack() {
        let c = saddle_complex(0, 0);
        let x = Complex::single(FlatTangle::identity(2), 0, 0);
        let f = ChainMap::identity(&c);
        let up = f.lift_stack_upper(&x, &c, &c);
        let low = f.lift_stack_lower(&c, &c, &x);
        let sc_up = stack(&x, &c);
        let sc_low = stack(&c, &x);
        assert_eq!(up, ChainMap::identity(&sc_up));
        assert_eq!(low, ChainMap::identity(&sc_low));
        assert!(up.is_chain_map(&sc_up, &sc_up));
    }
}
