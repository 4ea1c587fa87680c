//! Graded linear algebra over fully reduced closed models.
//!
//! A closed complex with zero differential is its own homology; its objects,
//! grouped by bidegree, form a basis.  Chain maps between two such models
//! become block matrices over Q, one block per source bidegree.  This module
//! provides that matrix layer together with the symmetrizer built from swap
//! operators and the image/restriction machinery used by the directed
//! systems.

use std::collections::BTreeMap;

use crate::arith::{qr, Q, QMat};
use crate::complex::{ChainMap, Complex};
use num::{One, Zero};

/// Basis layout of a closed zero-differential model, optionally restricted to
/// a window of q-degrees.  Objects outside the window are dropped.
#[derive(Clone, Debug)]
pub struct Graded {
    pub dims: BTreeMap<(i32, i32), usize>,
    /// (absolute h, object index) -> (bidegree, slot within the block).
    pos: BTreeMap<(i32, usize), ((i32, i32), usize)>,
}

impl Graded {
    pub fn new(c: &Complex) -> Self {
        Self::windowed(c, None)
    }

    /// `window` bounds the q-degree (inclusive).
    pub fn windowed(c: &Complex, window: Option<(i32, i32)>) -> Self {
        assert!(c.has_zero_d(), "graded basis of a model with differential");
        let mut dims = BTreeMap::new();
        let mut pos = BTreeMap::new();
        for (k, col) in c.cols.iter().enumerate() {
            let h = c.h_min + k as i32;
            for (i, ob) in col.iter().enumerate() {
                assert!(
                    ob.flat.bottom == 0 && ob.flat.top == 0 && ob.flat.loops == 0,
                    "graded basis of a non-closed model"
                );
                if let Some((lo, hi)) = window {
                    if ob.q < lo || ob.q > hi {
                        continue;
                    }
                }
                let d = dims.entry((h, ob.q)).or_insert(0usize);
                pos.insert((h, i), ((h, ob.q), *d));
                *d += 1;
            }
        }
        Graded { dims, pos }
    }

    pub fn dim(&self, deg: (i32, i32)) -> usize {
        self.dims.get(&deg).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn locate(&self, h: i32, idx: usize) -> Option<((i32, i32), usize)> {
        self.pos.get(&(h, idx)).copied()
    }
}

/// Block matrix of a homological-degree-preserving map between graded
/// spaces.  Blocks are keyed by source bidegree; the block at `(h, q)` maps
/// into `(h, q + dq)` and has shape `tgt_dim x src_dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct GMap {
    pub dq: i32,
    pub blocks: BTreeMap<(i32, i32), QMat>,
}

impl GMap {
    pub fn new(src: &Graded, tgt: &Graded, dq: i32) -> Self {
        let mut blocks = BTreeMap::new();
        for (&deg, &n) in &src.dims {
            let m = tgt.dim((deg.0, deg.1 + dq));
            if n > 0 && m > 0 {
                blocks.insert(deg, QMat::zeros(m, n));
            }
        }
        GMap { dq, blocks }
    }

    pub fn identity(g: &Graded) -> Self {
        let mut blocks = BTreeMap::new();
        for (&deg, &n) in &g.dims {
            blocks.insert(deg, QMat::identity(n));
        }
        GMap { dq: 0, blocks }
    }

    /// Matrix of a chain map between two closed models.  Entries with either
    /// endpoint outside the graded windows are dropped (compression to the
    /// window).
    pub fn from_chain(f: &ChainMap, src: &Graded, tgt: &Graded) -> Self {
        let mut m = GMap::new(src, tgt, f.dq);
        for ((h, i, j), e) in &f.entries {
            let (sd, si) = match src.locate(*h, *i) {
                Some(x) => x,
                None => continue,
            };
            let (td, ti) = match tgt.locate(*h, *j) {
                Some(x) => x,
                None => continue,
            };
            assert_eq!(td, (sd.0, sd.1 + f.dq), "entry violates the map degree");
            let v = e.scalar();
            if !v.is_zero() {
                m.blocks
                    .entry(sd)
                    .or_insert_with(|| QMat::zeros(tgt.dim(td), src.dim(sd)))
                    .set(ti, si, v);
            }
        }
        m
    }

    pub fn block(&self, deg: (i32, i32)) -> Option<&QMat> {
        self.blocks.get(&deg)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &GMap) -> GMap {
        let mut blocks = BTreeMap::new();
        for (&deg, a) in &self.blocks {
            let mid = (deg.0, deg.1 + self.dq);
            if let Some(b) = other.blocks.get(&mid) {
                blocks.insert(deg, b.mul(a));
            }
        }
        GMap { dq: self.dq + other.dq, blocks }
    }

    pub fn add(&self, o: &GMap) -> GMap {
        assert_eq!(self.dq, o.dq);
        let mut blocks = self.blocks.clone();
        for (&deg, b) in &o.blocks {
            match blocks.get_mut(&deg) {
                Some(a) => *a = a.add(b),
                None => {
                    blocks.insert(deg, b.clone());
                }
            }
        }
        GMap { dq: self.dq, blocks }
    }

    pub fn sub(&self, o: &GMap) -> GMap {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Q) -> GMap {
        let blocks = self.blocks.iter().map(|(&d, b)| (d, b.scale(c))).collect();
        GMap { dq: self.dq, blocks }
    }

    pub fn neg(&self) -> GMap {
        self.scale(&-Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.is_zero())
    }

    /// Equality tolerant to absent (zero) blocks.
    pub fn eq_map(&self, o: &GMap) -> bool {
        if self.dq != o.dq {
            return false;
        }
        let keys: std::collections::BTreeSet<_> =
            self.blocks.keys().chain(o.blocks.keys()).collect();
        for k in keys {
            match (self.blocks.get(k), o.blocks.get(k)) {
                (Some(a), Some(b)) => {
                    if a != b {
                        return false;
                    }
                }
                (Some(a), None) | (None, Some(a)) => {
                    if !a.is_zero() {
                        return false;
                    }
                }
                (None, None) => {}
            }
        }
        true
    }

    pub fn rank(&self) -> usize {
        self.blocks.values().map(|b| b.rank()).sum()
    }

    /// Per-bidegree ranks, keyed by source bidegree.
    pub fn block_ranks(&self) -> BTreeMap<(i32, i32), usize> {
        self.blocks
            .iter()
            .filter_map(|(&d, b)| {
                let r = b.rank();
                if r > 0 {
                    Some((d, r))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn apply(&self, deg: (i32, i32), v: &QMat) -> QMat {
        match self.blocks.get(&deg) {
            Some(b) => b.mul(v),
            None => QMat::zeros(0, v.cols),
        }
    }
}

/// Symmetrizer over `k = swaps.len() + 1` objects from the adjacent swap
/// operators, via the right-coset recursion
/// `e_k = (1/k) e_{k-1} (1 + sum_m s_{k-1} s_{k-2} .. s_{k-m})`.
pub fn symmetrizer(id: &GMap, swaps: &[GMap]) -> GMap {
    let mut e = id.clone();
    for kk in 2..=swaps.len() + 1 {
        let mut p = swaps[kk - 2].clone();
        let mut c = id.add(&p);
        for m in 2..kk {
            p = swaps[kk - 1 - m].compose(&p);
            c = c.add(&p);
        }
        e = c.scale(&qr(1, kk as i64)).compose(&e);
    }
    e
}

/// Deterministic small-integer test vectors.
fn test_vectors(n: usize, count: usize) -> Vec<QMat> {
    let mut state = 0x9e3779b97f4a7c15u64 ^ (n as u64);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 17) as i64 - 8
    };
    (0..count)
        .map(|_| {
            let mut v = QMat::zeros(n, 1);
            for i in 0..n {
                v.set(i, 0, qr(next(), 1));
            }
            v
        })
        .collect()
}

/// Verify `e . e == e`.  Blocks with at most `full_limit` columns are checked
/// exactly; larger blocks are checked on deterministic sample vectors.
pub fn check_idempotent(e: &GMap, full_limit: usize) -> Result<(), String> {
    assert_eq!(e.dq, 0);
    for (&deg, b) in &e.blocks {
        if b.cols <= full_limit {
            if &b.mul(b) != b {
                return Err(format!("symmetrizer not idempotent at {:?}", deg));
            }
        } else {
            for v in test_vectors(b.cols, 4) {
                let ev = b.mul(&v);
                if b.mul(&ev) != ev {
                    return Err(format!("symmetrizer not idempotent at {:?} (sampled)", deg));
                }
            }
        }
    }
    Ok(())
}

/// A choice of basis for the image of an idempotent, one block per bidegree.
/// Each block is `n x r` with independent columns.
#[derive(Clone, Debug)]
pub struct Image {
    pub basis: BTreeMap<(i32, i32), QMat>,
}

impl Image {
    pub fn dims(&self) -> BTreeMap<(i32, i32), usize> {
        self.basis
            .iter()
            .filter_map(|(&d, b)| if b.cols > 0 { Some((d, b.cols)) } else { None })
            .collect()
    }

    pub fn dim(&self, deg: (i32, i32)) -> usize {
        self.basis.get(&deg).map_or(0, |b| b.cols)
    }

    pub fn total(&self) -> usize {
        self.basis.values().map(|b| b.cols).sum()
    }
}

/// Basis of `im(e)`: the pivot columns of each block.
pub fn image(e: &GMap) -> Image {
    assert_eq!(e.dq, 0);
    let mut basis = BTreeMap::new();
    for (&deg, b) in &e.blocks {
        let (_, pivots) = b.rref();
        if pivots.is_empty() {
            continue;
        }
        let mut m = QMat::zeros(b.rows, pivots.len());
        for (c, &j) in pivots.iter().enumerate() {
            for i in 0..b.rows {
                m.set(i, c, b.get(i, j).clone());
            }
        }
        basis.insert(deg, m);
    }
    Image { basis }
}

/// Matrix of `e_tgt . f` restricted to image bases: columns of the source
/// basis are pushed through `f`, projected by `e_tgt`, and solved in the
/// target basis.  Fails if a projected vector leaves the target image.
pub fn induced(
    f: &GMap,
    e_tgt: &GMap,
    src_im: &Image,
    tgt_im: &Image,
) -> Result<GMap, String> {
    let mut blocks = BTreeMap::new();
    for (&deg, bs) in &src_im.basis {
        if bs.cols == 0 {
            continue;
        }
        let tdeg = (deg.0, deg.1 + f.dq);
        let w = e_tgt.apply(tdeg, &f.apply(deg, bs));
        let bt = tgt_im.basis.get(&tdeg);
        if w.rows == 0 || w.is_zero() {
            if let Some(bt) = bt {
                blocks.insert(deg, QMat::zeros(bt.cols, bs.cols));
            }
            continue;
        }
        let bt = bt.ok_or_else(|| format!("image of {:?} hits an empty target block", deg))?;
        let sol = bt
            .solve(&w)
            .ok_or_else(|| format!("projected image at {:?} is not in the target image", deg))?;
        blocks.insert(deg, sol);
    }
    Ok(GMap { dq: f.dq, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qi;
    use crate::cob::FlatTangle;
    use crate::complex::{Complex, Obj};

    fn model(objs: &[(i32, i32)]) -> Complex {
        // All objects in column h=0 except as listed; build a small closed
        // zero-differential complex by columns.
        let hmin = objs.iter().map(|o| o.0).min().unwrap();
        let hmax = objs.iter().map(|o| o.0).max().unwrap();
        let mut cols = vec![Vec::new(); (hmax - hmin + 1) as usize];
        for &(h, q) in objs {
            cols[(h - hmin) as usize].push(Obj { flat: FlatTangle::empty(), q });
        }
        let d = vec![BTreeMap::new(); cols.len().saturating_sub(1)];
        Complex { h_min: hmin, cols, d }
    }

    #[test]
    fn graded_and_window() {
        let c = model(&[(0, -1), (0, 1), (0, 1), (1, 3)]);
        let g = Graded::new(&c);
        assert_eq!(g.total(), 4);
        assert_eq!(g.dim((0, 1)), 2);
        let gw = Graded::windowed(&c, Some((0, 2)));
        assert_eq!(gw.total(), 2);
        assert_eq!(gw.dim((0, -1)), 0);
    }

    #[test]
    fn symmetrizer_of_plain_swaps() {
        // Plain permutation action of S_3 on three letters.
        let c = model(&[(0, 0), (0, 0), (0, 0)]);
        let g = Graded::new(&c);
        let id = GMap::identity(&g);
        let perm = |p: [usize; 3]| {
            let mut m = QMat::zeros(3, 3);
            for (j, &i) in p.iter().enumerate() {
                m.set(i, j, qi(1));
            }
            GMap { dq: 0, blocks: [((0, 0), m)].into_iter().collect() }
        };
        let s0 = perm([1, 0, 2]);
        let s1 = perm([0, 2, 1]);
        let e = symmetrizer(&id, &[s0.clone(), s1.clone()]);
        check_idempotent(&e, 10).unwrap();
        assert!(e.compose(&s0).eq_map(&e));
        assert!(s1.compose(&e).eq_map(&e));
        let im = image(&e);
        assert_eq!(im.total(), 1);
        // Signed action: swap with a sign has the sign representation in its
        // image; symmetrizing kills everything except the alternating part.
        let t0 = s0.neg();
        let t1 = s1.neg();
        let e2 = symmetrizer(&id, &[t0, t1]);
        check_idempotent(&e2, 10).unwrap();
        assert_eq!(image(&e2).total(), 0);
    }

    #[test]
    fn induced_map_on_images() {
        let c = model(&[(0, 0), (0, 0)]);
        let g = Graded::new(&c);
        let id = GMap::identity(&g);
        let mut sw = QMat::zeros(2, 2);
        sw.set(0, 1, qi(1));
        sw.set(1, 0, qi(1));
        let s = GMap { dq: 0, blocks: [((0, 0), sw)].into_iter().collect() };
        let e = symmetrizer(&id, &[s]);
        let im = image(&e);
        assert_eq!(im.total(), 1);
        // The identity induces the identity on the invariant line.
        let ind = induced(&id, &e, &im, &im).unwrap();
        assert!(ind.eq_map(&GMap {
            dq: 0,
            blocks: [((0, 0), QMat::identity(1))].into_iter().collect()
        }));
    }
}
