//! Delooping and Gaussian elimination with tracked retractions.
//!
//! Both moves replace a complex by a homotopy equivalent one and (optionally)
//! record the pair of chain maps `p: original -> small`, `i: small ->
//! original` with `p . i = id` on the small side, composing across steps.

use std::collections::BTreeMap;

use num::{One, Signed};

use super::chain::{add_entry, ChainMap, Complex, Diff, Obj};
use crate::arith::Q;
use crate::cob::Cob;

#[derive(Clone, Debug)]
pub struct Reduction {
    pub small: Complex,
    /// original -> small.
    pub p: Option<ChainMap>,
    /// small -> original.
    pub i: Option<ChainMap>,
}

impl Reduction {
    pub fn p(&self) -> &ChainMap {
        self.p.as_ref().expect("reduction was not tracked")
    }

    pub fn i(&self) -> &ChainMap {
        self.i.as_ref().expect("reduction was not tracked")
    }
}

/// Transfer a chain map `f` between the originals of two tracked reductions
/// to their small models.
pub fn transfer(f: &ChainMap, red_src: &Reduction, red_tgt: &Reduction) -> ChainMap {
    red_src.i().compose(f).compose(red_tgt.p())
}

/// Identity entries from each object of `c_from` onto its image under
/// `remap`; objects sent to `None` are dropped.
fn identity_between(c_from: &Complex, remap: &dyn Fn(i32, usize) -> Option<usize>) -> ChainMap {
    let mut m = ChainMap::zero(0);
    for (k, col) in c_from.cols.iter().enumerate() {
        let h = c_from.h_min + k as i32;
        for (j, o) in col.iter().enumerate() {
            if let Some(j2) = remap(h, j) {
                m.add_entry((h, j, j2), Cob::identity(&o.flat));
            }
        }
    }
    m
}

/// Replace the first object whose flat carries a loop by its two delooped
/// copies at `q + 1` and `q - 1` (in that order).
fn deloop_once(c: &Complex, track: bool) -> Option<(Complex, Option<ChainMap>, Option<ChainMap>)> {
    let (k, idx) = c.cols.iter().enumerate().find_map(|(k, col)| {
        col.iter().position(|o| o.flat.loops > 0).map(|i| (k, i))
    })?;
    let h_k = c.h_min + k as i32;
    let t = c.cols[k][idx].flat.clone();
    let q = c.cols[k][idx].q;
    let t1 = t.with_loops(t.loops - 1);
    let p_plus = Cob::death(&t, 0, false);
    let p_minus = Cob::death(&t, 0, true);
    let i_plus = Cob::birth(&t1, 0, true);
    let i_minus = Cob::birth(&t1, 0, false);

    let mut cols = c.cols.clone();
    cols[k].splice(
        idx..=idx,
        [Obj { flat: t1.clone(), q: q + 1 }, Obj { flat: t1.clone(), q: q - 1 }],
    );
    let remap = |j: usize| if j > idx { j + 1 } else { j };

    let mut d = c.d.clone();
    if k > 0 {
        let mut layer: Diff = BTreeMap::new();
        for ((s, tgt), e) in &c.d[k - 1] {
            if *tgt == idx {
                add_entry(&mut layer, (*s, idx), e.compose(&p_plus));
                add_entry(&mut layer, (*s, idx + 1), e.compose(&p_minus));
            } else {
                add_entry(&mut layer, (*s, remap(*tgt)), e.clone());
            }
        }
        d[k - 1] = layer;
    }
    if k < c.d.len() {
        let mut layer: Diff = BTreeMap::new();
        for ((s, tgt), e) in &c.d[k] {
            if *s == idx {
                add_entry(&mut layer, (idx, *tgt), i_plus.compose(e));
                add_entry(&mut layer, (idx + 1, *tgt), i_minus.compose(e));
            } else {
                add_entry(&mut layer, (remap(*s), *tgt), e.clone());
            }
        }
        d[k] = layer;
    }
    let new = Complex { h_min: c.h_min, cols, d };

    let (p, i) = if track {
        let mut p = identity_between(c, &|h, j| {
            if h == h_k {
                (j != idx).then(|| remap(j))
            } else {
                Some(j)
            }
        });
        p.add_entry((h_k, idx, idx), p_plus);
        p.add_entry((h_k, idx, idx + 1), p_minus);
        let mut i = identity_between(&new, &|h, j| {
            if h == h_k {
                match j {
                    _ if j == idx || j == idx + 1 => None,
                    _ if j > idx + 1 => Some(j - 1),
                    _ => Some(j),
                }
            } else {
                Some(j)
            }
        });
        i.add_entry((h_k, idx, idx), i_plus);
        i.add_entry((h_k, idx + 1, idx), i_minus);
        (Some(p), Some(i))
    } else {
        (None, None)
    };
    Some((new, p, i))
}

/// An entry usable as a Gaussian pivot: an isomorphism `c . id` between equal
/// loop-free flats.
fn pivot_coeff(e: &Cob) -> Option<&Q> {
    if e.src == e.tgt && e.src.loops == 0 && e.terms.len() == 1 {
        e.terms.get(&0)
    } else {
        None
    }
}

fn eliminate_once(c: &Complex, track: bool)
    -> Option<(Complex, Option<ChainMap>, Option<ChainMap>)>
{
    // Pick the pivot minimizing (non-unit coefficient, fill-in, position).
    let mut best: Option<(usize, usize, usize, (usize, usize))> = None;
    for (k, layer) in c.d.iter().enumerate() {
        let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
        let mut cols: BTreeMap<usize, usize> = BTreeMap::new();
        for (s, t) in layer.keys() {
            *rows.entry(*s).or_insert(0) += 1;
            *cols.entry(*t).or_insert(0) += 1;
        }
        for ((a, b), e) in layer {
            let Some(q) = pivot_coeff(e) else { continue };
            let unit = if q.is_integer() && q.numer().abs().is_one() { 0 } else { 1 };
            let cost = (rows[a] - 1) * (cols[b] - 1);
            let key = (unit, cost, k, (*a, *b));
            if best.as_ref().map_or(true, |b0| key < *b0) {
                best = Some(key);
            }
        }
    }
    let (_, _, k, (a, b)) = best?;
    let phi = c.d[k][&(a, b)].clone();
    let coeff = pivot_coeff(&phi).unwrap().clone();
    let minus_inv = -coeff.recip();
    let h_k = c.h_min + k as i32;

    let beta: BTreeMap<usize, Cob> = c.d[k]
        .iter()
        .filter(|((s, t), _)| *s == a && *t != b)
        .map(|((_, t), e)| (*t, e.clone()))
        .collect();
    let gamma: BTreeMap<usize, Cob> = c.d[k]
        .iter()
        .filter(|((s, t), _)| *t == b && *s != a)
        .map(|((s, _), e)| (*s, e.clone()))
        .collect();

    let rm_a = |j: usize| if j > a { j - 1 } else { j };
    let rm_b = |j: usize| if j > b { j - 1 } else { j };

    let mut cols = c.cols.clone();
    cols[k].remove(a);
    cols[k + 1].remove(b);

    let mut d = c.d.clone();
    let mut layer: Diff = BTreeMap::new();
    for ((s, t), e) in &c.d[k] {
        if *s != a && *t != b {
            add_entry(&mut layer, (rm_a(*s), rm_b(*t)), e.clone());
        }
    }
    for (s, g) in &gamma {
        for (t, be) in &beta {
            add_entry(
                &mut layer,
                (rm_a(*s), rm_b(*t)),
                g.compose(be).scale(&minus_inv),
            );
        }
    }
    d[k] = layer;
    if k > 0 {
        let mut layer: Diff = BTreeMap::new();
        for ((s, t), e) in &c.d[k - 1] {
            if *t != a {
                add_entry(&mut layer, (*s, rm_a(*t)), e.clone());
            }
        }
        d[k - 1] = layer;
    }
    if k + 1 < c.d.len() {
        let mut layer: Diff = BTreeMap::new();
        for ((s, t), e) in &c.d[k + 1] {
            if *s != b {
                add_entry(&mut layer, (rm_b(*s), *t), e.clone());
            }
        }
        d[k + 1] = layer;
    }
    let new = Complex { h_min: c.h_min, cols, d };

    let (p, i) = if track {
        let mut p = identity_between(c, &|h, j| {
            if h == h_k {
                (j != a).then(|| rm_a(j))
            } else if h == h_k + 1 {
                (j != b).then(|| rm_b(j))
            } else {
                Some(j)
            }
        });
        for (t, be) in &beta {
            p.add_entry((h_k + 1, b, rm_b(*t)), be.scale(&minus_inv));
        }
        let mut i = identity_between(&new, &|h, j| {
            if h == h_k {
                Some(if j >= a { j + 1 } else { j })
            } else if h == h_k + 1 {
                Some(if j >= b { j + 1 } else { j })
            } else {
                Some(j)
            }
        });
        for (s, g) in &gamma {
            i.add_entry((h_k, rm_a(*s), a), g.scale(&minus_inv));
        }
        (Some(p), Some(i))
    } else {
        (None, None)
    };
    Some((new, p, i))
}

/// Deloop everything, then eliminate all pivots; track retraction data when
/// asked.  On closed diagrams this always reaches a zero differential.
pub fn simplify(c: &Complex, track: bool) -> Reduction {
    let mut cur = c.clone();
    let mut p = track.then(|| ChainMap::identity(&cur));
    let mut i = track.then(|| ChainMap::identity(&cur));
    let step = |cur: &mut Complex,
                    p: &mut Option<ChainMap>,
                    i: &mut Option<ChainMap>,
                    out: (Complex, Option<ChainMap>, Option<ChainMap>)| {
        let (new, ps, is) = out;
        *cur = new;
        if track {
            *p = Some(p.take().unwrap().compose(&ps.unwrap()));
            *i = Some(is.unwrap().compose(&i.take().unwrap()));
        }
    };
    while let Some(out) = deloop_once(&cur, track) {
        step(&mut cur, &mut p, &mut i, out);
    }
    while let Some(out) = eliminate_once(&cur, track) {
        step(&mut cur, &mut p, &mut i, out);
    }
    Reduction { small: cur.trim(), p, i }
}
