//! Movies of sliced diagrams: local rewrite events (isotopies, surgeries,
//! births) together with the chain maps they induce between the scanned
//! models of the before/after diagrams.
//!
//! A movie rewrites a slice list event by event.  Every event replaces a
//! contiguous block of slices by another block with the same outer interface.
//! The induced map is assembled from a local morphism between the reduced
//! block complexes, transported through the prefix model by a detour-tracked
//! fold, and pushed through the suffix slices in lockstep with the scanning
//! reductions on both sides.  Both directions of every event are produced, so
//! each movie yields a forward and a backward map between the canonical
//! models of its endpoints.

use std::collections::HashMap;

use crate::cob::tangle::{vstack_flat, HomStructure};
use crate::cob::{Cob, FlatTangle};
use crate::complex::chain::{stack_index, stack_layout};
use crate::complex::{simplify, stack, transfer, ChainMap, Complex, Reduction};
use crate::khr2::bracket::slice_complex;
use crate::khr2::Slice;

/// Width below slice `slices.len()` when scanning from `w0`.
pub fn scan_width(w0: usize, slices: &[Slice]) -> usize {
    slices.iter().fold(w0, |w, s| s.width_out(w))
}

/// Plain nested fold of the block slices with no reduction: repeated
/// `stack` starting from the identity tangle.  Used for the local complexes
/// of event blocks.
pub fn raw_fold(w: usize, slices: &[Slice]) -> Complex {
    let mut c = Complex::single(FlatTangle::identity(w), 0, 0);
    let mut wi = w;
    for s in slices {
        c = stack(&c, &slice_complex(s, wi));
        wi = s.width_out(wi);
    }
    c
}

/// Memoized scanning models of slice-list prefixes.  `scan` reproduces
/// `bracket_tangle` exactly: a strict left fold that stacks one slice at a
/// time and simplifies after each step.
#[derive(Default)]
pub struct Scanner {
    cache: HashMap<(usize, Vec<Slice>), Complex>,
}

impl Scanner {
    pub fn new() -> Self {
        Scanner::default()
    }

    pub fn scan(&mut self, width0: usize, slices: &[Slice]) -> Complex {
        let mut len = slices.len();
        while len > 0 && !self.cache.contains_key(&(width0, slices[..len].to_vec())) {
            len -= 1;
        }
        if len == 0 {
            self.cache
                .entry((width0, Vec::new()))
                .or_insert_with(|| Complex::single(FlatTangle::identity(width0), 0, 0));
        }
        for l in len..slices.len() {
            let prev = self.cache[&(width0, slices[..l].to_vec())].clone();
            let w = scan_width(width0, &slices[..l]);
            let next = simplify(&stack(&prev, &slice_complex(&slices[l], w)), false).small;
            self.cache.insert((width0, slices[..l + 1].to_vec()), next);
        }
        self.cache[&(width0, slices.to_vec())].clone()
    }
}

/// Interface footprint of a closed component threading both interfaces of a
/// triple stack: starting from middle-2 point `s0` of the component, walk its
/// segments (y-arcs, x top turnbacks, z bottom turnbacks) and collect every
/// middle-1 point it passes.
fn footprint(x: &FlatTangle, y: &FlatTangle, z: &FlatTangle, s0: usize) -> Vec<usize> {
    let mut f = Vec::new();
    let mut p = s0;
    loop {
        let mut e = y.bottom + p;
        loop {
            let q = y.pairing[e];
            if q >= y.bottom {
                p = q - y.bottom;
                break;
            }
            f.push(q);
            let r = x.pairing[x.bottom + q];
            debug_assert!(r >= x.bottom, "through loop escapes the bottom");
            let q2 = r - x.bottom;
            f.push(q2);
            e = q2;
        }
        let p2 = z.pairing[p];
        debug_assert!(p2 < z.bottom, "through loop escapes the top");
        p = p2;
        if p == s0 {
            break;
        }
    }
    f.sort_unstable();
    f
}

/// Loop relabeling between the two associations of `x . y . z`: maps the loop
/// index in the `(xy)z` order to the index of the same geometric loop in the
/// `x(yz)` order.  Loops inherited from the factors keep their identity;
/// created loops are matched by their interface point sets, walking the
/// middle layer for components that thread both interfaces.
fn loop_perm(x: &FlatTangle, y: &FlatTangle, z: &FlatTangle) -> Vec<usize> {
    let (xy, cr1) = vstack_flat(x, y).expect("associator width mismatch");
    let (_, cr2) = vstack_flat(&xy, z).expect("associator width mismatch");
    let (yz, cr3) = vstack_flat(y, z).expect("associator width mismatch");
    let (_, cr4) = vstack_flat(x, &yz).expect("associator width mismatch");
    let (nx, ny, nz) = (x.loops, y.loops, z.loops);
    let (n1, n3) = (cr1.len(), cr3.len());
    debug_assert_eq!(n1 + cr2.len(), n3 + cr4.len());
    let mut sigma = vec![usize::MAX; nx + ny + n1 + nz + cr2.len()];
    for k in 0..nx {
        sigma[k] = k;
    }
    for k in 0..ny {
        sigma[nx + k] = nx + k;
    }
    for k in 0..nz {
        sigma[nx + ny + n1 + k] = nx + ny + k;
    }
    for (i, s) in cr1.iter().enumerate() {
        let j = cr4.iter().position(|t| t == s).expect("created loop not in x(yz)");
        sigma[nx + ny + i] = nx + ny + nz + n3 + j;
    }
    for (i, s) in cr2.iter().enumerate() {
        let li = nx + ny + n1 + nz + i;
        sigma[li] = match cr3.iter().position(|t| t == s) {
            Some(j) => nx + ny + nz + j,
            None => {
                let f = footprint(x, y, z, s[0]);
                let j = cr4.iter().position(|t| *t == f).expect("through loop not matched");
                nx + ny + nz + n3 + j
            }
        };
    }
    sigma
}

/// Tube cobordism on `flat` connecting source loop `perm[j]` to target loop
/// `j`; bands are identities.
fn perm_cob(flat: &FlatTangle, perm: &[usize]) -> Cob {
    debug_assert_eq!(flat.loops, perm.len());
    let hom = HomStructure::new(flat, flat);
    let mut comps: Vec<(Vec<usize>, i32, usize)> =
        (0..hom.cycles.len()).map(|c| (vec![c], 1, 0)).collect();
    for (j, &sj) in perm.iter().enumerate() {
        comps.push((vec![hom.src_loop(sj), hom.tgt_loop(j)], 0, 0));
    }
    Cob::from_components(flat, flat, &comps)
}

/// Permutation isomorphisms `stack(a, stack(b, c)) <-> stack(stack(a, b), c)`.
/// Stacking is associative on columns and gradings, but the interleaving
/// order of objects within a column and the indexing of loops created by the
/// compositions both depend on the association; the associator reindexes the
/// objects and relabels the loops with tube entries, with no signs.  Returns
/// (forward, inverse).
pub fn associator(a: &Complex, b: &Complex, c: &Complex) -> (ChainMap, ChainMap) {
    let bc = stack(b, c);
    let src = stack(a, &bc);
    let sa = a.shape();
    let sb = b.shape();
    let sc = c.shape();
    let lbc = stack_layout(&sb, &sc);
    let sbc: Vec<usize> = lbc.iter().map(|col| col.len()).collect();
    let labc = stack_layout(&sa, &sbc);
    let lab = stack_layout(&sa, &sb);
    let sab: Vec<usize> = lab.iter().map(|col| col.len()).collect();
    let lab_c = stack_layout(&sab, &sc);
    let mut fwd = ChainMap::zero(0);
    let mut inv = ChainMap::zero(0);
    for (k, col) in labc.iter().enumerate() {
        let h = src.h_min + k as i32;
        for (s, &(k1, i, u)) in col.iter().enumerate() {
            let (k2, j, l) = lbc[k - k1][u];
            let ab = stack_index(&lab, k1 + k2, (k1, i, j));
            let t = stack_index(&lab_c, k, (k1 + k2, ab, l));
            let flat = &src.cols[k][s].flat;
            let (fx, fy, fz) =
                (&a.cols[k1][i].flat, &b.cols[k2][j].flat, &c.cols[k - k1 - k2][l].flat);
            let sigma = loop_perm(fx, fy, fz);
            let mut inv_sigma = vec![usize::MAX; sigma.len()];
            for (li, &ri) in sigma.iter().enumerate() {
                inv_sigma[ri] = li;
            }
            // Entry from the x(yz)-labeled object to the (xy)z-labeled one
            // carries sigma; the inverse carries its inverse.
            fwd.add_entry((h, s, t), perm_cob(flat, &sigma));
            inv.add_entry((h, t, s), perm_cob(flat, &inv_sigma));
        }
    }
    (fwd, inv)
}

/// Detour-tracked fold of a block over a fixed prefix model `cp`: the raw
/// nested local complex alongside a reduction of `stack(cp, raw)` whose small
/// side equals the scanner's fold, with retraction maps anchored through
/// associators at every step.
struct BlockFold {
    small: Complex,
    /// `stack(cp, raw) -> small`.
    p: ChainMap,
    /// `small -> stack(cp, raw)`.
    i: ChainMap,
    w: usize,
}

fn block_fold(cp: &Complex, w_at: usize, slices: &[Slice]) -> BlockFold {
    let mut raw = Complex::single(FlatTangle::identity(w_at), 0, 0);
    let mut small = cp.clone();
    let mut p = ChainMap::identity(cp);
    let mut i = ChainMap::identity(cp);
    let mut w = w_at;
    debug_assert_eq!(stack(cp, &raw), *cp, "stacking the identity tangle must be strict");
    for s in slices {
        let sc = slice_complex(s, w);
        let cp_raw = stack(cp, &raw);
        let red = simplify(&stack(&small, &sc), true);
        let (assoc, assoc_inv) = associator(cp, &raw, &sc);
        let p_lift = p.lift_stack_lower(&cp_raw, &small, &sc);
        let i_lift = i.lift_stack_lower(&small, &cp_raw, &sc);
        p = assoc.compose(&p_lift).compose(red.p());
        i = red.i().compose(&i_lift).compose(&assoc_inv);
        raw = stack(&raw, &sc);
        small = red.small;
        w = s.width_out(w);
    }
    let _ = raw;
    BlockFold { small, p, i, w }
}

/// What a movie event does to the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EventKind {
    /// The two blocks present isotopic tangles: either their raw local
    /// complexes are literally equal (far commutation of disjoint slices), or
    /// both reduce to a single object with the same underlying flat tangle
    /// (Reidemeister-type moves).  Induced map: identity.
    Isotopy,
    /// Both blocks are crossing-free single objects whose flats differ by one
    /// re-smoothing.  Induced map: the saddle.
    Surgery,
    /// The inserted block adds one closed loop to the flat of the removed
    /// block (which must be crossing-free).  Induced map: birth of the loop,
    /// optionally dotted.
    Birth { dotted: bool },
}

/// One local rewrite: replace `remove` slices at `at` by `insert`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Event {
    pub at: usize,
    pub remove: usize,
    pub insert: Vec<Slice>,
    pub kind: EventKind,
}

pub struct MovieOpts {
    /// Verify the chain-map property of every event map and the anchoring of
    /// the lockstep models against fresh scans.  Expensive on large systems.
    pub strict: bool,
}

impl Default for MovieOpts {
    fn default() -> Self {
        MovieOpts { strict: cfg!(debug_assertions) }
    }
}

/// Result of running a movie: models of both endpoints (shifted by the
/// caller's base offset resp. the accumulated offset) and the two induced
/// maps.
pub struct MovieResult {
    pub src: Complex,
    pub tgt: Complex,
    /// `src -> tgt`.
    pub fwd: ChainMap,
    /// `tgt -> src`.
    pub bwd: ChainMap,
    /// Total (dh, dq) shift accumulated by the events relative to the start.
    pub off: (i32, i32),
    pub end: Vec<Slice>,
}

fn single_of(c: &Complex) -> (i32, i32, FlatTangle) {
    assert_eq!(c.n_cols(), 1, "block complex is not a single column");
    assert_eq!(c.cols[0].len(), 1, "block complex is not a single object");
    (c.h_min, c.cols[0][0].q, c.cols[0][0].flat.clone())
}

struct EventMaps {
    next: Vec<Slice>,
    delta: (i32, i32),
    fwd: ChainMap,
    bwd: ChainMap,
    model: Complex,
}

fn run_event(
    scanner: &mut Scanner,
    width0: usize,
    slices: &[Slice],
    ev: &Event,
    off: (i32, i32),
    opts: &MovieOpts,
) -> EventMaps {
    assert!(ev.at + ev.remove <= slices.len(), "event block out of range");
    let prefix = &slices[..ev.at];
    let a_slices = &slices[ev.at..ev.at + ev.remove];
    let suffix = &slices[ev.at + ev.remove..];
    let w_at = scan_width(width0, prefix);
    assert_eq!(
        scan_width(w_at, a_slices),
        scan_width(w_at, &ev.insert),
        "event changes the interface width"
    );

    let cp = scanner.scan(width0, prefix);
    let ta_raw = raw_fold(w_at, a_slices);
    let tb_raw = raw_fold(w_at, &ev.insert);

    // Local route: a morphism between the reduced block complexes, or the
    // identity when the raw complexes agree on the nose.
    let (delta, loc): ((i32, i32), Option<(Cob, Cob, Option<(Reduction, Reduction)>)>) =
        match &ev.kind {
            EventKind::Isotopy => {
                if ta_raw == tb_raw {
                    ((0, 0), None)
                } else {
                    let ra = simplify(&ta_raw, true);
                    let rb = simplify(&tb_raw, true);
                    let (ha, qa, fa) = single_of(&ra.small);
                    let (hb, qb, fb) = single_of(&rb.small);
                    assert_eq!(fa, fb, "isotopy blocks reduce to different tangles");
                    let m = Cob::identity(&fa);
                    ((ha - hb, qa - qb), Some((m.clone(), m, Some((ra, rb)))))
                }
            }
            EventKind::Surgery => {
                let (ha, qa, fa) = single_of(&ta_raw);
                let (hb, qb, fb) = single_of(&tb_raw);
                assert_eq!((ha, qa, hb, qb), (0, 0, 0, 0), "surgery blocks must be flat");
                ((0, 0), Some((Cob::saddle_arcs(&fa, &fb), Cob::saddle_arcs(&fb, &fa), None)))
            }
            EventKind::Birth { dotted } => {
                let (ha, qa, fa) = single_of(&ta_raw);
                let (hb, qb, fb) = single_of(&tb_raw);
                assert_eq!((ha, qa, hb, qb), (0, 0, 0, 0), "birth blocks must be flat");
                assert_eq!(fb, fa.with_loops(fa.loops + 1), "birth block must add one loop");
                let m = Cob::birth(&fa, fa.loops, *dotted);
                let m_rev = Cob::death(&fb, fb.loops - 1, *dotted);
                ((0, 0), Some((m, m_rev, None)))
            }
        };

    let cpa = cp.shift_h(off.0).shift_q(off.1);
    let off_b = (off.0 + delta.0, off.1 + delta.1);
    let cpb = cp.shift_h(off_b.0).shift_q(off_b.1);
    let bf_a = block_fold(&cpa, w_at, a_slices);
    let bf_b = block_fold(&cpb, w_at, &ev.insert);
    assert_eq!(bf_a.w, bf_b.w);

    let (mut fwd, mut bwd) = match &loc {
        None => (bf_a.i.compose(&bf_b.p), bf_b.i.compose(&bf_a.p)),
        Some((m, m_rev, reds)) => {
            let (sma, smb) = match reds {
                Some((ra, rb)) => (ra.small.clone(), rb.small.clone()),
                None => (ta_raw.clone(), tb_raw.clone()),
            };
            let (ha, qa, _) = single_of(&sma);
            let (hb, qb, _) = single_of(&smb);
            // Crossing map between the stacked models over the two shifted
            // prefix complexes.  Entries preserve the absolute homological
            // degree; the per-column sign compensates the differential
            // negation of an odd homological shift.
            let dq_m = m.deg().expect("local morphism is not homogeneous") - qa + qb + delta.1;
            let dq_rev = m_rev.deg().expect("local morphism is not homogeneous") - qb + qa - delta.1;
            let mut mm = ChainMap::zero(dq_m);
            let mut mm_rev = ChainMap::zero(dq_rev);
            for (k1, col) in cp.cols.iter().enumerate() {
                let h_cp = cp.h_min + k1 as i32;
                let h_abs = h_cp + off.0 + ha;
                debug_assert_eq!(h_abs, h_cp + off_b.0 + hb);
                let neg = (h_cp * delta.0).rem_euclid(2) == 1;
                for (i, o) in col.iter().enumerate() {
                    let idc = Cob::identity(&o.flat);
                    let mut e = idc.vstack(m);
                    let mut e_rev = idc.vstack(m_rev);
                    if neg {
                        e = e.neg();
                        e_rev = e_rev.neg();
                    }
                    mm.add_entry((h_abs, i, i), e);
                    mm_rev.add_entry((h_abs, i, i), e_rev);
                }
            }
            match reds {
                None => (
                    bf_a.i.compose(&mm).compose(&bf_b.p),
                    bf_b.i.compose(&mm_rev).compose(&bf_a.p),
                ),
                Some((ra, rb)) => {
                    let pa = ra.p().lift_stack_upper(&cpa, &ta_raw, &ra.small);
                    let ia = ra.i().lift_stack_upper(&cpa, &ra.small, &ta_raw);
                    let pb = rb.p().lift_stack_upper(&cpb, &tb_raw, &rb.small);
                    let ib = rb.i().lift_stack_upper(&cpb, &rb.small, &tb_raw);
                    (
                        bf_a.i.compose(&pa).compose(&mm).compose(&ib).compose(&bf_b.p),
                        bf_b.i.compose(&pb).compose(&mm_rev).compose(&ia).compose(&bf_a.p),
                    )
                }
            }
        }
    };

    let mut xa = bf_a.small;
    let mut xb = bf_b.small;
    if opts.strict {
        assert!(fwd.degrees_ok(&xa, &xb), "event seed has inhomogeneous entries: {ev:?}");
        assert!(fwd.is_chain_map(&xa, &xb), "event seed is not a chain map: {ev:?}");
        assert!(bwd.degrees_ok(&xb, &xa), "reverse seed has inhomogeneous entries: {ev:?}");
        assert!(bwd.is_chain_map(&xb, &xa), "reverse seed is not a chain map: {ev:?}");
    }
    let mut w = bf_a.w;
    for s in suffix {
        let sc = slice_complex(s, w);
        let ra = simplify(&stack(&xa, &sc), true);
        let rb = simplify(&stack(&xb, &sc), true);
        fwd = transfer(&fwd.lift_stack_lower(&xa, &xb, &sc), &ra, &rb);
        bwd = transfer(&bwd.lift_stack_lower(&xb, &xa, &sc), &rb, &ra);
        xa = ra.small;
        xb = rb.small;
        w = s.width_out(w);
    }

    let mut next: Vec<Slice> = prefix.to_vec();
    next.extend_from_slice(&ev.insert);
    next.extend_from_slice(suffix);
    if opts.strict {
        let want_a = scanner.scan(width0, slices).shift_h(off.0).shift_q(off.1);
        assert_eq!(xa, want_a, "lockstep model drifted from the scan");
        let want_b = scanner.scan(width0, &next).shift_h(off_b.0).shift_q(off_b.1);
        assert_eq!(xb, want_b, "event model drifted from the scan");
        assert!(fwd.is_chain_map(&xa, &xb), "event map is not a chain map: {ev:?}");
        assert!(bwd.is_chain_map(&xb, &xa), "reverse event map is not a chain map: {ev:?}");
    }
    assert!(fwd.degrees_ok(&xa, &xb), "event map has inhomogeneous entries");
    assert!(bwd.degrees_ok(&xb, &xa), "reverse event map has inhomogeneous entries");
    EventMaps { next, delta, fwd, bwd, model: xb }
}

/// Run a movie from `start` (whose model is shifted by `off0`) through all
/// events, composing the forward and backward maps.
pub fn run_movie(
    scanner: &mut Scanner,
    width0: usize,
    start: &[Slice],
    events: &[Event],
    off0: (i32, i32),
    opts: &MovieOpts,
) -> MovieResult {
    let mut slices = start.to_vec();
    let mut off = off0;
    let src = scanner.scan(width0, &slices).shift_h(off.0).shift_q(off.1);
    let mut cur = src.clone();
    let mut fwd = ChainMap::identity(&src);
    let mut bwd = ChainMap::identity(&src);
    for ev in events {
        let em = run_event(scanner, width0, &slices, ev, off, opts);
        fwd = fwd.compose(&em.fwd);
        bwd = em.bwd.compose(&bwd);
        slices = em.next;
        off = (off.0 + em.delta.0, off.1 + em.delta.1);
        cur = em.model;
    }
    MovieResult {
        src,
        tgt: cur,
        fwd,
        bwd,
        off: (off.0 - off0.0, off.1 - off0.1),
        end: slices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qi, Q};
    use crate::khr2::{bracket_tangle, belt, CrossKind::*, Slice::*};

    fn opts() -> MovieOpts {
        MovieOpts { strict: true }
    }

    fn entry_scalar(m: &ChainMap, key: (i32, usize, usize)) -> Q {
        m.entries.get(&key).map(|e| e.scalar()).unwrap_or_else(|| qi(0))
    }


    #[test]
    fn scan_matches_bracket() {
        let d = belt(1, 2);
        let mut sc = Scanner::new();
        assert_eq!(sc.scan(d.width0, &d.slices), bracket_tangle(&d));
        // repeated scans hit the cache and agree
        assert_eq!(sc.scan(d.width0, &d.slices), bracket_tangle(&d));
    }

    #[test]
    fn associator_is_iso() {
        let a = raw_fold(2, &[X(0, LOver)]);
        let b = slice_complex(&X(0, ROver), 2);
        let c = slice_complex(&Cup(0), 2);
        let src = stack(&a, &stack(&b, &c));
        let tgt = stack(&stack(&a, &b), &c);
        let (f, g) = associator(&a, &b, &c);
        assert!(f.degrees_ok(&src, &tgt));
        assert!(f.is_chain_map(&src, &tgt));
        assert!(g.is_chain_map(&tgt, &src));
        assert_eq!(f.compose(&g), ChainMap::identity(&src));
        assert_eq!(g.compose(&f), ChainMap::identity(&tgt));
    }

    #[test]
    fn r2_insertion_is_iso() {
        // Insert an R2 pair on a 2-strand identity tangle.
        let mut sc = Scanner::new();
        let ev = Event {
            at: 0,
            remove: 0,
            insert: vec![X(0, LOver), X(0, ROver)],
            kind: EventKind::Isotopy,
        };
        let r = run_movie(&mut sc, 2, &[], &[ev], (0, 0), &opts());
        assert_eq!(r.off, (1, -1));
        assert_eq!(r.fwd.compose(&r.bwd), ChainMap::identity(&r.src));
        assert_eq!(r.bwd.compose(&r.fwd), ChainMap::identity(&r.tgt));
        assert_eq!(r.fwd.dq, 0);
    }

    #[test]
    fn r1_kink_is_iso() {
        let mut sc = Scanner::new();
        for (kind, dh, dq) in [(LOver, 0, 1), (ROver, 1, -2)] {
            let ev = Event {
                at: 0,
                remove: 0,
                insert: vec![Cup(1), X(0, kind), Cap(1)],
                kind: EventKind::Isotopy,
            };
            let r = run_movie(&mut sc, 1, &[], &[ev], (0, 0), &opts());
            assert_eq!(r.off, (dh, dq), "kink offset for {kind:?}");
            assert_eq!(r.fwd.compose(&r.bwd), ChainMap::identity(&r.src));
            assert_eq!(r.bwd.compose(&r.fwd), ChainMap::identity(&r.tgt));
        }
    }

    #[test]
    fn far_commutation_is_strict() {
        // [Cap(2), X(0)] and [X(0), Cap(2)] have literally equal folds.
        let mut sc = Scanner::new();
        let start = [Cap(2), X(0, LOver)];
        let ev = Event {
            at: 0,
            remove: 2,
            insert: vec![X(0, LOver), Cap(2)],
            kind: EventKind::Isotopy,
        };
        let r = run_movie(&mut sc, 4, &start, &[ev], (0, 0), &opts());
        assert_eq!(r.off, (0, 0));
        assert_eq!(r.end, vec![X(0, LOver), Cap(2)]);
        assert_eq!(r.fwd.compose(&r.bwd), ChainMap::identity(&r.src));
        assert_eq!(r.bwd.compose(&r.fwd), ChainMap::identity(&r.tgt));
    }

    #[test]
    fn tip_pass_is_iso() {
        // A capped finger tip passes a transverse strand.
        let mut sc = Scanner::new();
        let ev = Event {
            at: 0,
            remove: 1,
            insert: vec![X(1, LOver), X(0, LOver), Cap(1)],
            kind: EventKind::Isotopy,
        };
        let r = run_movie(&mut sc, 3, &[Cap(0)], &[ev], (0, 0), &opts());
        assert_eq!(r.off, (1, -1));
        assert_eq!(r.fwd.compose(&r.bwd), ChainMap::identity(&r.src));
        assert_eq!(r.bwd.compose(&r.fwd), ChainMap::identity(&r.tgt));
    }

    fn creation_events(dotted: bool) -> Vec<Event> {
        vec![
            Event {
                at: 0,
                remove: 0,
                insert: vec![Cup(0), Cap(0)],
                kind: EventKind::Birth { dotted },
            },
            Event { at: 1, remove: 0, insert: vec![Cap(0), Cup(0)], kind: EventKind::Surgery },
        ]
    }

    #[test]
    fn pair_creation_identities() {
        // Two free circles created from nothing: the annulus map and its
        // dotted companion, with the Frobenius identities of the swap.
        let mut sc = Scanner::new();
        let v = run_movie(&mut sc, 0, &[], &creation_events(false), (0, 0), &opts());
        let vd = run_movie(&mut sc, 0, &[], &creation_events(true), (0, 0), &opts());
        assert_eq!(v.off, (0, 0));
        assert_eq!(v.fwd.dq, 0);
        assert_eq!(vd.fwd.dq, 2);
        assert_eq!(v.end, vec![Cup(0), Cap(0), Cup(0), Cap(0)]);
        let node = &v.tgt;
        assert_eq!(node.n_cols(), 1);
        assert_eq!(node.h_min, 0);
        let qs: Vec<i32> = node.cols[0].iter().map(|o| o.q).collect();
        let mut sorted = qs.clone();
        sorted.sort();
        assert_eq!(sorted, vec![-2, 0, 0, 2]);

        // values: the undotted map hits exactly the two q = 0 generators
        let hits: Vec<(i32, Q)> = (0..4)
            .filter_map(|j| {
                let c = entry_scalar(&v.fwd, (0, 0, j));
                (c != qi(0)).then(|| (qs[j], c))
            })
            .collect();
        assert_eq!(hits.len(), 2);
        assert!(hits.iter().all(|(q, c)| *q == 0 && (c == &qi(1) || c == &qi(-1))));
        // the dotted map hits exactly the q = 2 generator
        let hits_d: Vec<(i32, Q)> = (0..4)
            .filter_map(|j| {
                let c = entry_scalar(&vd.fwd, (0, 0, j));
                (c != qi(0)).then(|| (qs[j], c))
            })
            .collect();
        assert_eq!(hits_d.len(), 1);
        assert_eq!(hits_d[0].0, 2);

        // torus: remove after create is multiplication by 2
        let id_src = ChainMap::identity(&v.src);
        let id_node = ChainMap::identity(node);
        assert_eq!(v.fwd.compose(&v.bwd), id_src.scale(&qi(2)));
        // dotted torus dies
        assert!(vd.fwd.compose(&v.bwd).is_zero());

        // swap = id - (remove then recreate)
        let capcup = v.bwd.compose(&v.fwd);
        assert_eq!(capcup.compose(&capcup), capcup.scale(&qi(2)));
        let s = id_node.sub(&capcup);
        assert_eq!(s.compose(&s), id_node);
        let e2 = id_node.sub(&capcup.scale(&qi(2).recip()));
        assert_eq!(e2.compose(&e2), e2);
        assert!(v.fwd.compose(&e2).is_zero());
        assert_eq!(vd.fwd.compose(&e2), vd.fwd);

        // on the two q = 0 generators the swap has trace 0 and determinant -1
        let zs: Vec<usize> = (0..4).filter(|&j| qs[j] == 0).collect();
        let (a, b) = (zs[0], zs[1]);
        let s00 = entry_scalar(&s, (0, a, a));
        let s01 = entry_scalar(&s, (0, a, b));
        let s10 = entry_scalar(&s, (0, b, a));
        let s11 = entry_scalar(&s, (0, b, b));
        assert_eq!(s00.clone() + s11.clone(), qi(0));
        assert_eq!(s00 * s11 - s01 * s10, qi(-1));
    }
}
