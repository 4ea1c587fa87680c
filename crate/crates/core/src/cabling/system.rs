//! Directed systems of symmetrized belt complexes.
//!
//! A node is the closed model of `k1` strands wearing `k2` belts, together
//! with the symmetrizer of the swap action on its belts (and optionally on
//! its strands when those form a cable as well).  Arrows are induced by
//! dotted annulus movies.  Colimits over levels are estimated from ranks of
//! one- and two-step composites at the horizon.

use std::collections::{BTreeMap, BTreeSet};

use crate::cabling::movie::{run_movie, MovieOpts, Scanner};
use crate::cabling::scripts::{
    belt_pair_movie, cable_pair_movie, prefixed_node_slices, shift_events,
};
use crate::khr2::Slice;
use crate::cabling::sym::{
    check_idempotent, image, induced, symmetrizer, GMap, Graded, Image,
};
use crate::complex::{ChainMap, Complex};

#[derive(Clone, Copy, Debug)]
pub struct SysOpts {
    /// Window of normalized q-degrees kept at every node.
    pub window: Option<(i32, i32)>,
    /// Blocks with at most this many columns get the exact e^2 = e check.
    pub full_limit: usize,
    /// Run movies with model cross-checks (slow; for tests).
    pub strict: bool,
    /// Use the relative normalization `{-2|r| + |a|}` instead of
    /// `{-2|r| - |a|}`.
    pub relative_shift: bool,
    /// Skip belt symmetrization, keeping the full graded module at every
    /// node.  Composite ranks of the plain system bound the symmetrized
    /// ones, so a vanishing certificate here covers the symmetrized system.
    pub plain_im: bool,
}

impl Default for SysOpts {
    fn default() -> Self {
        SysOpts {
            window: None,
            full_limit: 150,
            strict: false,
            relative_shift: false,
            plain_im: false,
        }
    }
}

impl SysOpts {
    fn movie(&self) -> MovieOpts {
        MovieOpts { strict: self.strict }
    }
}

/// Normalization shift for a node at combined level `|r|`.
pub fn level_shift(r_total: usize, alpha_total: usize, relative: bool) -> i32 {
    let a = alpha_total as i32;
    -2 * r_total as i32 + if relative { a } else { -a }
}

/// Parameters of one belt-direction system: `alpha + 2r` belts around `n`
/// strands, optionally braided by `prefix` (e.g. full twists realizing a
/// framing).  When the system sits inside a larger product grid, `r_fixed`
/// and `alpha_total` carry the other components' contribution to the
/// normalization shift.
#[derive(Clone, Debug)]
pub struct SystemSpec {
    pub n: usize,
    pub alpha: usize,
    pub prefix: Vec<Slice>,
    pub r_fixed: usize,
    pub alpha_total: usize,
    /// Also symmetrize the strand family (plain nodes only).
    pub sym_strands: bool,
}

impl SystemSpec {
    pub fn belts(n: usize, alpha: usize) -> Self {
        SystemSpec { n, alpha, prefix: Vec::new(), r_fixed: 0, alpha_total: alpha, sym_strands: false }
    }
}

#[derive(Clone, Debug)]
pub struct SysNode {
    pub k1: usize,
    pub k2: usize,
    /// Levels in the strand and belt directions.
    pub r: (usize, usize),
    /// Anchoring of the model in absolute engine degrees.
    pub off: (i32, i32),
    pub model: Complex,
    pub graded: Graded,
    pub e: GMap,
    pub im: Image,
}

impl SysNode {
    /// Arrows preserve absolute degrees up to the annulus dot, so the
    /// normalization only translates q; homological degrees are reported as
    /// the absolute engine degrees (anchoring included).
    pub fn norm_deg(&self, raw: (i32, i32), alpha_total: usize, relative: bool) -> (i32, i32) {
        let shift = level_shift(self.r.0 + self.r.1, alpha_total, relative);
        (raw.0, raw.1 + shift)
    }

    /// Image dimensions keyed by normalized bidegree.
    pub fn norm_dims(&self, alpha_total: usize, relative: bool) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for (&deg, &d) in &self.im.dims() {
            *out.entry(self.norm_deg(deg, alpha_total, relative)).or_insert(0) += d;
        }
        out
    }
}

/// Operator `capcup = creation-then-removal` on the node anchored at `off`,
/// for the belt pair `(i, i+1)`.
pub fn belt_capcup(
    sc: &mut Scanner,
    k1: usize,
    k2: usize,
    i: usize,
    off: (i32, i32),
    prefix: &[Slice],
    opts: &SysOpts,
) -> ChainMap {
    let (_, mut events, _) = belt_pair_movie(k1, k2 - 2, i, false);
    shift_events(&mut events, prefix.len());
    let start = prefixed_node_slices(k1, k2 - 2, prefix);
    let d = 2 * k1 as i32;
    let mr = run_movie(sc, 0, &start, &events, (off.0 - d, off.1 + d), &opts.movie());
    debug_assert_eq!(mr.off, (d, -d));
    mr.bwd.compose(&mr.fwd)
}

/// Same for the strand pair `(i, i+1)` of the cable family.
pub fn cable_capcup(
    sc: &mut Scanner,
    k1: usize,
    k2: usize,
    i: usize,
    off: (i32, i32),
    opts: &SysOpts,
) -> ChainMap {
    let (start, events, _) = cable_pair_movie(k1 - 2, i, k2, false);
    let d = 2 * k2 as i32;
    let mr = run_movie(sc, 0, &start, &events, (off.0 - d, off.1 + d), &opts.movie());
    debug_assert_eq!(mr.off, (d, -d));
    mr.bwd.compose(&mr.fwd)
}

/// Annulus arrow appending a belt pair (dotted for the system arrows):
/// `node(k1, k2)` at `off` to `node(k1, k2+2)` at `off + (2 k1, -2 k1)`.
pub fn belt_arrow(
    sc: &mut Scanner,
    k1: usize,
    k2: usize,
    off: (i32, i32),
    prefix: &[Slice],
    dotted: bool,
    opts: &SysOpts,
) -> ChainMap {
    let (_, mut events, _) = belt_pair_movie(k1, k2, k2, dotted);
    shift_events(&mut events, prefix.len());
    let start = prefixed_node_slices(k1, k2, prefix);
    let mr = run_movie(sc, 0, &start, &events, off, &opts.movie());
    let dq = -2 * k1 as i32 - if dotted { 0 } else { 2 };
    debug_assert_eq!(mr.off, (2 * k1 as i32, dq));
    mr.fwd
}

/// Dotted annulus arrow appending a strand pair to the cable family.
pub fn cable_arrow(
    sc: &mut Scanner,
    k1: usize,
    k2: usize,
    off: (i32, i32),
    opts: &SysOpts,
) -> ChainMap {
    let (start, events, _) = cable_pair_movie(k1, k1, k2, true);
    let mr = run_movie(sc, 0, &start, &events, off, &opts.movie());
    debug_assert_eq!(mr.off, (2 * k2 as i32, -2 * k2 as i32));
    mr.fwd
}

/// Build a node: closed model, windowed basis, symmetrizer, image.  The
/// belt level is `lvl`, so the node carries `alpha + 2 lvl` belts.
pub fn build_node(
    sc: &mut Scanner,
    spec: &SystemSpec,
    lvl: usize,
    off: (i32, i32),
    opts: &SysOpts,
) -> Result<SysNode, String> {
    let k1 = spec.n;
    let k2 = spec.alpha + 2 * lvl;
    let r = (spec.r_fixed, lvl);
    let slices = prefixed_node_slices(k1, k2, &spec.prefix);
    let model = sc.scan(0, &slices).shift_h(off.0).shift_q(off.1);
    let shift = level_shift(r.0 + r.1, spec.alpha_total, opts.relative_shift);
    let window = opts.window.map(|(lo, hi)| (lo - shift, hi - shift));
    let graded = Graded::windowed(&model, window);
    let id = GMap::identity(&graded);
    let mut e = id.clone();
    if opts.plain_im {
        assert!(!spec.sym_strands, "plain nodes do not symmetrize");
        let im = image(&e);
        return Ok(SysNode { k1, k2, r, off, model, graded, e, im });
    }
    if k2 >= 2 {
        let swaps: Vec<GMap> = (0..k2 - 1)
            .map(|i| {
                let cc = belt_capcup(sc, k1, k2, i, off, &spec.prefix, opts);
                id.sub(&GMap::from_chain(&cc, &graded, &graded))
            })
            .collect();
        e = symmetrizer(&id, &swaps);
    }
    if spec.sym_strands && k1 >= 2 {
        assert!(spec.prefix.is_empty(), "strand symmetrization requires a plain node");
        let swaps: Vec<GMap> = (0..k1 - 1)
            .map(|i| {
                let cc = cable_capcup(sc, k1, k2, i, off, opts);
                id.sub(&GMap::from_chain(&cc, &graded, &graded))
            })
            .collect();
        let ev = symmetrizer(&id, &swaps);
        if graded.total() <= opts.full_limit && !ev.compose(&e).eq_map(&e.compose(&ev)) {
            return Err(format!(
                "strand and belt symmetrizers do not commute at node ({k1}, {k2})"
            ));
        }
        e = ev.compose(&e);
    }
    check_idempotent(&e, opts.full_limit)?;
    let im = image(&e);
    Ok(SysNode { k1, k2, r, off, model, graded, e, im })
}

/// Arrow induced on symmetrized images, relabelled by normalized bidegrees
/// (where it has degree (0, 0)).
pub fn induced_arrow(
    f: &ChainMap,
    src: &SysNode,
    tgt: &SysNode,
    alpha_total: usize,
    relative: bool,
) -> Result<GMap, String> {
    let fm = GMap::from_chain(f, &src.graded, &tgt.graded);
    let ind = induced(&fm, &tgt.e, &src.im, &tgt.im)?;
    let mut blocks = BTreeMap::new();
    for (&deg, b) in &ind.blocks {
        let nd = src.norm_deg(deg, alpha_total, relative);
        let td = tgt.norm_deg((deg.0, deg.1 + ind.dq), alpha_total, relative);
        if nd != td {
            return Err(format!(
                "arrow is not degree 0 after normalization: {:?} -> {:?}",
                nd, td
            ));
        }
        if blocks.insert(nd, b.clone()).is_some() {
            return Err(format!("normalized degree collision at {:?}", nd));
        }
    }
    Ok(GMap { dq: 0, blocks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColimitEntry {
    pub dim: usize,
    pub stable: bool,
    /// First target level at which the rank sequence reaches the reported
    /// value and keeps it through horizon + 1.
    pub first_stable: Option<usize>,
    /// First level at which the bidegree is populated.
    pub born: usize,
}

/// Per-bidegree colimit estimate.  `dims[j]` are the graded dimensions of
/// level `j` and `arrows[j]` maps level `j` to `j+1` in normalized degrees;
/// the final level only serves as the horizon+1 consistency check and is
/// not itself reported.
///
/// The estimate at a bidegree born at level `b <= N-2` is the rank of the
/// two-step composite into the horizon level `N`; it is stable when the
/// sliding two-step ranks agree over the last two levels and at horizon+1.
/// A zero estimate is also stable whenever every populated level's
/// composite into level N+1 vanishes: ranks only decrease along longer
/// composites, so a zero rank certifies that the whole cohort dies and no
/// extrapolation is involved.  Bidegrees born later than `N-2` that fail
/// the zero certificate have only their current dimension as an upper
/// bound and are flagged horizon-limited.  Entries that are stable at 0
/// are omitted from the table.
pub fn colimit_table(
    dims: &[BTreeMap<(i32, i32), usize>],
    arrows: &[GMap],
) -> BTreeMap<(i32, i32), ColimitEntry> {
    assert!(arrows.len() >= 2, "need levels up to horizon + 1");
    assert_eq!(dims.len(), arrows.len() + 1);
    let n = arrows.len() - 1; // horizon level
    // Suffix composites S[j]: level j -> level N+1.
    let mut suffix: Vec<GMap> = vec![arrows[n].clone()];
    for j in (0..n).rev() {
        let prev = suffix.last().unwrap();
        suffix.push(arrows[j].compose(prev));
    }
    suffix.reverse();
    // Sliding two-step composites P[m]: level m-2 -> level m, m = 2..=N+1.
    let two_step: Vec<GMap> =
        (2..=n + 1).map(|m| arrows[m - 2].compose(&arrows[m - 1])).collect();
    let rank_at = |g: &GMap, d: &(i32, i32)| g.blocks.get(d).map_or(0, |b| b.rank());
    let sigma = |m: usize, d: &(i32, i32)| rank_at(&two_step[m - 2], d);

    let mut degs: std::collections::BTreeSet<(i32, i32)> = BTreeSet::new();
    for dm in &dims[..=n] {
        degs.extend(dm.keys());
    }
    let mut out = BTreeMap::new();
    for d in degs {
        let supp: Vec<usize> = (0..=n).filter(|&j| dims[j].get(&d).copied().unwrap_or(0) > 0).collect();
        let born = supp[0];
        let zero_cert = supp.iter().all(|&j| rank_at(&suffix[j], &d) == 0);
        let entry = if zero_cert {
            let first = (born + 2..=n + 1)
                .find(|&m| (m..=n + 1).all(|m2| sigma(m2, &d) == 0));
            ColimitEntry { dim: 0, stable: true, first_stable: first, born }
        } else if born + 2 <= n {
            let dim = sigma(n, &d);
            let mut ok = sigma(n + 1, &d) == dim;
            if born + 2 <= n - 1 {
                ok &= sigma(n - 1, &d) == dim;
            }
            let first = (born + 2..=n + 1)
                .find(|&m| (m..=n + 1).all(|m2| sigma(m2, &d) == dim));
            ColimitEntry { dim, stable: ok, first_stable: if ok { first } else { None }, born }
        } else {
            let last = *supp.last().unwrap();
            ColimitEntry { dim: dims[last][&d], stable: false, first_stable: None, born }
        };
        if entry.dim > 0 || !entry.stable {
            out.insert(d, entry);
        }
    }
    out
}

/// A belt-direction directed system: nodes at belt levels `alpha + 2r` for
/// `r = 0 .. horizon + 1` (the last level only feeds the horizon+1 check).
pub struct BeltSystem {
    pub spec: SystemSpec,
    pub horizon: usize,
    pub opts: SysOpts,
    pub nodes: Vec<SysNode>,
    /// Induced arrows in normalized degrees, one per consecutive pair.
    pub arrows: Vec<GMap>,
}

pub fn belt_system(
    n: usize,
    alpha: usize,
    horizon: usize,
    opts: &SysOpts,
) -> Result<BeltSystem, String> {
    let mut sc = Scanner::new();
    belt_system_with(&mut sc, &SystemSpec::belts(n, alpha), horizon, opts)
}

pub fn belt_system_with(
    sc: &mut Scanner,
    spec: &SystemSpec,
    horizon: usize,
    opts: &SysOpts,
) -> Result<BeltSystem, String> {
    assert!(horizon >= 1);
    let n = spec.n;
    let mut nodes: Vec<SysNode> = Vec::new();
    let mut arrows = Vec::new();
    let mut off = (0, 0);
    for lvl in 0..=horizon + 1 {
        let node = build_node(sc, spec, lvl, off, opts)?;
        if let Some(prev) = nodes.last() {
            let f = belt_arrow(sc, n, prev.k2, prev.off, &spec.prefix, true, opts);
            arrows.push(induced_arrow(&f, prev, &node, spec.alpha_total, opts.relative_shift)?);
        }
        nodes.push(node);
        off = (off.0 + 2 * n as i32, off.1 - 2 * n as i32);
    }
    Ok(BeltSystem { spec: spec.clone(), horizon, opts: *opts, nodes, arrows })
}

impl BeltSystem {
    pub fn colimit(&self) -> BTreeMap<(i32, i32), ColimitEntry> {
        colimit_table(&self.node_dims(), &self.arrows)
    }

    /// Report at a smaller horizon using the prefix of this system.
    pub fn colimit_at(&self, horizon: usize) -> BTreeMap<(i32, i32), ColimitEntry> {
        assert!(horizon <= self.horizon);
        let dims = self.node_dims();
        colimit_table(&dims[..=horizon + 1], &self.arrows[..=horizon])
    }

    pub fn node_dims(&self) -> Vec<BTreeMap<(i32, i32), usize>> {
        self.nodes
            .iter()
            .map(|nd| nd.norm_dims(self.spec.alpha_total, self.opts.relative_shift))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_strand_symmetrized_nodes_are_lines() {
        // Around zero strands a node is a disjoint union of k2 circles;
        // its symmetrization has one generator per weight.
        let mut sc = Scanner::new();
        let opts = SysOpts { strict: true, ..Default::default() };
        for k2 in [2usize, 3, 4] {
            let node =
                build_node(&mut sc, &SystemSpec::belts(0, k2), 0, (0, 0), &opts).unwrap();
            assert_eq!(node.graded.total(), 1 << k2);
            let dims = node.im.dims();
            assert_eq!(dims.len(), k2 + 1);
            for ((h, q), d) in dims {
                assert_eq!(h, 0);
                assert_eq!(d, 1);
                assert!(q.rem_euclid(2) == (k2 as i32).rem_euclid(2));
            }
        }
    }

    #[test]
    fn belt_tail_no_strands() {
        // n = 0: one class per even normalized q in the tail, for either
        // parity of alpha.  A class born at level b is certified once the
        // two-step composite out of level b exists, so at horizon 2 exactly
        // the classes born at node 0 are stable; later tail entries remain
        // horizon-limited upper bounds.
        let opts = SysOpts::default();
        for alpha in [0usize, 1] {
            let sys = belt_system(0, alpha, 2, &opts).unwrap();
            let st = sys.colimit();
            for (&(h, q), e) in &st {
                assert_eq!(h, 0);
                assert!(q <= 0 && q.rem_euclid(2) == 0, "unexpected degree ({h}, {q}): {e:?}");
                assert_eq!(e.dim, 1);
            }
            for c in 0..=alpha as i32 {
                let e = st.get(&(0, -2 * c)).copied().unwrap();
                assert!(
                    e.stable && e.dim == 1 && e.born == 0 && e.first_stable == Some(2),
                    "tail entry at q = {}: {:?}",
                    -2 * c,
                    e
                );
            }
            let late = st.get(&(0, -2 * alpha as i32 - 4)).copied().unwrap();
            assert!(!late.stable && late.born >= 1, "late entry: {:?}", late);
        }
    }

    #[test]
    fn one_strand_collapses() {
        // n = 1: consecutive arrows compose to zero, so every bidegree with
        // two steps of evidence is certified stable at zero.  At horizon 1
        // only the freshly born classes that the last arrow still carries
        // remain as horizon-limited upper bounds.
        let opts = SysOpts { window: Some((-8, 8)), ..Default::default() };
        let sys = belt_system(1, 0, 1, &opts).unwrap();
        let st = sys.colimit();
        let keys: Vec<(i32, i32)> = st.keys().copied().collect();
        assert_eq!(keys, vec![(-2, 1), (0, -3), (2, -7)]);
        for e in st.values() {
            assert!(!e.stable && e.dim == 1 && e.born == 1, "{e:?}");
        }
    }
}
