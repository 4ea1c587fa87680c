//! Skein-module drivers: the belt system over a cylinder of parallel
//! strands, and iterated colimits for two-handlebodies attached along an
//! unknot or a Hopf link.

use std::collections::BTreeMap;

use crate::khr2::{CrossKind, Slice};

use super::scripts::full_twist;
use super::system::{belt_system_with, ColimitEntry, SysOpts, SystemSpec};
use super::Scanner;

/// Colimit table plus the provenance needed to interpret it.
#[derive(Clone, Debug)]
pub struct ColimitReport {
    pub strands: usize,
    pub alpha: usize,
    pub horizon: usize,
    /// Normalized q-window the nodes were restricted to, if any.
    pub window: Option<(i32, i32)>,
    pub relative_shift: bool,
    pub table: BTreeMap<(i32, i32), ColimitEntry>,
}

impl ColimitReport {
    /// Entries certified stable with a nonzero dimension.
    pub fn stable_entries(&self) -> BTreeMap<(i32, i32), usize> {
        self.table
            .iter()
            .filter(|(_, e)| e.stable && e.dim > 0)
            .map(|(&k, e)| (k, e.dim))
            .collect()
    }

    /// True when nothing nonzero is certified: no stable entry has a
    /// positive dimension, and every undecided entry was born too late for
    /// two-step evidence (the horizon frontier).
    pub fn vanishes_certified(&self) -> bool {
        self.table
            .values()
            .all(|e| !(e.stable && e.dim > 0) && (e.stable || e.born + 2 > self.horizon))
    }

    /// Count of horizon-limited entries (undecided frontier).
    pub fn frontier_count(&self) -> usize {
        self.table.values().filter(|e| !e.stable).count()
    }
}

/// Belt system over `n` parallel strands at charge `alpha`, reported at the
/// given horizon.  Nodes exist at belt counts `alpha + 2 r`, matching the
/// parity of the charge.
pub fn lasagna_s2xb2(
    n: usize,
    alpha: usize,
    horizon: usize,
    opts: &SysOpts,
) -> Result<ColimitReport, String> {
    let mut sc = Scanner::new();
    let sys = belt_system_with(&mut sc, &SystemSpec::belts(n, alpha), horizon, opts)?;
    Ok(ColimitReport {
        strands: n,
        alpha,
        horizon,
        window: opts.window,
        relative_shift: opts.relative_shift,
        table: sys.colimit(),
    })
}

/// Attaching link of a two-handlebody.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoHandleLink {
    /// Single unknot, framing zero.
    Unknot0,
    /// Hopf link with the given framings.
    Hopf { framings: (i32, i32) },
}

/// Result of a two-handle computation: either the delegated single-system
/// report or the per-outer-level inner reports of an iterated colimit.
#[derive(Clone, Debug)]
pub enum TwoHandleReport {
    Single(ColimitReport),
    Iterated {
        alpha: (usize, usize),
        horizon: usize,
        /// Index of the component used for the outer colimit (odd charge).
        outer: usize,
        framings: (i32, i32),
        /// Inner colimit tables, one per outer level `0 ..= horizon`.  The
        /// outer horizon+1 level would only stability-check stable outer
        /// entries; a fully vanishing system has none, so it is vacuous.
        inner: Vec<ColimitReport>,
        /// Every inner table vanishes certified, so every stable dimension
        /// of the iterated colimit is zero.
        vanishes: bool,
    },
}

impl TwoHandleReport {
    pub fn vanishes_certified(&self) -> bool {
        match self {
            TwoHandleReport::Single(r) => r.vanishes_certified(),
            TwoHandleReport::Iterated { vanishes, .. } => *vanishes,
        }
    }
}

/// Full-twist prefix for a `framing`-framed cable of `k1` strands.
fn framing_prefix(k1: usize, framing: i32) -> Vec<Slice> {
    match framing {
        0 => Vec::new(),
        1 => full_twist(k1),
        -1 => full_twist(k1)
            .into_iter()
            .rev()
            .map(|s| match s {
                Slice::X(i, _) => Slice::X(i, CrossKind::ROver),
                other => other,
            })
            .collect(),
        _ => unreachable!("guarded framing"),
    }
}

/// Iterated colimit for a two-handlebody at charge `alpha`, truncated at
/// `horizon`.  One charge must be odd; that component drives the outer
/// colimit and the inner belt systems supply vanishing certificates level
/// by level (plain nodes: their composite ranks bound the symmetrized
/// ones).  Supported scale: `horizon <= 1` and charges `<= 1`, so cables
/// stay within reach of the scanner.
pub fn lasagna_2handle(
    link: TwoHandleLink,
    alpha: (usize, usize),
    horizon: usize,
    opts: &SysOpts,
) -> Result<TwoHandleReport, String> {
    let framings = match link {
        TwoHandleLink::Unknot0 => {
            if alpha.1 != 0 {
                return Err("unknot attaching link has a single charge".into());
            }
            let r = lasagna_s2xb2(0, alpha.0, horizon, opts)?;
            return Ok(TwoHandleReport::Single(r));
        }
        TwoHandleLink::Hopf { framings } => framings,
    };
    let outer = if alpha.0 % 2 == 1 {
        0
    } else if alpha.1 % 2 == 1 {
        1
    } else {
        return Err("no odd charge: only vanishing certificates are supported".into());
    };
    let (a_out, a_in) = if outer == 0 { (alpha.0, alpha.1) } else { (alpha.1, alpha.0) };
    let (f_out, f_in) = if outer == 0 { framings } else { (framings.1, framings.0) };
    if f_in != 0 {
        return Err("framed component must carry the odd charge".into());
    }
    if !(-1..=1).contains(&f_out) {
        return Err("framings beyond +-1 are not supported".into());
    }
    if horizon > 1 || a_out > 1 || a_in > 1 {
        return Err("two-handle scale: horizon <= 1 and charges <= 1".into());
    }

    let mut sc = Scanner::new();
    let inner_opts = SysOpts { plain_im: true, ..*opts };
    let mut inner = Vec::new();
    let mut vanishes = true;
    for i1 in 0..=horizon {
        let k1 = a_out + 2 * i1;
        let spec = SystemSpec {
            n: k1,
            alpha: a_in,
            prefix: framing_prefix(k1, f_out),
            r_fixed: i1,
            alpha_total: alpha.0 + alpha.1,
            sym_strands: false,
        };
        let sys = belt_system_with(&mut sc, &spec, horizon, &inner_opts)?;
        let report = ColimitReport {
            strands: k1,
            alpha: a_in,
            horizon,
            window: opts.window,
            relative_shift: opts.relative_shift,
            table: sys.colimit(),
        };
        vanishes &= report.vanishes_certified();
        inner.push(report);
    }
    Ok(TwoHandleReport::Iterated { alpha, horizon, outer, framings, inner, vanishes })
}
