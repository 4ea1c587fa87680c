//! Acceptance bodies for the cabling layer: symmetrizer identities, the
//! cylinder tails, odd-weight vanishing and the closed-manifold
//! certificates.

use std::collections::BTreeMap;

use crate::projector::{agreement_floor, closed_table, rozansky_projector_trunc};

use super::lasagna::{lasagna_2handle, lasagna_s2xb2, TwoHandleLink, TwoHandleReport};
use super::system::{
    build_node, belt_arrow, belt_capcup, belt_system_with, ColimitEntry, SysOpts, SystemSpec,
};
use super::sym::GMap;
use super::Scanner;

/// Belt swaps square to the identity on a two-belt node.
pub fn swap_involution(n: usize) -> Result<(), String> {
    let mut sc = Scanner::new();
    let opts = SysOpts { full_limit: usize::MAX, ..Default::default() };
    let node = build_node(&mut sc, &SystemSpec::belts(n, 2), 0, (0, 0), &opts)?;
    let id = GMap::identity(&node.graded);
    let cc = belt_capcup(&mut sc, n, 2, 0, (0, 0), &[], &opts);
    let s = id.sub(&GMap::from_chain(&cc, &node.graded, &node.graded));
    if !s.compose(&s).eq_map(&id) {
        return Err(format!("swap on {n} strands is not an involution"));
    }
    Ok(())
}

/// C4: exact idempotence of the belt symmetrizers for k <= 4 over n <= 2
/// strands, annihilation of the undotted annulus, and the braid relation
/// for swaps at k = 3.
pub fn symmetrizer_suite() -> Result<(), String> {
    let mut sc = Scanner::new();
    let opts = SysOpts { full_limit: usize::MAX, ..Default::default() };
    for n in 0..=2usize {
        // Idempotence is asserted exactly inside node construction.
        for k in 2..=4usize {
            build_node(&mut sc, &SystemSpec::belts(n, k), 0, (0, 0), &opts)
                .map_err(|e| format!("node ({n}, {k}): {e}"))?;
        }

        // The symmetrizer on k + 2 belts kills the undotted annulus pair.
        for k in 0..=2usize {
            let src = build_node(&mut sc, &SystemSpec::belts(n, k), 0, (0, 0), &opts)?;
            let tgt_off = (2 * n as i32, -2 * n as i32);
            let tgt = build_node(
                &mut sc,
                &SystemSpec { alpha: k + 2, ..SystemSpec::belts(n, k) },
                0,
                tgt_off,
                &opts,
            )?;
            let up = belt_arrow(&mut sc, n, k, (0, 0), &[], false, &opts);
            let up_g = GMap::from_chain(&up, &src.graded, &tgt.graded);
            if !up_g.compose(&tgt.e).is_zero() {
                return Err(format!("undotted annulus survives e_{} over {n} strands", k + 2));
            }
        }

        // Braid relation for the swaps on three belts.
        let node = build_node(&mut sc, &SystemSpec::belts(n, 3), 0, (0, 0), &opts)?;
        let id = GMap::identity(&node.graded);
        let swap = |sc: &mut Scanner, i: usize| {
            let cc = belt_capcup(sc, n, 3, i, (0, 0), &[], &opts);
            id.sub(&GMap::from_chain(&cc, &node.graded, &node.graded))
        };
        let s0 = swap(&mut sc, 0);
        let s1 = swap(&mut sc, 1);
        let aba = s0.compose(&s1).compose(&s0);
        let bab = s1.compose(&s0).compose(&s1);
        if !aba.eq_map(&bab) {
            return Err(format!("braid relation fails on {n} strands"));
        }
    }
    Ok(())
}

type Table = BTreeMap<(i32, i32), ColimitEntry>;

fn stable_entries(t: &Table) -> BTreeMap<(i32, i32), usize> {
    t.iter().filter(|(_, e)| e.stable && e.dim > 0).map(|(&k, e)| (k, e.dim)).collect()
}

/// C5: the zero-strand tails.  For each charge the horizon-4 stable set is
/// exactly one generator per predicted q-degree inside the window, nothing
/// stable off the tail, and the horizon-3 report agrees wherever it is
/// already stable.
pub fn s2xb2_tails() -> Result<(), String> {
    let window = (-8, 8);
    let opts = SysOpts { window: Some(window), ..Default::default() };
    for alpha in 0..=2usize {
        let mut sc = Scanner::new();
        let sys = belt_system_with(&mut sc, &SystemSpec::belts(0, alpha), 4, &opts)
            .map_err(|e| format!("alpha {alpha}: {e}"))?;
        let t4 = sys.colimit();
        let t3 = sys.colimit_at(3);
        let s4 = stable_entries(&t4);
        let s3 = stable_entries(&t3);

        let predicted: BTreeMap<(i32, i32), usize> =
            (0..).map(|c| ((0, -2 * c), 1)).take_while(|&((_, q), _)| q >= window.0).collect();
        if s4 != predicted {
            return Err(format!("alpha {alpha}: horizon-4 stable set {s4:?}, predicted {predicted:?}"));
        }
        for (k, d) in &s3 {
            if s4.get(k) != Some(d) {
                return Err(format!("alpha {alpha}: horizon-3 entry {k:?} = {d} not in horizon-4 set"));
            }
        }
    }
    Ok(())
}

/// C6: one strand, charges 0 and 1, horizon 3: nothing stabilises to a
/// nonzero value and every bidegree with two-step evidence dies.
pub fn odd_vanishing() -> Result<(), String> {
    for alpha in 0..=1usize {
        let r = lasagna_s2xb2(1, alpha, 3, &SysOpts::default())
            .map_err(|e| format!("alpha {alpha}: {e}"))?;
        if !r.vanishes_certified() {
            return Err(format!("alpha {alpha}: table {:?}", r.table));
        }
        println!(
            "      C6 alpha {alpha}: all certified entries zero, {} frontier bidegrees undecided",
            r.frontier_count()
        );
    }
    Ok(())
}

fn check_two_handle(
    name: &str,
    link: TwoHandleLink,
    alpha: (usize, usize),
) -> Result<(), String> {
    let r = lasagna_2handle(link, alpha, 1, &SysOpts::default())
        .map_err(|e| format!("{name}: {e}"))?;
    if !r.vanishes_certified() {
        return Err(format!("{name}: vanishing not certified"));
    }
    if let TwoHandleReport::Iterated { inner, .. } = &r {
        let frontier: usize = inner.iter().map(|t| t.frontier_count()).sum();
        println!(
            "      C7 {name}: inner systems at {} outer levels certified zero, {} frontier bidegrees",
            inner.len(),
            frontier
        );
    }
    Ok(())
}

/// C7: iterated colimits for the closed-manifold cases at horizon 1.
pub fn closed_manifolds() -> Result<(), String> {
    let hopf00 = TwoHandleLink::Hopf { framings: (0, 0) };
    check_two_handle("sphere product, charge (1,0)", hopf00, (1, 0))?;
    check_two_handle("sphere product, charge (1,1)", hopf00, (1, 1))?;
    let hopf10 = TwoHandleLink::Hopf { framings: (1, 0) };
    check_two_handle("twisted sphere bundle, charge (1,0)", hopf10, (1, 0))?;
    Ok(())
}

/// C10 (stretch): the two-strand charge-zero stable table against the
/// closure homology of the projector complement tensored with the tail,
/// inside the jointly certified region.
pub fn exotica_scale() -> Result<(), String> {
    let window = (-8, 8);
    let opts = SysOpts { window: Some(window), ..Default::default() };
    let mut sc = Scanner::new();
    let sys = belt_system_with(&mut sc, &SystemSpec::belts(2, 0), 2, &opts)?;
    let table = sys.colimit();
    let stable = stable_entries(&table);

    let r2 = closed_table(&rozansky_projector_trunc(2), 2);
    let r1 = closed_table(&rozansky_projector_trunc(1), 2);
    let floor = agreement_floor(&r2, &r1);

    // Tail product: dim at (h, q) sums the complement classes at q + 2c.
    let mut predicted: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for (&(h, q), &d) in &r2 {
        let mut c = 0;
        while q - 2 * c >= window.0 {
            *predicted.entry((h, q - 2 * c)).or_insert(0) += d;
            c += 1;
        }
    }

    for (&(h, q), &d) in &stable {
        if h <= floor {
            continue;
        }
        if predicted.get(&(h, q)).copied().unwrap_or(0) != d {
            return Err(format!(
                "stable entry ({h}, {q}) = {d} disagrees with complement product {:?}",
                predicted.get(&(h, q))
            ));
        }
    }
    // Within the certified region, predicted classes born early enough must
    // actually be stable.
    let dims = sys.node_dims();
    for (&(h, q), &d) in &predicted {
        if h <= floor || q < window.0 || q > window.1 {
            continue;
        }
        let born = dims.iter().position(|t| t.contains_key(&(h, q)));
        if born == Some(0) && stable.get(&(h, q)).copied().unwrap_or(0) != d {
            return Err(format!(
                "complement product predicts ({h}, {q}) = {d}, system says {:?}",
                table.get(&(h, q))
            ));
        }
    }
    Ok(())
}
