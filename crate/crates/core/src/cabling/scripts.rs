//! Event scripts for the standard node presentations: nested cables encircled
//! by chains of belts, pair creation in both directions, and the movies
//! behind the swap operators.
//!
//! Conventions.  The node diagram for a `k1`-cable with `k2` belts is
//! `nest_cups(k1) ++ belt blocks ++ nest_caps(k1)` at width 0: `k1` nested
//! circles whose ascending sides sit at positions `0..k1`, each belt a circle
//! that encircles exactly those ascending strands.  Belt crossing kinds
//! alternate along the chain so that consecutive belts form oppositely
//! clasped pairs; removing or inserting an adjacent pair preserves the
//! pattern.

use super::movie::{Event, EventKind};
use crate::khr2::{CrossKind, Slice};
use Slice::{Cap, Cup, X};

pub fn nest_cups(k: usize) -> Vec<Slice> {
    (0..k).map(Cup).collect()
}

pub fn nest_caps(k: usize) -> Vec<Slice> {
    (0..k).rev().map(Cap).collect()
}

/// Crossing kind of the j-th belt in a chain.
pub fn belt_pattern(j: usize) -> CrossKind {
    if j % 2 == 0 {
        CrossKind::LOver
    } else {
        CrossKind::ROver
    }
}

pub fn pattern_kinds(k2: usize) -> Vec<CrossKind> {
    (0..k2).map(belt_pattern).collect()
}

/// A belt around the first `n` strands: cup at `n`, leg descending across the
/// cable and back, cap at `n`.  All crossings share one kind.
pub fn belt_block_kind(n: usize, k: CrossKind) -> Vec<Slice> {
    let mut v = Vec::with_capacity(2 * n + 2);
    v.push(Cup(n));
    for p in (0..n).rev() {
        v.push(X(p, k));
    }
    for p in 0..n {
        v.push(X(p, k));
    }
    v.push(Cap(n));
    v
}

pub fn belt_chain_kinds(n: usize, kinds: &[CrossKind]) -> Vec<Slice> {
    kinds.iter().flat_map(|&k| belt_block_kind(n, k)).collect()
}

/// Slices of the canonical node: `k1` nested circles with the given belts.
pub fn node_slices_kinds(k1: usize, kinds: &[CrossKind]) -> Vec<Slice> {
    let mut v = nest_cups(k1);
    v.extend(belt_chain_kinds(k1, kinds));
    v.extend(nest_caps(k1));
    v
}

pub fn node_slices(k1: usize, k2: usize) -> Vec<Slice> {
    node_slices_kinds(k1, &pattern_kinds(k2))
}

/// Positive full twist braid word `(s_1 ... s_{n-1})^n` as slices acting on
/// the ascending strands; its closure is the torus link T(n, n).
pub fn full_twist(n: usize) -> Vec<Slice> {
    let mut v = Vec::new();
    for _ in 0..n {
        for i in 0..n.saturating_sub(1) {
            v.push(X(i, CrossKind::LOver));
        }
    }
    v
}

/// Node slices with a braid block on the strands, inserted between the
/// nested cups and the belt chain.  Belt events on the plain node transfer
/// to the braided one by shifting their positions past the block.
pub fn prefixed_node_slices(k1: usize, k2: usize, prefix: &[Slice]) -> Vec<Slice> {
    let mut v = nest_cups(k1);
    v.extend_from_slice(prefix);
    v.extend(belt_chain_kinds(k1, &pattern_kinds(k2)));
    v.extend(nest_caps(k1));
    v
}

/// Shift belt-region events past a braid block of the given length.  Valid
/// because every belt event acts at a position at or after the end of the
/// strand cups, where the block is inserted.
pub fn shift_events(evs: &mut [Event], by: usize) {
    for e in evs.iter_mut() {
        e.at += by;
    }
}

fn apply(cur: &mut Vec<Slice>, ev: &Event) {
    let mut tail = cur.split_off(ev.at);
    let rest = tail.split_off(ev.remove);
    cur.extend_from_slice(&ev.insert);
    cur.extend(rest);
}

/// Events creating an oppositely clasped pair of belts around the first `n`
/// strands at slice position `at0`: birth of a small circle to the right of
/// the cable, a finger sliding its left side across all strands, a second
/// wind, and a pinching surgery that splits the doubly wound circle into the
/// two belts.  Ends with `belt_block_kind(n, first) ++ belt_block_kind(n,
/// first.flip())` in place of nothing.
pub fn belt_pair_events(at0: usize, n: usize, first: CrossKind, dotted: bool) -> Vec<Event> {
    let second = first.flip();
    let mut evs = Vec::with_capacity(2 * n + 2);
    evs.push(Event {
        at: at0,
        remove: 0,
        insert: vec![Cup(n), Cap(n)],
        kind: EventKind::Birth { dotted },
    });
    for k in 1..=n {
        evs.push(Event {
            at: at0 + k,
            remove: 0,
            insert: vec![X(n - k, first), X(n - k, second)],
            kind: EventKind::Isotopy,
        });
    }
    for j in 1..=n {
        evs.push(Event {
            at: at0 + n + j,
            remove: 0,
            insert: vec![X(j - 1, first), X(j - 1, second)],
            kind: EventKind::Isotopy,
        });
    }
    evs.push(Event {
        at: at0 + 2 * n + 1,
        remove: 0,
        insert: vec![Cap(n), Cup(n)],
        kind: EventKind::Surgery,
    });
    evs
}

/// The belt-pair movie on a canonical node: create belts (i, i+1) of the
/// target chain.  Returns (start slices, events, end slices).
pub fn belt_pair_movie(
    k1: usize,
    k2_before: usize,
    i: usize,
    dotted: bool,
) -> (Vec<Slice>, Vec<Event>, Vec<Slice>) {
    assert!(i <= k2_before);
    let start = node_slices(k1, k2_before);
    let at0 = k1 + i * (2 * k1 + 2);
    let evs = belt_pair_events(at0, k1, belt_pattern(i), dotted);
    let mut cur = start.clone();
    for ev in &evs {
        apply(&mut cur, ev);
    }
    assert_eq!(cur, node_slices(k1, k2_before + 2), "belt pair movie misses the canonical form");
    (start, evs, cur)
}

/// Events threading a new pair of cable strands at nesting level `(o, o+1)`
/// through every belt of the canonical node on `c` strands.  A circle is born
/// between the outer `o` and inner `c - o` cable loops, the inner cups
/// migrate below its caps, the inner cap of the pair climbs through each belt
/// (two finger-tip passes insert the four new crossings), the outer cap
/// passes each widened belt entirely, and a final surgery re-smooths the two
/// caps into the nested form.  Ends exactly at the canonical node on `c + 2`
/// strands.
pub fn thread_events(
    c: usize,
    o: usize,
    kinds: &[CrossKind],
    dotted: bool,
) -> (Vec<Slice>, Vec<Event>, Vec<Slice>) {
    assert!(o <= c);
    let start = node_slices_kinds(c, kinds);
    let mut cur = start.clone();
    let mut evs: Vec<Event> = Vec::new();
    let emit = |cur: &mut Vec<Slice>, evs: &mut Vec<Event>, at: usize, remove: usize, insert: Vec<Slice>, kind: EventKind| {
        let ev = Event { at, remove, insert, kind };
        apply(cur, &ev);
        evs.push(ev);
    };
    let iso = EventKind::Isotopy;

    // birth of the pair-to-be: one circle with two descending returns
    emit(&mut cur, &mut evs, o, 0, vec![Cup(o), Cup(o + 1), Cap(o), Cap(o)], EventKind::Birth {
        dotted,
    });
    let mut i1 = o + 2; // index of the inner cap (over the in-passes)
    let mut i2 = o + 3; // index of the outer cap (over the out-passes)

    // migrate the inner cable cups below both caps
    for m in 0..(c - o) {
        let v = o + m;
        emit(&mut cur, &mut evs, i2, 2, vec![Cup(v), Cap(o + 2 * m + 2)], iso.clone());
        emit(&mut cur, &mut evs, i1, 2, vec![Cup(v + 2), Cap(o)], iso.clone());
        i1 += 1;
        i2 += 1;
    }

    // swap the caps so the inner one leads the climb
    debug_assert_eq!(cur[i1], Cap(o));
    debug_assert_eq!(cur[i1 + 1], Cap(2 * c - o));
    emit(&mut cur, &mut evs, i1, 2, vec![Cap(2 * c - o + 2), Cap(o)], iso.clone());
    let (mut i2, mut i1) = (i1, i1 + 1);

    for &kk in kinds {
        // inner cap threads the belt
        emit(&mut cur, &mut evs, i1, 2, vec![Cup(c + 2), Cap(o)], iso.clone());
        i1 += 1;
        for p in (o..c).rev() {
            emit(&mut cur, &mut evs, i1, 2, vec![X(p + 2, kk), Cap(o)], iso.clone());
            i1 += 1;
        }
        emit(&mut cur, &mut evs, i1, 1, vec![X(o + 1, kk), X(o, kk), Cap(o + 1)], iso.clone());
        i1 += 2;
        for p in (0..o).rev() {
            emit(&mut cur, &mut evs, i1, 2, vec![X(p, kk), Cap(o + 1)], iso.clone());
            i1 += 1;
        }
        for p in 0..o {
            emit(&mut cur, &mut evs, i1, 2, vec![X(p, kk), Cap(o + 1)], iso.clone());
            i1 += 1;
        }
        emit(&mut cur, &mut evs, i1, 1, vec![X(o, kk), X(o + 1, kk), Cap(o)], iso.clone());
        i1 += 2;
        for p in o..c {
            emit(&mut cur, &mut evs, i1, 2, vec![X(p + 2, kk), Cap(o)], iso.clone());
            i1 += 1;
        }
        emit(&mut cur, &mut evs, i1, 2, vec![Cap(c + 2), Cap(o)], iso.clone());
        i1 += 1;
        // outer cap passes the widened belt
        let a = 2 * c + 2 - o;
        emit(&mut cur, &mut evs, i2, 2, vec![Cup(c + 2), Cap(a + 2)], iso.clone());
        i2 += 1;
        for p in (0..c + 2).rev() {
            emit(&mut cur, &mut evs, i2, 2, vec![X(p, kk), Cap(a + 2)], iso.clone());
            i2 += 1;
        }
        for p in 0..c + 2 {
            emit(&mut cur, &mut evs, i2, 2, vec![X(p, kk), Cap(a + 2)], iso.clone());
            i2 += 1;
        }
        emit(&mut cur, &mut evs, i2, 2, vec![Cap(c + 2), Cap(a)], iso.clone());
        i2 += 1;
    }

    // inner cap passes the inner cable caps, rewriting them outward
    for p in (o..c).rev() {
        emit(&mut cur, &mut evs, i1, 2, vec![Cap(p + 2), Cap(o)], iso.clone());
        i1 += 1;
    }
    // outer cap follows below them
    let mut a = 2 * c + 2 - o;
    for p in ((o + 2)..(c + 2)).rev() {
        emit(&mut cur, &mut evs, i2, 2, vec![Cap(p), Cap(a - 2)], iso.clone());
        i2 += 1;
        a -= 2;
    }
    debug_assert_eq!(a, o + 2);
    debug_assert_eq!(i1, i2 + 1);

    // re-smooth the two caps into the nested closure
    emit(&mut cur, &mut evs, i2, 2, vec![Cap(o + 1), Cap(o)], EventKind::Surgery);

    let end = node_slices_kinds(c + 2, kinds);
    assert_eq!(cur, end, "threading movie misses the canonical form");
    (start, evs, end)
}

/// The cable-pair movie on a canonical node: thread cable strands (o, o+1)
/// of the target nest through the standard belt chain.
pub fn cable_pair_movie(
    k1_before: usize,
    o: usize,
    k2: usize,
    dotted: bool,
) -> (Vec<Slice>, Vec<Event>, Vec<Slice>) {
    thread_events(k1_before, o, &pattern_kinds(k2), dotted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qi;
    use crate::cabling::movie::{run_movie, MovieOpts, Scanner};
    use crate::complex::ChainMap;
    use crate::khr2::CrossKind::*;

    fn strict() -> MovieOpts {
        MovieOpts { strict: true }
    }

    #[test]
    fn node_forms() {
        assert_eq!(node_slices(0, 1), vec![Cup(0), Cap(0)]);
        assert_eq!(
            node_slices(2, 1),
            vec![
                Cup(0),
                Cup(1),
                Cup(2),
                X(1, LOver),
                X(0, LOver),
                X(0, LOver),
                X(1, LOver),
                Cap(2),
                Cap(1),
                Cap(0)
            ]
        );
    }

    #[test]
    fn scripts_reach_canonical_forms() {
        // the builders assert the end form internally
        for c in 0..3 {
            for o in 0..=c {
                for k2 in 0..3 {
                    thread_events(c, o, &pattern_kinds(k2), false);
                }
            }
        }
        for k1 in 0..3 {
            for k2b in 0..2 {
                for i in 0..=k2b {
                    belt_pair_movie(k1, k2b, i, true);
                }
            }
        }
    }

    #[test]
    fn belt_pair_round_trip() {
        // around a single strand closed into a circle
        let mut sc = Scanner::new();
        let (start, evs, end) = belt_pair_movie(1, 0, 0, false);
        let r = run_movie(&mut sc, 0, &start, &evs, (0, 0), &strict());
        assert_eq!(r.end, end);
        assert_eq!(r.off, (2, -2));
        assert_eq!(r.fwd.dq, 0);
        let id_src = ChainMap::identity(&r.src);
        assert_eq!(r.fwd.compose(&r.bwd), id_src.scale(&qi(2)));
        let (_, evd, _) = belt_pair_movie(1, 0, 0, true);
        let rd = run_movie(&mut sc, 0, &start, &evd, (0, 0), &strict());
        assert_eq!(rd.fwd.dq, 2);
        assert!(rd.fwd.compose(&r.bwd).is_zero());
        // swap identities on the two-belt node
        let id_node = ChainMap::identity(&r.tgt);
        let capcup = r.bwd.compose(&r.fwd);
        let s = id_node.sub(&capcup);
        assert_eq!(s.compose(&s), id_node);
        let e2 = id_node.sub(&capcup.scale(&qi(2).recip()));
        assert_eq!(e2.compose(&e2), e2);
        assert!(r.fwd.compose(&e2).is_zero());
        assert_eq!(rd.fwd.compose(&e2), rd.fwd);
    }

    #[test]
    fn thread_round_trip_small() {
        let mut sc = Scanner::new();
        for (c, o) in [(0, 0), (1, 0), (1, 1)] {
            let (start, evs, end) = thread_events(c, o, &pattern_kinds(1), false);
            let r = run_movie(&mut sc, 0, &start, &evs, (0, 0), &strict());
            assert_eq!(r.end, end);
            assert_eq!(r.off, (2, -2), "threading offset at (c, o) = ({c}, {o})");
            let id_src = ChainMap::identity(&r.src);
            assert_eq!(r.fwd.compose(&r.bwd), id_src.scale(&qi(2)));
            let id_node = ChainMap::identity(&r.tgt);
            let s = id_node.sub(&r.bwd.compose(&r.fwd));
            assert_eq!(s.compose(&s), id_node);
        }
    }

    #[test]
    fn thread_no_belts_makes_unlink() {
        let mut sc = Scanner::new();
        let (start, evs, _) = thread_events(1, 1, &[], false);
        let r = run_movie(&mut sc, 0, &start, &evs, (0, 0), &strict());
        assert_eq!(r.off, (0, 0));
        // three nested circles: dimension 8
        let n: usize = r.tgt.cols.iter().map(|c| c.len()).sum();
        assert_eq!(n, 8);
        assert_eq!(r.fwd.compose(&r.bwd), ChainMap::identity(&r.src).scale(&qi(2)));
    }
}
