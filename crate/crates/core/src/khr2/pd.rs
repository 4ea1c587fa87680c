//! Planar-diagram input and output.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise
//! starting at the incoming under-strand, so the under-strand runs from `a`
//! to `c`; the crossing is positive exactly when the over-strand runs from
//! `d` to `b`.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::khr2::diagram::{orient, CrossKind, Slice, Sliced};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PdError {
    #[error("cannot parse planar diagram: {0}")]
    Parse(String),
    #[error("edge {0} does not appear exactly twice")]
    BadEdge(usize),
    #[error("no Morse presentation found")]
    NoPresentation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pd {
    pub crossings: Vec<[usize; 4]>,
}

impl Pd {
    pub fn parse(input: &str) -> Result<Pd, PdError> {
        let mut crossings = Vec::new();
        let s: Vec<char> = input.chars().collect();
        let mut i = 0;
        while i < s.len() {
            let c = s[i];
            if c.is_whitespace() || c == ',' || c == ';' || c == ']' {
                i += 1;
                continue;
            }
            if c == 'P' && input[i..].starts_with("PD") {
                i += 2;
                while i < s.len() && (s[i].is_whitespace() || s[i] == '[' || s[i] == '(') {
                    i += 1;
                }
                continue;
            }
            if c == 'X' || c == 'x' {
                i += 1;
                while i < s.len() && s[i].is_whitespace() {
                    i += 1;
                }
                if i >= s.len() || (s[i] != '(' && s[i] != '[') {
                    return Err(PdError::Parse("expected ( after X".into()));
                }
                let close = if s[i] == '(' { ')' } else { ']' };
                i += 1;
                let start = i;
                while i < s.len() && s[i] != close {
                    i += 1;
                }
                if i >= s.len() {
                    return Err(PdError::Parse("unclosed crossing".into()));
                }
                let inner: String = s[start..i].iter().collect();
                i += 1;
                let nums: Result<Vec<usize>, _> =
                    inner.split(',').map(|t| t.trim().parse::<usize>()).collect();
                let nums = nums.map_err(|e| PdError::Parse(e.to_string()))?;
                if nums.len() != 4 {
                    return Err(PdError::Parse(format!("crossing needs 4 labels: {inner}")));
                }
                crossings.push([nums[0], nums[1], nums[2], nums[3]]);
                continue;
            }
            return Err(PdError::Parse(format!("unexpected character {c:?}")));
        }
        let pd = Pd { crossings };
        pd.occurrences()?;
        Ok(pd)
    }

    /// Label -> its two (crossing, slot) occurrences.
    fn occurrences(&self) -> Result<BTreeMap<usize, [(usize, usize); 2]>, PdError> {
        let mut occ: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for (s, &e) in x.iter().enumerate() {
                occ.entry(e).or_default().push((c, s));
            }
        }
        occ.into_iter()
            .map(|(e, v)| {
                if v.len() == 2 {
                    Ok((e, [v[0], v[1]]))
                } else {
                    Err(PdError::BadEdge(e))
                }
            })
            .collect()
    }

    /// Crossing signs.  Under-strand directions are prescribed; over-strand
    /// directions are propagated through the diagram, falling back to the
    /// convention that labels increase along each strand.
    pub fn signs(&self) -> Vec<i8> {
        let occ = self.occurrences().expect("validated");
        let n = self.crossings.len();
        // incoming[c][s]: does the edge at this slot point into the crossing?
        let mut inc: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
        for c in 0..n {
            inc[c][0] = Some(true);
            inc[c][2] = Some(false);
        }
        loop {
            let mut changed = false;
            let set = |inc: &mut Vec<[Option<bool>; 4]>, c: usize, s: usize, v: bool| {
                match inc[c][s] {
                    None => {
                        inc[c][s] = Some(v);
                        true
                    }
                    Some(old) => {
                        assert_eq!(old, v, "inconsistent orientation in planar diagram");
                        false
                    }
                }
            };
            for (_, ends) in &occ {
                let [(c1, s1), (c2, s2)] = *ends;
                // An edge leaves one crossing and enters the other.
                if let Some(v) = inc[c1][s1] {
                    changed |= set(&mut inc, c2, s2, !v);
                } else if let Some(v) = inc[c2][s2] {
                    changed |= set(&mut inc, c1, s1, !v);
                }
            }
            for c in 0..n {
                if let Some(v) = inc[c][1] {
                    changed |= set(&mut inc, c, 3, !v);
                } else if let Some(v) = inc[c][3] {
                    changed |= set(&mut inc, c, 1, !v);
                }
            }
            if changed {
                continue;
            }
            // Resolve a component that never passes under by the
            // increasing-labels convention.
            match (0..n).find(|&c| inc[c][3].is_none()) {
                None => break,
                Some(c) => {
                    let (b, d) = (self.crossings[c][1], self.crossings[c][3]);
                    let over_in_at_d = if b == d + 1 {
                        true
                    } else if d == b + 1 {
                        false
                    } else {
                        b < d
                    };
                    inc[c][3] = Some(over_in_at_d);
                }
            }
        }
        (0..n)
            .map(|c| if inc[c][3] == Some(true) { 1 } else { -1 })
            .collect()
    }

    pub fn writhe(&self) -> i64 {
        self.signs().iter().map(|&s| s as i64).sum()
    }

    pub fn n_minus(&self) -> usize {
        self.signs().iter().filter(|&&s| s < 0).count()
    }

    pub fn to_sliced(&self) -> Sliced {
        self.try_to_sliced().expect("planar diagram has a Morse presentation")
    }

    /// Convert to a sliced diagram by sweeping: a backtracking search over
    /// crossing order, rotations and cup insertions.
    pub fn try_to_sliced(&self) -> Result<Sliced, PdError> {
        let n = self.crossings.len();
        assert!(n <= 31, "planar-diagram conversion is for small inputs");
        let occ = self.occurrences()?;
        let other = |c: usize, s: usize| -> (usize, usize) {
            let [e1, e2] = occ[&self.crossings[c][s]];
            if e1 == (c, s) { e2 } else { e1 }
        };
        let mut st = Search {
            pd: self,
            other: &other,
            memo: HashSet::new(),
            slices: Vec::new(),
            rots: vec![usize::MAX; n],
            steps: 0,
        };
        if st.run(0, &mut Vec::new(), 1) {
            let xrots: Vec<usize> = st
                .slices
                .iter()
                .filter(|(s, _)| matches!(s, Slice::X(_, _)))
                .map(|&(_, r)| r)
                .collect();
            let slices = st.slices.into_iter().map(|(s, _)| s).collect();
            let d = Sliced::new(0, slices).expect("search builds valid slices");
            self.verify(&d, &xrots);
            return Ok(d);
        }
        Err(PdError::NoPresentation)
    }

    /// Cross-check a conversion: component orientations derived from the
    /// under-strand directions must be globally consistent and reproduce the
    /// crossing signs.  `xrots` holds the placement rotation of each crossing
    /// slice in slice order: even rotations put the under-strand on the left,
    /// rotations 0 and 3 run it upward.
    fn verify(&self, d: &Sliced, xrots: &[usize]) {
        let o = orient(d, &[]);
        assert_eq!(o.crossings.len(), self.crossings.len());
        let mut flips = vec![None; o.n_components];
        for (info, &r) in o.crossings.iter().zip(xrots) {
            let (under_left, under_up) = (r % 2 == 0, r == 0 || r == 3);
            let (comp, dir) = if under_left {
                (info.comps.0, info.dirs.0)
            } else {
                (info.comps.1, info.dirs.1)
            };
            let f = dir != under_up;
            match flips[comp] {
                None => flips[comp] = Some(f),
                Some(old) => assert_eq!(old, f, "inconsistent strand orientation"),
            }
        }
        let flips: Vec<bool> = flips.into_iter().map(|f| f.unwrap_or(false)).collect();
        let o = orient(d, &flips);
        let mut want: Vec<i8> = self.signs();
        let mut got: Vec<i8> = o.crossings.iter().map(|c| c.sign).collect();
        want.sort_unstable();
        got.sort_unstable();
        assert_eq!(want, got, "conversion changed crossing signs");
    }
}

struct Search<'a> {
    pd: &'a Pd,
    other: &'a dyn Fn(usize, usize) -> (usize, usize),
    memo: HashSet<(u32, Vec<(u8, u8, u16)>)>,
    /// Emitted slices, each with the placement rotation (crossings only).
    slices: Vec<(Slice, usize)>,
    rots: Vec<usize>,
    steps: usize,
}

/// An open strand end: it must eventually attach to `slot` of `crossing`.
/// Twins born from one cup share a nonzero `origin` and may not be capped
/// against each other.
#[derive(Copy, Clone, PartialEq, Eq)]
struct Port {
    c: usize,
    s: usize,
    origin: u16,
}

impl<'a> Search<'a> {
    fn edge(&self, p: &Port) -> usize {
        self.pd.crossings[p.c][p.s]
    }

    fn key(&self, placed: u32, fr: &[Port]) -> (u32, Vec<(u8, u8, u16)>) {
        (placed, fr.iter().map(|p| (p.c as u8, p.s as u8, p.origin)).collect())
    }

    /// New top ports for placing crossing `c` with rotation `r`, or None if
    /// a top edge cannot be closed: its far attachment is already consumed
    /// and the remaining frontier `rem` holds no other opening of that edge.
    fn tops_ok(&self, c: usize, r: usize, rem: &[Port]) -> Option<[Port; 2]> {
        let mut out = [Port { c: 0, s: 0, origin: 0 }; 2];
        for (k, t) in [(r + 3) % 4, (r + 2) % 4].into_iter().enumerate() {
            let e = self.pd.crossings[c][t];
            let (c2, s2) = (self.other)(c, t);
            let consumed = (c2 == c && (s2 == r || s2 == (r + 1) % 4))
                || (self.rots[c2] != usize::MAX
                    && (s2 == self.rots[c2] || s2 == (self.rots[c2] + 1) % 4));
            if consumed && !rem.iter().any(|p| self.edge(p) == e) {
                return None;
            }
            out[k] = Port { c: c2, s: s2, origin: 0 };
        }
        Some(out)
    }

    fn run(&mut self, placed: u32, frontier: &mut Vec<Port>, next_cup: u16) -> bool {
        self.steps += 1;
        if self.steps > 400_000 {
            return false;
        }
        let all = (1u32 << self.pd.crossings.len()) - 1;
        if placed == all && frontier.is_empty() {
            return true;
        }
        let key = self.key(placed, frontier);
        if self.memo.contains(&key) {
            return false;
        }
        let undo_len = self.slices.len();

        // Caps.
        for i in 0..frontier.len().saturating_sub(1) {
            let (p1, p2) = (frontier[i], frontier[i + 1]);
            if self.edge(&p1) != self.edge(&p2) {
                continue;
            }
            if p1.origin != 0 && p1.origin == p2.origin {
                continue;
            }
            self.slices.push((Slice::Cap(i), 0));
            let mut fr = frontier.clone();
            fr.drain(i..i + 2);
            if self.run(placed, &mut fr, next_cup) {
                return true;
            }
            self.slices.truncate(undo_len);
        }

        // Placements, in order of increasing cup count.
        for c in 0..self.pd.crossings.len() {
            if placed >> c & 1 == 1 {
                continue;
            }
            for r in 0..4 {
                let kind = if r % 2 == 0 { CrossKind::ROver } else { CrossKind::LOver };
                let (su, sv) = (r, (r + 1) % 4);
                let eu = self.pd.crossings[c][su];
                let ev = self.pd.crossings[c][sv];
                let u_open = frontier.iter().any(|q| (q.c, q.s) == (c, su));
                let v_open = frontier.iter().any(|q| (q.c, q.s) == (c, sv));

                // Both bottom ports already adjacent in order.
                for i in 0..frontier.len().saturating_sub(1) {
                    if (frontier[i].c, frontier[i].s) != (c, su)
                        || (frontier[i + 1].c, frontier[i + 1].s) != (c, sv)
                    {
                        continue;
                    }
                    let mut rem = frontier.clone();
                    rem.drain(i..i + 2);
                    let Some(tops) = self.tops_ok(c, r, &rem) else { continue };
                    self.slices.push((Slice::X(i, kind), r));
                    self.rots[c] = r;
                    let mut fr = rem;
                    fr.insert(i, tops[0]);
                    fr.insert(i + 1, tops[1]);
                    if self.run(placed | 1 << c, &mut fr, next_cup) {
                        return true;
                    }
                    self.rots[c] = usize::MAX;
                    self.slices.truncate(undo_len);
                }

                // One bottom port open: cup the other bottom edge next to it.
                if eu != ev {
                    for i in 0..frontier.len() {
                        let p = frontier[i];
                        if (p.c, p.s) == (c, su) && !v_open {
                            // u open at i; cup edge v to its right.
                            let mut rem = frontier.clone();
                            let (c2, s2) = (self.other)(c, sv);
                            rem[i] = Port { c: c2, s: s2, origin: next_cup };
                            let Some(tops) = self.tops_ok(c, r, &rem) else { continue };
                            self.slices.push((Slice::Cup(i + 1), 0));
                            self.slices.push((Slice::X(i, kind), r));
                            self.rots[c] = r;
                            let mut fr = rem;
                            fr.insert(i, tops[0]);
                            fr.insert(i + 1, tops[1]);
                            if self.run(placed | 1 << c, &mut fr, next_cup + 1) {
                                return true;
                            }
                            self.rots[c] = usize::MAX;
                            self.slices.truncate(undo_len);
                        }
                        if (p.c, p.s) == (c, sv) && !u_open {
                            // v open at i; cup edge u to its left.
                            let mut rem = frontier.clone();
                            let (c2, s2) = (self.other)(c, su);
                            rem[i] = Port { c: c2, s: s2, origin: next_cup };
                            let Some(tops) = self.tops_ok(c, r, &rem) else { continue };
                            self.slices.push((Slice::Cup(i), 0));
                            self.slices.push((Slice::X(i + 1, kind), r));
                            self.rots[c] = r;
                            let mut fr = rem;
                            fr.insert(i + 1, tops[0]);
                            fr.insert(i + 2, tops[1]);
                            if self.run(placed | 1 << c, &mut fr, next_cup + 1) {
                                return true;
                            }
                            self.rots[c] = usize::MAX;
                            self.slices.truncate(undo_len);
                        }
                    }
                }

                // Fresh placement: cup both bottom edges (one cup if they
                // coincide in a kink).
                if !u_open && !v_open {
                    for j in 0..=frontier.len() {
                        let mut rem = frontier.clone();
                        let cups;
                        let at;
                        if eu == ev {
                            cups = 0;
                            at = j;
                        } else {
                            let (cu, su2) = (self.other)(c, su);
                            let (cv, sv2) = (self.other)(c, sv);
                            rem.insert(j, Port { c: cu, s: su2, origin: next_cup });
                            rem.insert(j + 1, Port { c: cv, s: sv2, origin: next_cup + 1 });
                            cups = 2;
                            at = j + 1;
                        }
                        let Some(tops) = self.tops_ok(c, r, &rem) else { continue };
                        if eu == ev {
                            self.slices.push((Slice::Cup(j), 0));
                            self.slices.push((Slice::X(j, kind), r));
                        } else {
                            self.slices.push((Slice::Cup(j), 0));
                            self.slices.push((Slice::Cup(j + 2), 0));
                            self.slices.push((Slice::X(j + 1, kind), r));
                        }
                        self.rots[c] = r;
                        let mut fr = rem;
                        fr.insert(at, tops[0]);
                        fr.insert(at + 1, tops[1]);
                        if self.run(placed | 1 << c, &mut fr, next_cup + cups) {
                            return true;
                        }
                        self.rots[c] = usize::MAX;
                        self.slices.truncate(undo_len);
                    }
                }
            }
        }

        self.memo.insert(key);
        false
    }
}

/// Export a closed sliced diagram (with chosen component orientations) to a
/// planar diagram plus its crossing signs.
pub fn sliced_to_pd(d: &Sliced, flips: &[bool]) -> (Pd, Vec<i8>) {
    let o = orient(d, flips);
    let mut crossings = Vec::new();
    let mut signs = Vec::new();
    for info in &o.crossings {
        let [bl, br, tr, tl] = info.edges;
        let (ul, ur) = info.dirs;
        let x = match info.kind {
            // Under-strand is the left one.
            CrossKind::ROver => {
                if ul {
                    [bl, br, tr, tl]
                } else {
                    [tr, tl, bl, br]
                }
            }
            // Under-strand is the right one.
            CrossKind::LOver => {
                if ur {
                    [br, tr, tl, bl]
                } else {
                    [tl, bl, br, tr]
                }
            }
        };
        crossings.push(x);
        signs.push(info.sign);
    }
    (Pd { crossings }, signs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::khr2::bracket::khr2_pd;
    use crate::khr2::diagram::closed_braid;

    #[test]
    fn parse_and_signs_trefoil() {
        let pd = Pd::parse("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert_eq!(pd.crossings.len(), 3);
        assert_eq!(pd.writhe(), -3);
        assert!(Pd::parse("X(1,2,3)").is_err());
        assert!(Pd::parse("X(1,1,2,2) X(3,3,4,4)").is_ok());
    }

    #[test]
    fn left_trefoil_via_pd() {
        let pd = Pd::parse("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let h = khr2_pd(&pd);
        let want: super::super::bracket::GradedDims =
            [((0, 2), 1), ((0, 0), 1), ((2, -2), 1), ((3, -6), 1)]
                .into_iter()
                .collect();
        assert_eq!(h, want);
    }

    #[test]
    fn figure_eight_via_pd() {
        let pd = Pd::parse("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap();
        assert_eq!(pd.writhe(), 0);
        let h = khr2_pd(&pd);
        assert_eq!(h.values().sum::<usize>(), 6);
        assert_eq!(h.get(&(-2, 5)), Some(&1));
        assert_eq!(h.get(&(2, -5)), Some(&1));
    }

    #[test]
    fn hopf_via_pd() {
        let pd = Pd::parse("X(4,1,3,2) X(2,3,1,4)").unwrap();
        assert_eq!(pd.writhe(), -2);
        let h = khr2_pd(&pd);
        let want: super::super::bracket::GradedDims =
            [((0, 2), 1), ((0, 0), 1), ((2, -2), 1), ((2, -4), 1)]
                .into_iter()
                .collect();
        assert_eq!(h, want);
    }

    #[test]
    fn export_round_trip() {
        let d = closed_braid(2, &[1, 1, 1]);
        let (pd, signs) = sliced_to_pd(&d, &[]);
        assert_eq!(pd.crossings.len(), 3);
        assert_eq!(signs, vec![1, 1, 1]);
        assert_eq!(pd.writhe(), 3);
        let h = khr2_pd(&pd);
        let want: super::super::bracket::GradedDims =
            [((0, -2), 1), ((0, 0), 1), ((-2, 2), 1), ((-3, 6), 1)]
                .into_iter()
                .collect();
        assert_eq!(h, want);
    }
}
