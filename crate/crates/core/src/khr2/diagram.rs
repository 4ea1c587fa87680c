//! Sliced link and tangle diagrams: one elementary piece per level.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CrossKind {
    /// The strand entering at the bottom left passes over.
    LOver,
    /// The strand entering at the bottom right passes over.
    ROver,
}

impl CrossKind {
    pub fn flip(self) -> Self {
        match self {
            CrossKind::LOver => CrossKind::ROver,
            CrossKind::ROver => CrossKind::LOver,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Slice {
    /// Crossing on positions (p, p + 1); width unchanged.
    X(usize, CrossKind),
    /// Birth of an adjacent pair at positions (p, p + 1); width + 2.
    Cup(usize),
    /// Join of the adjacent pair at positions (p, p + 1); width - 2.
    Cap(usize),
}

impl Slice {
    pub fn width_out(&self, w: usize) -> usize {
        match self {
            Slice::X(_, _) => w,
            Slice::Cup(_) => w + 2,
            Slice::Cap(_) => w - 2,
        }
    }

    fn ok_at(&self, w: usize) -> bool {
        match self {
            Slice::X(p, _) => p + 1 < w,
            Slice::Cup(p) => *p <= w,
            Slice::Cap(p) => p + 1 < w,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("slice {0} does not fit its width")]
    BadSlice(usize),
}

/// A diagram presented as a stack of elementary slices over a bottom width.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sliced {
    pub width0: usize,
    pub slices: Vec<Slice>,
}

impl Sliced {
    pub fn new(width0: usize, slices: Vec<Slice>) -> Result<Self, DiagramError> {
        let d = Sliced { width0, slices };
        let mut w = d.width0;
        for (k, s) in d.slices.iter().enumerate() {
            if !s.ok_at(w) {
                return Err(DiagramError::BadSlice(k));
            }
            w = s.width_out(w);
        }
        Ok(d)
    }

    /// Widths at every level, `slices.len() + 1` entries.
    pub fn widths(&self) -> Vec<usize> {
        let mut v = vec![self.width0];
        for s in &self.slices {
            v.push(s.width_out(*v.last().unwrap()));
        }
        v
    }

    pub fn top_width(&self) -> usize {
        self.widths().pop().unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.width0 == 0 && self.top_width() == 0
    }

    pub fn n_crossings(&self) -> usize {
        self.slices.iter().filter(|s| matches!(s, Slice::X(_, _))).count()
    }

    /// The mirror image: every crossing switched.
    pub fn mirror(&self) -> Sliced {
        let slices = self
            .slices
            .iter()
            .map(|s| match s {
                Slice::X(p, k) => Slice::X(*p, k.flip()),
                other => *other,
            })
            .collect();
        Sliced { width0: self.width0, slices }
    }

    /// Concatenate another diagram on top.
    pub fn stacked(&self, upper: &[Slice]) -> Sliced {
        let mut s = self.clone();
        s.slices.extend_from_slice(upper);
        s
    }
}

/// Braid word to diagram: generator `k > 0` is a positive crossing (left
/// strand over, all strands upward) on positions (k - 1, k); `-k` the inverse.
pub fn braid(n: usize, word: &[i32]) -> Sliced {
    let slices = word
        .iter()
        .map(|&g| {
            assert!(g != 0 && (g.unsigned_abs() as usize) < n, "braid generator out of range");
            let p = g.unsigned_abs() as usize - 1;
            Slice::X(p, if g > 0 { CrossKind::LOver } else { CrossKind::ROver })
        })
        .collect();
    Sliced { width0: n, slices }
}

/// One belt circle around `n` parallel strands: its left leg passes under the
/// cable on the way out and over it on the way back.
pub fn belt_block(n: usize) -> Vec<Slice> {
    let mut v = vec![Slice::Cup(n)];
    for j in (0..n).rev() {
        v.push(Slice::X(j, CrossKind::LOver));
    }
    for j in 0..n {
        v.push(Slice::X(j, CrossKind::LOver));
    }
    v.push(Slice::Cap(n));
    v
}

/// `k` stacked belt circles around `n` strands, as an (n, n)-tangle diagram.
pub fn belt(n: usize, k: usize) -> Sliced {
    let mut slices = Vec::new();
    for _ in 0..k {
        slices.extend(belt_block(n));
    }
    Sliced { width0: n, slices }
}

/// Trace closure of an (n, n)-tangle diagram: nested cups below, the tangle
/// on the left half, nested caps above.
pub fn closed_tangle(t: &Sliced) -> Sliced {
    let n = t.width0;
    assert_eq!(t.top_width(), n, "trace closure needs equal end widths");
    let mut slices = Vec::new();
    for i in 0..n {
        slices.push(Slice::Cup(i));
    }
    // After the cups the tangle occupies positions 0..n and the return
    // strands n..2n; tangle slices embed unchanged.
    slices.extend_from_slice(&t.slices);
    for i in (0..n).rev() {
        slices.push(Slice::Cap(i));
    }
    Sliced::new(0, slices).unwrap()
}

/// Trace closure of a braid word.
pub fn closed_braid(n: usize, word: &[i32]) -> Sliced {
    closed_tangle(&braid(n, word))
}

/// One strand passage through a crossing, recorded while orienting.
#[derive(Clone, Debug)]
pub struct CrossingInfo {
    pub slice: usize,
    pub kind: CrossKind,
    /// Compnents carried by the left (bottom-left to top-right) and right
    /// strands.
    pub comps: (usize, usize),
    /// Do the left/right strands travel upward?
    pub dirs: (bool, bool),
    pub sign: i8,
    /// Oriented edge labels at the four ports (bl, br, tr, tl), 1-based.
    pub edges: [usize; 4],
}

#[derive(Clone, Debug)]
pub struct Oriented {
    pub n_components: usize,
    pub crossings: Vec<CrossingInfo>,
}

impl Oriented {
    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign < 0).count()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Total linking number between two distinct components.
    pub fn linking(&self, a: usize, b: usize) -> i64 {
        assert_ne!(a, b);
        let s: i64 = self
            .crossings
            .iter()
            .filter(|c| c.comps == (a, b) || c.comps == (b, a))
            .map(|c| c.sign as i64)
            .sum();
        assert_eq!(s.rem_euclid(2), 0);
        s / 2
    }
}

/// Wiring of a slice as unordered port pairs; ports are (level, position).
fn wirings(k: usize, w: usize, s: &Slice) -> Vec<((usize, usize), (usize, usize))> {
    let mut v = Vec::new();
    match s {
        Slice::X(p, _) => {
            // Crossing wires first: left strand, then right strand.
            v.push(((k, *p), (k + 1, p + 1)));
            v.push(((k, p + 1), (k + 1, *p)));
            for i in 0..w {
                if i != *p && i != p + 1 {
                    v.push(((k, i), (k + 1, i)));
                }
            }
        }
        Slice::Cup(p) => {
            v.push(((k + 1, *p), (k + 1, p + 1)));
            for i in 0..w {
                let j = if i < *p { i } else { i + 2 };
                v.push(((k, i), (k + 1, j)));
            }
        }
        Slice::Cap(p) => {
            v.push(((k, *p), (k, p + 1)));
            for i in 0..w {
                if i == *p || i == p + 1 {
                    continue;
                }
                let j = if i < *p { i } else { i - 2 };
                v.push(((k, i), (k + 1, j)));
            }
        }
    }
    v
}

/// Orient a closed sliced diagram.  Components are numbered in discovery
/// order (scanning slices bottom up); `flips` reverses the chosen orientation
/// of the given components.  Records crossing signs, strand components and
/// the edge labels needed for planar-diagram export.
pub fn orient(d: &Sliced, flips: &[bool]) -> Oriented {
    assert!(d.is_closed(), "orientation requires a closed diagram");
    let ws = d.widths();
    // Global wiring list with slice-local wire order preserved.
    let mut wires: Vec<((usize, usize), (usize, usize))> = Vec::new();
    // Crossing slice index and the ids of its (left, right) wires.
    let mut cross_wires: Vec<(usize, usize, usize, CrossKind)> = Vec::new();
    for (k, s) in d.slices.iter().enumerate() {
        if let Slice::X(_, kind) = s {
            cross_wires.push((k, wires.len(), wires.len() + 1, *kind));
        }
        wires.extend(wirings(k, ws[k], s));
    }
    // Port adjacency: every port of a closed diagram meets exactly two wires.
    let mut at: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
    for (i, (a, b)) in wires.iter().enumerate() {
        at.entry(*a).or_default().push(i);
        at.entry(*b).or_default().push(i);
    }
    for (p, v) in &at {
        assert_eq!(v.len(), 2, "port {p:?} is not two-valent");
    }

    // Walk components; record per wire the component and travel direction
    // (true = traversed from the first stored port to the second).
    let mut comp_of = vec![usize::MAX; wires.len()];
    let mut fwd = vec![false; wires.len()];
    let mut order = vec![0usize; wires.len()]; // visit order within the walk
    let mut n_components = 0;
    for start in 0..wires.len() {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let comp = n_components;
        n_components += 1;
        let flip = flips.get(comp).copied().unwrap_or(false);
        let mut step = 0usize;
        let (mut wire, mut from) = if flip {
            (start, wires[start].1)
        } else {
            (start, wires[start].0)
        };
        loop {
            comp_of[wire] = comp;
            fwd[wire] = wires[wire].0 == from;
            order[wire] = step;
            step += 1;
            let to = if fwd[wire] { wires[wire].1 } else { wires[wire].0 };
            let next = *at[&to].iter().find(|&&w| w != wire).unwrap();
            if next == start {
                break;
            }
            from = to;
            wire = next;
        }
    }

    // Edge labels: maximal arcs between crossing passages.  Each crossing
    // wire starts a new label at its exit; labels propagate along the walk.
    let is_cross: std::collections::BTreeSet<usize> =
        cross_wires.iter().flat_map(|&(_, l, r, _)| [l, r]).collect();
    let mut label_after = vec![0usize; wires.len()];
    let mut next_label = 1usize;
    // Re-walk each component to assign labels in order.
    let mut comp_wires: Vec<Vec<usize>> = vec![Vec::new(); n_components];
    for (i, &c) in comp_of.iter().enumerate() {
        comp_wires[c].push(i);
    }
    for cw in &mut comp_wires {
        cw.sort_by_key(|&i| order[i]);
    }
    for cw in &comp_wires {
        assert!(
            cw.iter().any(|i| is_cross.contains(i)),
            "a crossing-free closed component cannot be exported"
        );
        // Start labelling right after the first crossing passage.
        let first = cw.iter().position(|i| is_cross.contains(i)).unwrap();
        let m = cw.len();
        let mut label = 0usize;
        for t in 0..m {
            let i = cw[(first + t) % m];
            if is_cross.contains(&i) {
                label = next_label;
                next_label += 1;
            }
            label_after[i] = label;
        }
    }
    let label_before = |wire: usize, cw: &[usize]| -> usize {
        let pos = cw.iter().position(|&i| i == wire).unwrap();
        label_after[cw[(pos + cw.len() - 1) % cw.len()]]
    };

    let mut crossings = Vec::new();
    for &(slice, lw, rw, kind) in &cross_wires {
        let (cl, cr) = (comp_of[lw], comp_of[rw]);
        // Left wire is stored (bottom, top): fwd means travelling upward.
        let (ul, ur) = (fwd[lw], fwd[rw]);
        let vl = if ul { (1i64, 1i64) } else { (-1, -1) };
        let vr = if ur { (-1i64, 1i64) } else { (1, -1) };
        let (vo, vu) = match kind {
            CrossKind::LOver => (vl, vr),
            CrossKind::ROver => (vr, vl),
        };
        let det = vo.0 * vu.1 - vo.1 * vu.0;
        let sign = if det > 0 { 1 } else { -1 };
        // Port edge labels (bl, br, tr, tl).
        let l_in = label_before(lw, &comp_wires[cl]);
        let l_out = label_after[lw];
        let r_in = label_before(rw, &comp_wires[cr]);
        let r_out = label_after[rw];
        let (bl, tr) = if ul { (l_in, l_out) } else { (l_out, l_in) };
        let (br, tl) = if ur { (r_in, r_out) } else { (r_out, r_in) };
        crossings.push(CrossingInfo {
            slice,
            kind,
            comps: (cl, cr),
            dirs: (ul, ur),
            sign,
            edges: [bl, br, tr, tl],
        });
    }
    Oriented { n_components, crossings }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths_and_validation() {
        let d = Sliced::new(2, vec![Slice::Cup(1), Slice::X(1, CrossKind::LOver), Slice::Cap(1)])
            .unwrap();
        assert_eq!(d.widths(), vec![2, 4, 4, 2]);
        assert!(Sliced::new(1, vec![Slice::X(0, CrossKind::LOver)]).is_err());
        assert!(Sliced::new(0, vec![Slice::Cap(0)]).is_err());
    }

    #[test]
    fn orient_positive_kink() {
        // Closure of the single positive generator on two strands: an unknot
        // with writhe +1.
        let d = closed_braid(2, &[1]);
        let o = orient(&d, &[]);
        assert_eq!(o.n_components, 1);
        assert_eq!(o.writhe(), 1);
        assert_eq!((o.n_plus(), o.n_minus()), (1, 0));
        // Orientation-reversal keeps the writhe of a knot.
        let o2 = orient(&d, &[true]);
        assert_eq!(o2.writhe(), 1);
    }

    #[test]
    fn orient_trefoil_and_hopf() {
        let tref = closed_braid(2, &[1, 1, 1]);
        let o = orient(&tref, &[]);
        assert_eq!(o.n_components, 1);
        assert_eq!(o.writhe(), 3);

        let hopf = closed_braid(2, &[1, 1]);
        let o = orient(&hopf, &[]);
        assert_eq!(o.n_components, 2);
        assert_eq!(o.writhe(), 2);
        assert_eq!(o.linking(0, 1), 1);
        // Reversing one component makes both crossings negative.
        let o2 = orient(&hopf, &[true]);
        assert_eq!(o2.writhe(), -2);
        assert_eq!(o2.linking(0, 1), -1);

        let neg = closed_braid(2, &[-1, -1]);
        assert_eq!(orient(&neg, &[]).writhe(), -2);
    }

    #[test]
    fn belt_blocks_have_expected_shape() {
        let b = belt(2, 1);
        assert_eq!(b.n_crossings(), 4);
        assert_eq!(b.widths(), vec![2, 4, 4, 4, 4, 4, 2]);
        assert_eq!(belt(3, 2).n_crossings(), 12);
    }

    #[test]
    fn mirror_flips_signs() {
        let d = closed_braid(2, &[1, 1, 1]);
        let o = orient(&d.mirror(), &[]);
        assert_eq!(o.writhe(), -3);
    }
}
