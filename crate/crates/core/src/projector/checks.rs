//! Window-certified checks for the truncated projectors: belt splitting with
//! its orbit refinement, and the absorption properties.

use crate::cabling::scripts::{full_twist, prefixed_node_slices};
use crate::cabling::system::{build_node, SysOpts, SystemSpec};
use crate::cabling::Scanner;
use crate::khr2::diagram::{closed_braid, closed_tangle};
use crate::khr2::{braid, khr2_closed, GradedDims, Slice, Sliced};

use super::{full_twist_word, identity_slot, truncated_projector};

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn ft_prefix(n: usize, m: usize) -> Vec<Slice> {
    let one = full_twist(n);
    (0..m).flat_map(|_| one.iter().cloned()).collect()
}

/// Closure table of the `m`-fold full twist on `n` strands with `k` belts.
fn belted_twist_table(n: usize, k: usize, m: usize) -> GradedDims {
    let slices = prefixed_node_slices(n, k, &ft_prefix(n, m));
    khr2_closed(&Sliced::new(0, slices).expect("belted twist diagram"), 0)
}

/// Predicted splitting: one summand per belt subset, the closure of the bare
/// twist shifted by `(-2 n i, (2 n + 2) i - k)` for subset size `i`.
fn split_prediction(n: usize, k: usize, m: usize, collapse_orbits: bool) -> GradedDims {
    let base = khr2_closed(&closed_braid(n, &full_twist_word(n, m)), 0);
    let mut rhs = GradedDims::new();
    for i in 0..=k {
        let copies = if collapse_orbits { 1 } else { binom(k, i) };
        let dh = -2 * n as i32 * i as i32;
        let dq = (2 * n as i32 + 2) * i as i32 - k as i32;
        for (&(h, q), &d) in &base {
            *rhs.entry((h + dh, q + dq)).or_insert(0) += copies * d;
        }
    }
    rhs
}

/// Homological floor above which the splitting is certified: one full twist
/// of slack against the truncation boundary.  A single strand has an exact
/// (empty) twist, so everything is certified.
pub fn split_floor(n: usize, m: usize) -> i32 {
    if n <= 1 {
        i32::MIN
    } else {
        -2 * n as i32 * (m as i32 - 1)
    }
}

fn agree_above(name: &str, lhs: &GradedDims, rhs: &GradedDims, floor: i32) -> Result<(), String> {
    let mut keys: Vec<(i32, i32)> = lhs.keys().chain(rhs.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    for k in keys {
        if k.0 <= floor {
            continue;
        }
        let a = lhs.get(&k).copied().unwrap_or(0);
        let b = rhs.get(&k).copied().unwrap_or(0);
        if a != b {
            return Err(format!("{name}: at {k:?} got {a}, predicted {b} (floor {floor})"));
        }
    }
    Ok(())
}

/// Belt splitting for `k` belts around the `m`-fold twist on `n` strands,
/// compared within the certified window.
pub fn belt_split_check(n: usize, k: usize, m: usize) -> Result<(), String> {
    let lhs = belted_twist_table(n, k, m);
    let rhs = split_prediction(n, k, m, false);
    let floor = split_floor(n, m);
    agree_above(&format!("belt split ({n}, {k}, {m})"), &lhs, &rhs, floor)?;
    if n == 1 && lhs != rhs {
        return Err(format!("belt split (1, {k}, {m}): expected exact equality"));
    }
    Ok(())
}

/// Symmetrized refinement: the belt symmetrizer collapses each subset-size
/// orbit to a single summand.
pub fn orbit_check(n: usize, k: usize) -> Result<(), String> {
    let mut sc = Scanner::new();
    let spec = SystemSpec::belts(n, k);
    let node = build_node(&mut sc, &spec, 0, (0, 0), &SysOpts::default())?;
    let got = node.im.dims();
    let want = split_prediction(n, k, 1, true);
    if got != want {
        return Err(format!("orbits ({n}, {k}): image {got:?}, predicted {want:?}"));
    }
    Ok(())
}

/// C8: splitting pattern at (1, 1, m), (1, 2, m), (2, 1, 2), with the orbit
/// collapse for a symmetrized pair of belts on one strand.
pub fn belt_splitting() -> Result<(), String> {
    for m in 1..=2 {
        belt_split_check(1, 1, m)?;
        belt_split_check(1, 2, m)?;
    }
    belt_split_check(2, 1, 2)?;
    orbit_check(1, 1)?;
    orbit_check(1, 2)?;
    Ok(())
}

/// Closure table of the twist with extra slices appended to the braid;
/// `n_neg` counts negative crossings of the closed-up diagram so the result
/// is the honest invariant.
fn twist_plus(n: usize, m: usize, extra: &[Slice], n_neg: usize) -> GradedDims {
    let mut t = braid(n, &full_twist_word(n, m));
    t.slices.extend(extra.iter().cloned());
    khr2_closed(&closed_tangle(&Sliced::new(n, t.slices).expect("twist extension")), n_neg)
}

/// C9 on two strands, depths `m <= 3`: the identity object is unique at
/// (0, 0); a turnback annihilates the twist inside the window; crossings of
/// either sign are absorbed with no shift.
pub fn projector_suite() -> Result<(), String> {
    for m in 1..=3usize {
        let p = truncated_projector(2, m);
        if identity_slot(&p.complex, 2) != Some(0) {
            return Err(format!("m = {m}: identity object not unique at (0, 0)"));
        }
        let base = khr2_closed(&closed_braid(2, &full_twist_word(2, m)), 0);
        let floor = -2 * m as i32;

        let tau = twist_plus(2, m, &[Slice::Cap(0), Slice::Cup(0)], 0);
        agree_above(&format!("turnback killing m = {m}"), &tau, &GradedDims::new(), floor)?;
        if tau.is_empty() {
            return Err(format!("turnback killing m = {m}: table empty, classes should survive below the window"));
        }

        let pos = twist_plus(2, m, &braid(2, &[1]).slices, 0);
        agree_above(&format!("absorption of s1 at m = {m}"), &pos, &base, floor)?;
        let neg = twist_plus(2, m, &braid(2, &[-1]).slices, 1);
        agree_above(&format!("absorption of s1^-1 at m = {m}"), &neg, &base, floor)?;
    }

    // Dual truncations live in nonnegative homological degree.
    for m in 1..=3usize {
        let d = super::dualize(&truncated_projector(2, m).complex);
        if d.h_min < 0 {
            return Err(format!("dual truncation m = {m} reaches h = {}", d.h_min));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!((0..=4).map(|i| binom(4, i)).collect::<Vec<_>>(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn one_strand_splitting_is_exact() {
        belt_split_check(1, 1, 1).unwrap();
        belt_split_check(1, 2, 1).unwrap();
    }

    #[test]
    fn orbits_collapse_on_one_strand() {
        orbit_check(1, 1).unwrap();
        orbit_check(1, 2).unwrap();
    }

    #[test]
    fn two_strand_split_in_window() {
        belt_split_check(2, 1, 2).unwrap();
    }

    #[test]
    fn absorption_and_killing() {
        projector_suite().unwrap();
    }
}
