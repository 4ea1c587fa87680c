//! Criterion bodies that depend on the cabling, tower and projector layers.
//! Each returns Ok(()) on success and an explanation on failure.

use lasagna::cob::{Cob, FlatTangle};

/// Sphere, dotted sphere, two-dot and neck-cutting relations, plus the
/// swap involution on a cabled pair.
pub fn local_relations() -> Result<(), String> {
    use lasagna::arith::qi;
    // Closed evaluations.
    for (gd, want) in [((0usize, 0usize), 0i64), ((0, 1), 1), ((1, 0), 2), ((0, 2), 0), ((2, 0), 0)]
    {
        let got = lasagna::cob::evaluate_closed(gd.0, gd.1);
        if got != qi(want) {
            return Err(format!("closed surface {gd:?}: got {got}"));
        }
    }
    // Neck cutting: composing the two saddles on a pair of strands gives
    // dot-on-one-strand plus dot-on-the-other.
    let id2 = FlatTangle::identity(2);
    let tau = FlatTangle::from_pairs(2, 2, &[(0, 1), (2, 3)], 0).unwrap();
    let cut = Cob::saddle_arcs(&id2, &tau).compose(&Cob::saddle_arcs(&tau, &id2));
    if cut != Cob::dot_on_arc(&id2, 0).add(&Cob::dot_on_arc(&id2, 1)) {
        return Err("neck cutting failed on the strand pair".into());
    }
    // Two dots kill a component.
    let dd = Cob::dot_on_arc(&id2, 0).compose(&Cob::dot_on_arc(&id2, 0));
    if !dd.is_zero() {
        return Err("double dot did not vanish".into());
    }
    // Swap involution on the 2-cable.
    lasagna::cabling::checks::swap_involution(1).map_err(|e| format!("swap: {e}"))?;
    lasagna::cabling::checks::swap_involution(2).map_err(|e| format!("swap: {e}"))?;
    Ok(())
}

pub fn symmetrizers() -> Result<(), String> {
    lasagna::cabling::checks::symmetrizer_suite()
}

pub fn s2xb2_tails() -> Result<(), String> {
    lasagna::cabling::checks::s2xb2_tails()
}

pub fn odd_vanishing() -> Result<(), String> {
    lasagna::cabling::checks::odd_vanishing()
}

pub fn closed_manifolds() -> Result<(), String> {
    lasagna::cabling::checks::closed_manifolds()
}

pub fn belt_splitting() -> Result<(), String> {
    lasagna::projector::checks::belt_splitting()
}

pub fn projectors() -> Result<(), String> {
    lasagna::projector::checks::projector_suite()
}

pub fn exotica_scale() -> Result<(), String> {
    lasagna::cabling::checks::exotica_scale()
}
