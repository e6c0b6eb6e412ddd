use super::{FiniteRing, RingError, Subring};
use crate::abelian::{subgroup_generated, Subgroup};

/// `C_S(r) = {s in S : sr = rs}`.
pub fn centralizer(sub: &Subring, r: usize) -> Result<Subring, RingError> {
    let ring = sub.ring();
    ring.check(r)?;
    let elems = sub
        .elements()
        .iter()
        .copied()
        .filter(|&s| ring.commutes(s, r))
        .collect();
    Ok(Subring::from_sorted_unchecked(
        ring.clone(),
        elems,
        Vec::new(),
    ))
}

/// `Z(R)`.
pub fn center(ring: &FiniteRing) -> Subring {
    Subring::from_sorted_unchecked(ring.clone(), ring.center_elements().to_vec(), Vec::new())
}

/// `Z(S, R) = {s in S : sr = rs for all r in R}`.
///
/// Computed directly from `S`, then checked against `Z(R) ∩ S`.
pub fn relative_center(sub: &Subring) -> Subring {
    let ring = sub.ring();
    let direct: Vec<usize> = sub
        .elements()
        .iter()
        .copied()
        .filter(|&s| ring.elements().all(|r| ring.commutes(s, r)))
        .collect();
    let via_center: Vec<usize> = ring
        .center_elements()
        .iter()
        .copied()
        .filter(|&z| sub.contains(z))
        .collect();
    assert_eq!(direct, via_center, "Z(S,R) must equal Z(R) ∩ S");
    Subring::from_sorted_unchecked(ring.clone(), direct, Vec::new())
}

/// `K(S, R) = {[s, r] : s in S, r in R}` as a sorted set.
pub fn commutator_set(sub: &Subring) -> Vec<usize> {
    let ring = sub.ring();
    let mut hit = vec![false; ring.order()];
    for &s in sub.elements() {
        for r in ring.elements() {
            hit[ring.bracket(s, r)] = true;
        }
    }
    hit.iter()
        .enumerate()
        .filter_map(|(i, &h)| h.then_some(i))
        .collect()
}

/// `[S, R]`, the additive subgroup generated by `K(S, R)`.
pub fn commutator_subgroup(sub: &Subring) -> Subgroup {
    subgroup_generated(sub.ring().additive(), &commutator_set(sub))
        .expect("commutators lie in the ring")
}

/// `[x, R] = {[x, y] : y in R}`, checked to be an additive subgroup.
pub fn element_commutator_subgroup(ring: &FiniteRing, x: usize) -> Result<Subgroup, RingError> {
    ring.check(x)?;
    let mut hit = vec![false; ring.order()];
    for y in ring.elements() {
        hit[ring.bracket(x, y)] = true;
    }
    let elems: Vec<usize> = hit
        .iter()
        .enumerate()
        .filter_map(|(i, &h)| h.then_some(i))
        .collect();
    let closed = elems
        .iter()
        .all(|&a| hit[ring.neg(a)] && elems.iter().all(|&b| hit[ring.add(a, b)]));
    if !closed {
        return Err(RingError::ClosureViolation(x));
    }
    Ok(Subgroup::from_elements(ring.additive(), &elems)?)
}
