use super::{is_ideal, FiniteRing, RingError, Subring};
use crate::abelian::{quotient, QuotientGroup};

/// `R / N` for an ideal `N`, with the projection from `R`.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    ring: FiniteRing,
    group: QuotientGroup,
}

impl QuotientRing {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn group(&self) -> &QuotientGroup {
        &self.group
    }

    pub fn project(&self, x: usize) -> usize {
        self.group.project(x)
    }

    pub fn lift(&self, coset: usize) -> usize {
        self.group.lift(coset)
    }

    /// Image `(H + N) / N` of a subring `H` of the parent ring.
    pub fn image(&self, sub: &Subring) -> Subring {
        let mut elems: Vec<usize> = sub.elements().iter().map(|&x| self.project(x)).collect();
        elems.sort_unstable();
        elems.dedup();
        Subring::from_sorted_unchecked(self.ring.clone(), elems, Vec::new())
    }
}

/// Quotient ring with coset multiplication; the result is re-validated as a ring.
pub fn quotient_ring(ring: &FiniteRing, ideal: &Subring) -> Result<QuotientRing, RingError> {
    if !ideal.ring().same_ring(ring) {
        return Err(RingError::RingMismatch);
    }
    if !is_ideal(ring, ideal.elements()) {
        return Err(RingError::NotAnIdeal);
    }
    let group = quotient(ring.additive(), &ideal.as_subgroup())?;
    let canon = group.structure().clone();
    let lifts: Vec<usize> = (0..canon.rank())
        .map(|j| group.lift(canon.basis(j)))
        .collect();
    let table = lifts
        .iter()
        .map(|&a| {
            lifts
                .iter()
                .map(|&b| canon.coords(group.project(ring.mul(a, b))))
                .collect()
        })
        .collect();
    let name = format!("{}/{}", ring.label(), ideal);
    let qring = FiniteRing::from_structure(canon.cyclic_orders().to_vec(), table, Some(name))?;
    Ok(QuotientRing { ring: qring, group })
}
