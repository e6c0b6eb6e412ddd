use std::fmt;

use super::{FiniteRing, RingError};
use crate::abelian::{all_subgroups, AbelianError, Subgroup};

/// Default order cap for exhaustive subring enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 64;

/// A subring, stored as its full sorted element set inside the parent ring.
///
/// Equality is element-set equality within the same ring.
#[derive(Clone)]
pub struct Subring {
    ring: FiniteRing,
    elements: Vec<usize>,
    member: Vec<bool>,
    generators: Vec<usize>,
}

impl PartialEq for Subring {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.elements == other.elements
    }
}

impl Eq for Subring {}

impl fmt::Debug for Subring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subring")
            .field("ring", &self.ring.label())
            .field("elements", &self.elements)
            .finish()
    }
}

impl fmt::Display for Subring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Subring {
    pub(crate) fn from_sorted_unchecked(
        ring: FiniteRing,
        elements: Vec<usize>,
        generators: Vec<usize>,
    ) -> Self {
        let mut member = vec![false; ring.order()];
        for &x in &elements {
            member[x] = true;
        }
        Self {
            ring,
            elements,
            member,
            generators,
        }
    }

    /// Wraps an element set after checking closure under `+`, `-` and `*`.
    pub fn from_elements(ring: &FiniteRing, elements: &[usize]) -> Result<Self, RingError> {
        if let Some(&bad) = elements.iter().find(|&&x| x >= ring.order()) {
            return Err(RingError::ElementMismatch(bad));
        }
        if !is_subring(ring, elements) {
            return Err(RingError::NotASubring);
        }
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let generators = Subgroup::from_elements(ring.additive(), &elems)?
            .generators()
            .to_vec();
        Ok(Self::from_sorted_unchecked(ring.clone(), elems, generators))
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.member.get(x).copied().unwrap_or(false)
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.ring.order()
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subset_of(&self, other: &Subring) -> bool {
        self.ring.same_ring(&other.ring) && self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_commutative(&self) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| self.ring.commutes(a, b)))
    }

    pub fn is_ideal(&self) -> bool {
        is_ideal(&self.ring, &self.elements)
    }

    /// The additive group of the subring as a subgroup of `(R, +)`.
    pub fn as_subgroup(&self) -> Subgroup {
        Subgroup::from_elements(self.ring.additive(), &self.elements)
            .expect("subrings are additive subgroups")
    }
}

/// Smallest subring of `ring` containing `gens`.
pub fn subring_closure(ring: &FiniteRing, gens: &[usize]) -> Result<Subring, RingError> {
    for &g in gens {
        ring.check(g)?;
    }
    let mut span = Subgroup::zero(ring.additive());
    for &g in gens {
        span = span.join_element(g);
    }
    loop {
        let missing = span.elements().iter().find_map(|&a| {
            span.elements()
                .iter()
                .map(|&b| ring.mul(a, b))
                .find(|&p| !span.contains(p))
        });
        match missing {
            Some(p) => span = span.join_element(p),
            None => break,
        }
    }
    let mut generators = gens.to_vec();
    generators.dedup();
    Ok(Subring::from_sorted_unchecked(
        ring.clone(),
        span.elements().to_vec(),
        generators,
    ))
}

fn mask(ring: &FiniteRing, set: &[usize]) -> Option<Vec<bool>> {
    let mut m = vec![false; ring.order()];
    for &x in set {
        *m.get_mut(x)? = true;
    }
    Some(m)
}

/// Whether `set` contains 0 and is closed under `+`, `-` and `*`.
pub fn is_subring(ring: &FiniteRing, set: &[usize]) -> bool {
    let Some(m) = mask(ring, set) else {
        return false;
    };
    m[0] && set
        .iter()
        .all(|&a| m[ring.neg(a)] && set.iter().all(|&b| m[ring.add(a, b)] && m[ring.mul(a, b)]))
}

/// Whether `set` is a subring absorbing multiplication by `ring` on both sides.
pub fn is_ideal(ring: &FiniteRing, set: &[usize]) -> bool {
    if !is_subring(ring, set) {
        return false;
    }
    let m = mask(ring, set).expect("checked by is_subring");
    set.iter().all(|&n| {
        ring.elements()
            .all(|r| m[ring.mul(r, n)] && m[ring.mul(n, r)])
    })
}

/// `A + B = {a + b}`, sorted.
pub fn sum_set(ring: &FiniteRing, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut m = vec![false; ring.order()];
    for &x in a {
        for &y in b {
            m[ring.add(x, y)] = true;
        }
    }
    m.iter()
        .enumerate()
        .filter_map(|(i, &hit)| hit.then_some(i))
        .collect()
}

/// Every subring exactly once, sorted by `(order, elements)`.
pub fn enumerate_subrings(ring: &FiniteRing, cap: usize) -> Result<Vec<Subring>, RingError> {
    let groups = all_subgroups(ring.additive(), cap).map_err(|e| match e {
        AbelianError::CapExceeded { order, cap } => RingError::CapExceeded { order, cap },
        other => RingError::Group(other),
    })?;
    Ok(groups
        .into_iter()
        .filter(|h| {
            h.elements()
                .iter()
                .all(|&a| h.elements().iter().all(|&b| h.contains(ring.mul(a, b))))
        })
        .map(|h| {
            Subring::from_sorted_unchecked(
                ring.clone(),
                h.elements().to_vec(),
                h.generators().to_vec(),
            )
        })
        .collect())
}
