//! Finite rings given by structure constants on a finite abelian group.
//!
//! A ring on `Z_{d_1} x ... x Z_{d_k}` is fixed by the products `e_i e_j` of
//! the canonical generators; arbitrary products are the bilinear extension.
//! Rings need not be unital or commutative. Construction validates
//! well-definedness and associativity, so every `FiniteRing` is a ring.
//!
//! Elements are dense indices into the additive group (see [`crate::abelian`]).
//! For rings up to [`TABLE_LIMIT`] elements the addition and multiplication
//! tables are materialized on first use.

mod builtin;
mod commutator;
mod quotient;
mod subring;

pub use builtin::{builtin, Builtin};
pub use commutator::{
    center, centralizer, commutator_set, commutator_subgroup, element_commutator_subgroup,
    relative_center,
};
pub use quotient::{quotient_ring, QuotientRing};
pub use subring::{
    enumerate_subrings, is_ideal, is_subring, subring_closure, sum_set, Subring,
    DEFAULT_ENUMERATION_CAP,
};

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::abelian::{AbelianError, AbelianGroup, GroupElement};

/// Largest ring order for which full operation tables are materialized.
pub const TABLE_LIMIT: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error(transparent)]
    Group(#[from] AbelianError),
    #[error("multiplication table must be {expected}x{expected}, row {row} has {got} entries")]
    TableShape {
        expected: usize,
        row: usize,
        got: usize,
    },
    #[error("product e{i}*e{j} has additive order {order}, which does not divide gcd = {gcd}")]
    WellDefinednessViolation {
        i: usize,
        j: usize,
        order: u64,
        gcd: u64,
    },
    #[error("multiplication is not associative on basis triple (e{i}, e{j}, e{l})")]
    AssociativityViolation { i: usize, j: usize, l: usize },
    #[error("unknown builtin ring `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid parameter for builtin ring: {0}")]
    InvalidParameter(String),
    #[error("element {0} does not belong to the ring")]
    ElementMismatch(usize),
    #[error("subring belongs to a different ring")]
    RingMismatch,
    #[error("element set is not a subring")]
    NotASubring,
    #[error("element set is not an ideal")]
    NotAnIdeal,
    #[error("set [x, R] for x = {0} is not closed under addition")]
    ClosureViolation(usize),
    #[error("ring of order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("smallest prime divisor is undefined for {0}")]
    NoPrimeDivisor(u64),
}

/// An element of a ring, in coordinates of its additive group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement(pub GroupElement);

impl RingElement {
    pub fn new(coords: Vec<u64>) -> Self {
        Self(GroupElement::new(coords))
    }

    pub fn coords(&self) -> &[u64] {
        &self.0.coords
    }
}

#[derive(Clone)]
pub struct FiniteRing(Arc<RingData>);

struct RingData {
    name: Option<String>,
    additive: AbelianGroup,
    /// `constants[i][j]` = coordinates of `e_i e_j`.
    constants: Vec<Vec<Vec<u64>>>,
    tables: OnceLock<Option<Tables>>,
    center: OnceLock<Vec<usize>>,
}

struct Tables {
    add: Vec<u32>,
    neg: Vec<u32>,
    mul: Vec<u32>,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteRing")
            .field("name", &self.0.name)
            .field("additive", &self.0.additive.cyclic_orders())
            .field("constants", &self.0.constants)
            .finish()
    }
}

impl PartialEq for FiniteRing {
    /// Equal presentations: same additive group and structure constants.
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.additive == other.0.additive && self.0.constants == other.0.constants)
    }
}

impl Eq for FiniteRing {}

/// Validated ring from cyclic orders and a `k x k` table of products `e_i e_j`.
pub fn ring_from_structure(
    cyclic_orders: Vec<u64>,
    mult_table: Vec<Vec<Vec<u64>>>,
) -> Result<FiniteRing, RingError> {
    FiniteRing::from_structure(cyclic_orders, mult_table, None)
}

impl FiniteRing {
    pub fn from_structure(
        cyclic_orders: Vec<u64>,
        mult_table: Vec<Vec<Vec<u64>>>,
        name: Option<String>,
    ) -> Result<Self, RingError> {
        let additive = AbelianGroup::new(cyclic_orders)?;
        let k = additive.rank();
        if mult_table.len() != k {
            return Err(RingError::TableShape {
                expected: k,
                row: mult_table.len(),
                got: 0,
            });
        }
        for (row, entries) in mult_table.iter().enumerate() {
            if entries.len() != k {
                return Err(RingError::TableShape {
                    expected: k,
                    row,
                    got: entries.len(),
                });
            }
            for c in entries {
                additive.index_of_coords(c)?;
            }
        }
        let orders = additive.cyclic_orders();
        for i in 0..k {
            for j in 0..k {
                let idx = additive.index_of_coords(&mult_table[i][j])?;
                let order = additive.element_order(idx);
                let gcd = num_integer::gcd(orders[i], orders[j]);
                if gcd % order != 0 {
                    return Err(RingError::WellDefinednessViolation { i, j, order, gcd });
                }
            }
        }
        let ring = Self(Arc::new(RingData {
            name,
            additive,
            constants: mult_table,
            tables: OnceLock::new(),
            center: OnceLock::new(),
        }));
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let (ei, ej, el) = (ring.basis(i), ring.basis(j), ring.basis(l));
                    let left = ring.mul_direct(ring.mul_direct(ei, ej), el);
                    let right = ring.mul_direct(ei, ring.mul_direct(ej, el));
                    if left != right {
                        return Err(RingError::AssociativityViolation { i, j, l });
                    }
                }
            }
        }
        Ok(ring)
    }

    pub fn trivial() -> Self {
        Self::from_structure(Vec::new(), Vec::new(), None).expect("trivial ring is valid")
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.0
            .name
            .clone()
            .unwrap_or_else(|| format!("ring{:?}", self.0.additive.cyclic_orders()))
    }

    /// Same ring under a new label.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Self(Arc::new(RingData {
            name: Some(name.into()),
            additive: self.0.additive.clone(),
            constants: self.0.constants.clone(),
            tables: OnceLock::new(),
            center: OnceLock::new(),
        }))
    }

    pub fn additive(&self) -> &AbelianGroup {
        &self.0.additive
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<u64>>] {
        &self.0.constants
    }

    pub fn order(&self) -> usize {
        self.0.additive.order()
    }

    pub fn rank(&self) -> usize {
        self.0.additive.rank()
    }

    pub fn basis(&self, i: usize) -> usize {
        self.0.additive.basis(i)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.0.additive.elements()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn same_ring(&self, other: &FiniteRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self == other
    }

    /// Validates an externally supplied element index.
    pub fn check(&self, x: usize) -> Result<usize, RingError> {
        if x < self.order() {
            Ok(x)
        } else {
            Err(RingError::ElementMismatch(x))
        }
    }

    pub fn index_of(&self, e: &RingElement) -> Result<usize, RingError> {
        Ok(self.0.additive.index_of(&e.0)?)
    }

    pub fn element(&self, x: usize) -> RingElement {
        RingElement(self.0.additive.element(x))
    }

    fn tables(&self) -> Option<&Tables> {
        self.0
            .tables
            .get_or_init(|| (self.order() <= TABLE_LIMIT).then(|| self.build_tables()))
            .as_ref()
    }

    fn build_tables(&self) -> Tables {
        let n = self.order();
        let g = &self.0.additive;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                add.push(g.add(x, y) as u32);
                mul.push(self.mul_direct(x, y) as u32);
            }
        }
        let neg = (0..n).map(|x| g.neg(x) as u32).collect();
        Tables { add, neg, mul }
    }

    /// Bilinear extension of the structure constants, without tables.
    fn mul_direct(&self, x: usize, y: usize) -> usize {
        let g = &self.0.additive;
        let k = g.rank();
        let cx = g.coords(x);
        let cy = g.coords(y);
        let orders = g.cyclic_orders();
        let mut acc = vec![0u64; k];
        for (i, &a) in cx.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in cy.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let coef = a * b;
                for (t, &c) in self.0.constants[i][j].iter().enumerate() {
                    acc[t] = (acc[t] + coef % orders[t] * c) % orders[t];
                }
            }
        }
        g.index_of_coords(&acc)
            .expect("reduced coordinates are in range")
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        match self.tables() {
            Some(t) => t.add[x * self.order() + y] as usize,
            None => self.0.additive.add(x, y),
        }
    }

    pub fn neg(&self, x: usize) -> usize {
        match self.tables() {
            Some(t) => t.neg[x] as usize,
            None => self.0.additive.neg(x),
        }
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        match self.tables() {
            Some(t) => t.mul[x * self.order() + y] as usize,
            None => self.mul_direct(x, y),
        }
    }

    /// Additive commutator `[x, y] = xy - yx`.
    pub fn bracket(&self, x: usize, y: usize) -> usize {
        self.sub(self.mul(x, y), self.mul(y, x))
    }

    pub fn commutes(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.rank();
        (0..k).all(|i| (0..k).all(|j| self.0.constants[i][j] == self.0.constants[j][i]))
    }

    pub(crate) fn center_elements(&self) -> &[usize] {
        self.0.center.get_or_init(|| {
            self.elements()
                .filter(|&z| self.elements().all(|r| self.commutes(z, r)))
                .collect()
        })
    }

    /// The whole ring as a subring of itself.
    pub fn whole(&self) -> Subring {
        Subring::from_sorted_unchecked(self.clone(), self.elements().collect(), self.generators())
    }

    pub fn zero_subring(&self) -> Subring {
        Subring::from_sorted_unchecked(self.clone(), vec![0], Vec::new())
    }

    fn generators(&self) -> Vec<usize> {
        (0..self.rank()).map(|i| self.basis(i)).collect()
    }
}

/// Product of two ring elements given in coordinates.
pub fn mul(ring: &FiniteRing, x: &RingElement, y: &RingElement) -> Result<RingElement, RingError> {
    let (a, b) = (ring.index_of(x)?, ring.index_of(y)?);
    Ok(ring.element(ring.mul(a, b)))
}

/// Additive commutator `xy - yx` of two ring elements given in coordinates.
pub fn bracket(
    ring: &FiniteRing,
    x: &RingElement,
    y: &RingElement,
) -> Result<RingElement, RingError> {
    let (a, b) = (ring.index_of(x)?, ring.index_of(y)?);
    Ok(ring.element(ring.bracket(a, b)))
}

/// Least prime dividing `n`, for `n >= 2`.
pub fn smallest_prime_divisor(n: u64) -> Result<u64, RingError> {
    if n < 2 {
        return Err(RingError::NoPrimeDivisor(n));
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return Ok(d);
        }
        d += 1;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row_ring_table() -> Vec<Vec<Vec<u64>>> {
        // e1 = [[1,0],[0,0]], e2 = [[0,1],[0,0]]
        vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 0], vec![0, 0]]]
    }

    #[test]
    fn cyclic_ring_from_structure() {
        let z6 = ring_from_structure(vec![6], vec![vec![vec![1]]]).unwrap();
        assert_eq!(z6.order(), 6);
        assert_eq!(z6.mul(4, 5), 2);
        assert!(z6.is_commutative());
    }

    #[test]
    fn zero_multiplication_ring_is_valid() {
        let r = ring_from_structure(vec![2, 2], vec![vec![vec![0, 0]; 2]; 2]).unwrap();
        assert!(r.elements().all(|x| r.elements().all(|y| r.mul(x, y) == 0)));
    }

    #[test]
    fn row_ring_from_structure() {
        let r = ring_from_structure(vec![2, 2], row_ring_table()).unwrap();
        assert_eq!(r.order(), 4);
        assert!(!r.is_commutative());
    }

    #[test]
    fn rejects_ill_defined_products() {
        // In Z_2 x Z_4, e1*e1 = e2 has order 4, which does not divide gcd(2, 2) = 2.
        let err = ring_from_structure(
            vec![2, 4],
            vec![vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]],
        )
        .unwrap_err();
        assert_eq!(
            err,
            RingError::WellDefinednessViolation {
                i: 0,
                j: 0,
                order: 4,
                gcd: 2
            }
        );
    }

    #[test]
    fn rejects_non_associative_tables() {
        // e1 e1 = e2, everything else zero except e2 e1 = e1: (e1 e1) e1 = e1 but e1 (e1 e1) = 0.
        let err = ring_from_structure(
            vec![2, 2],
            vec![vec![vec![0, 1], vec![0, 0]], vec![vec![1, 0], vec![0, 0]]],
        )
        .unwrap_err();
        assert!(matches!(err, RingError::AssociativityViolation { .. }));
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(matches!(
            ring_from_structure(vec![2, 2], vec![vec![vec![0, 0]]]),
            Err(RingError::TableShape { .. })
        ));
        assert!(matches!(
            ring_from_structure(vec![3], vec![vec![vec![5]]]),
            Err(RingError::Group(AbelianError::CoordinateOutOfRange { .. }))
        ));
    }

    #[test]
    fn bracket_in_row_ring() {
        let r = ring_from_structure(vec![2, 2], row_ring_table()).unwrap();
        let e1 = RingElement::new(vec![1, 0]);
        let e2 = RingElement::new(vec![0, 1]);
        assert_eq!(bracket(&r, &e1, &e2).unwrap(), e2);
        assert_eq!(bracket(&r, &e1, &e1).unwrap(), RingElement::new(vec![0, 0]));
        assert_eq!(mul(&r, &e2, &e1).unwrap(), RingElement::new(vec![0, 0]));
        assert!(bracket(&r, &RingElement::new(vec![2, 0]), &e1).is_err());
    }

    #[test]
    fn table_and_direct_multiplication_agree() {
        let r = builtin("mat_upper_tri", &["3"]).unwrap();
        for x in r.elements() {
            for y in r.elements() {
                assert_eq!(r.mul(x, y), r.mul_direct(x, y));
            }
        }
    }

    #[test]
    fn smallest_prime_divisor_examples() {
        assert_eq!(smallest_prime_divisor(8).unwrap(), 2);
        assert_eq!(smallest_prime_divisor(27).unwrap(), 3);
        assert_eq!(smallest_prime_divisor(15).unwrap(), 3);
        assert_eq!(smallest_prime_divisor(49).unwrap(), 7);
        assert_eq!(smallest_prime_divisor(2).unwrap(), 2);
        assert_eq!(smallest_prime_divisor(1), Err(RingError::NoPrimeDivisor(1)));
        assert_eq!(smallest_prime_divisor(0), Err(RingError::NoPrimeDivisor(0)));
    }
}
