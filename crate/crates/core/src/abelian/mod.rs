//! Finite abelian groups presented as products of cyclic groups.
//!
//! Elements are addressed two ways: as coordinate vectors ([`GroupElement`])
//! for the public surface, and as dense mixed-radix indices (`usize`) for the
//! hot loops. Index `0` is always the identity, and index order coincides
//! with lexicographic order on coordinates.

mod iso;
mod quotient;
pub mod snf;
mod subgroup;

pub use iso::{isomorphisms, GroupIsomorphism, Isomorphisms, DEFAULT_ISOMORPHISM_CAP};
pub use quotient::{quotient, QuotientGroup};
pub use subgroup::{
    all_subgroups, index, invariant_factors_from_orders, subgroup_generated, Subgroup,
    DEFAULT_SUBGROUP_CAP,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("cyclic factor order {0} is invalid (each factor must be at least 2)")]
    InvalidCyclicOrder(u64),
    #[error("group order overflows the addressable range")]
    OrderOverflow,
    #[error("element has {got} coordinates, group has rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("coordinate {coord} out of range for factor Z_{modulus}")]
    CoordinateOutOfRange { coord: u64, modulus: u64 },
    #[error("element index {0} does not belong to the group")]
    IndexOutOfRange(usize),
    #[error("element set is not a subgroup of the parent group")]
    NotASubgroup,
    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("search budget of {0} candidates exceeded")]
    SearchBudgetExceeded(u64),
}

/// A finite abelian group `Z_{d_1} x ... x Z_{d_k}`.
///
/// The empty list of factors is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct AbelianGroup {
    orders: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
}

/// A group element written in coordinates, `coords[i]` in `[0, d_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        Self { coords }
    }
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self, AbelianError> {
        if let Some(&bad) = orders.iter().find(|&&d| d < 2) {
            return Err(AbelianError::InvalidCyclicOrder(bad));
        }
        let mut strides = vec![0usize; orders.len()];
        let mut order: usize = 1;
        for (i, &d) in orders.iter().enumerate().rev() {
            strides[i] = order;
            let d = usize::try_from(d).map_err(|_| AbelianError::OrderOverflow)?;
            order = order.checked_mul(d).ok_or(AbelianError::OrderOverflow)?;
        }
        Ok(Self {
            orders,
            strides,
            order,
        })
    }

    pub fn trivial() -> Self {
        Self {
            orders: Vec::new(),
            strides: Vec::new(),
            order: 1,
        }
    }

    /// `Z_n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: u64) -> Result<Self, AbelianError> {
        match n {
            0 => Err(AbelianError::InvalidCyclicOrder(0)),
            1 => Ok(Self::trivial()),
            n => Self::new(vec![n]),
        }
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        0
    }

    /// Index of the `i`-th canonical generator `e_i`.
    pub fn basis(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn contains_index(&self, x: usize) -> bool {
        x < self.order
    }

    pub fn coords(&self, x: usize) -> Vec<u64> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| ((x / s) as u64) % d)
            .collect()
    }

    pub fn element(&self, x: usize) -> GroupElement {
        GroupElement::new(self.coords(x))
    }

    pub fn index_of(&self, e: &GroupElement) -> Result<usize, AbelianError> {
        self.index_of_coords(&e.coords)
    }

    pub fn index_of_coords(&self, coords: &[u64]) -> Result<usize, AbelianError> {
        if coords.len() != self.rank() {
            return Err(AbelianError::RankMismatch {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        let mut x = 0;
        for ((&c, &d), &s) in coords.iter().zip(&self.orders).zip(&self.strides) {
            if c >= d {
                return Err(AbelianError::CoordinateOutOfRange {
                    coord: c,
                    modulus: d,
                });
            }
            x += c as usize * s;
        }
        Ok(x)
    }

    /// Index of the element with integer coordinates `coords`, reduced modulo each factor.
    pub fn index_of_ints(&self, coords: &[i64]) -> usize {
        debug_assert_eq!(coords.len(), self.rank());
        coords
            .iter()
            .zip(&self.orders)
            .zip(&self.strides)
            .map(|((&c, &d), &s)| c.rem_euclid(d as i64) as usize * s)
            .sum()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&d, &s) in self.orders.iter().zip(&self.strides) {
            let d = d as usize;
            out += (((a / s) % d + (b / s) % d) % d) * s;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut out = 0;
        for (&d, &s) in self.orders.iter().zip(&self.strides) {
            let d = d as usize;
            out += ((d - (a / s) % d) % d) * s;
        }
        out
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, k: u64, a: usize) -> usize {
        let mut out = 0;
        for (&d, &s) in self.orders.iter().zip(&self.strides) {
            let c = ((a / s) as u64 % d) * (k % d) % d;
            out += c as usize * s;
        }
        out
    }

    /// Additive order of an element: the lcm of the orders of its coordinates.
    pub fn element_order(&self, a: usize) -> u64 {
        self.coords(a)
            .iter()
            .zip(&self.orders)
            .map(|(&c, &d)| d / num_integer::gcd(c, d))
            .fold(1, num_integer::lcm)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Canonical invariant factors `d_1 | d_2 | ... | d_m`, all at least 2.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let rows: Vec<Vec<i64>> = self
            .orders
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut row = vec![0; self.rank()];
                row[i] = d as i64;
                row
            })
            .collect();
        snf::smith_normal_form(&rows, self.rank()).invariant_factors()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors().len() <= 1
    }

    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    /// The group `Z_{d_1} x ... x Z_{d_m}` on this group's invariant factors.
    pub fn canonical(&self) -> AbelianGroup {
        AbelianGroup::new(self.invariant_factors()).expect("invariant factors are at least 2")
    }
}

impl TryFrom<Vec<u64>> for AbelianGroup {
    type Error = AbelianError;

    fn try_from(orders: Vec<u64>) -> Result<Self, Self::Error> {
        Self::new(orders)
    }
}

impl From<AbelianGroup> for Vec<u64> {
    fn from(g: AbelianGroup) -> Self {
        g.orders
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.orders.iter().map(|d| format!("Z_{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

pub fn invariant_factors(g: &AbelianGroup) -> Vec<u64> {
    g.invariant_factors()
}

pub fn is_isomorphic(g: &AbelianGroup, h: &AbelianGroup) -> bool {
    g.is_isomorphic(h)
}

pub fn is_cyclic(g: &AbelianGroup) -> bool {
    g.is_cyclic()
}
