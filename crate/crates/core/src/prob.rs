//! Relative commuting probability `Pr(S, R)`, computed three independent ways.
//!
//! * pair count: commuting pairs in `S x R` over `|S||R|`;
//! * centralizer sums: `sum_{s in S} |C_R(s)|` and `sum_{r in R} |C_S(r)|`;
//! * coset form: `(1/|S : Z(S,R)|) sum_{s + Z(S,R)} 1/|[s, R]|`.
//!
//! The routes share nothing beyond the ring multiplication, so each is an
//! oracle for the others.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{self, Rational};
use crate::ring::{element_commutator_subgroup, relative_center, FiniteRing, Subring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbError {
    #[error("{0}/{1} is not a probability")]
    OutOfRange(i64, i64),
    #[error("`{0}` is not a rational of the form num/den")]
    Malformed(String),
    #[error("subring is not contained in the ambient subring")]
    NotContained,
    #[error("internal mismatch between {route_a} = {a} and {route_b} = {b}")]
    InternalMismatch {
        route_a: &'static str,
        a: String,
        route_b: &'static str,
        b: String,
    },
}

/// An exact probability in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probability(Rational);

impl Probability {
    pub fn new(numerator: i64, denominator: i64) -> Result<Self, ProbError> {
        if denominator <= 0 || numerator < 0 || numerator > denominator {
            return Err(ProbError::OutOfRange(numerator, denominator));
        }
        Ok(Self(Rational::new(numerator, denominator)))
    }

    pub fn from_ratio(q: Rational) -> Result<Self, ProbError> {
        Self::new(*q.numer(), *q.denom())
    }

    fn from_counts(hits: usize, total: usize) -> Self {
        Self(Rational::new(hits as i64, total as i64))
    }

    pub fn one() -> Self {
        Self(Rational::from_integer(1))
    }

    pub fn value(&self) -> Rational {
        self.0
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_one(&self) -> bool {
        self.0 == Rational::from_integer(1)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", rational::format(&self.0))
    }
}

impl FromStr for Probability {
    type Err = ProbError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let q = rational::parse(s).ok_or_else(|| ProbError::Malformed(s.to_string()))?;
        Self::from_ratio(q)
    }
}

impl Serialize for Probability {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Probability {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn check_contained(sub: &Subring, ambient: &Subring) -> Result<(), ProbError> {
    if sub.is_subset_of(ambient) {
        Ok(())
    } else {
        Err(ProbError::NotContained)
    }
}

/// `Pr(S, T)` by counting commuting pairs, for subrings `S ⊆ T` of one ring.
pub fn pr_pair_count_in(sub: &Subring, ambient: &Subring) -> Result<Probability, ProbError> {
    check_contained(sub, ambient)?;
    let ring = sub.ring();
    let hits = sub
        .elements()
        .iter()
        .map(|&s| {
            ambient
                .elements()
                .iter()
                .filter(|&&t| ring.commutes(s, t))
                .count()
        })
        .sum();
    Ok(Probability::from_counts(
        hits,
        sub.order() * ambient.order(),
    ))
}

/// `Pr(S, R)` by counting commuting pairs in `S x R`.
pub fn pr_pair_count(sub: &Subring) -> Probability {
    pr_pair_count_in(sub, &sub.ring().whole()).expect("every subring lies in its ring")
}

/// `Pr(S, T)` from both centralizer sums, which must agree.
pub fn pr_centralizer_sum_in(sub: &Subring, ambient: &Subring) -> Result<Probability, ProbError> {
    check_contained(sub, ambient)?;
    let ring = sub.ring();
    // sum over s in S of |C_T(s)|
    let by_sub: usize = sub
        .elements()
        .iter()
        .map(|&s| {
            ambient
                .elements()
                .iter()
                .filter(|&&t| ring.mul(s, t) == ring.mul(t, s))
                .count()
        })
        .sum();
    // sum over t in T of |C_S(t)|
    let by_ambient: usize = ambient
        .elements()
        .iter()
        .map(|&t| {
            sub.elements()
                .iter()
                .filter(|&&s| ring.mul(t, s) == ring.mul(s, t))
                .count()
        })
        .sum();
    if by_sub != by_ambient {
        return Err(ProbError::InternalMismatch {
            route_a: "sum over S of |C_T(s)|",
            a: by_sub.to_string(),
            route_b: "sum over T of |C_S(t)|",
            b: by_ambient.to_string(),
        });
    }
    Ok(Probability::from_counts(
        by_sub,
        sub.order() * ambient.order(),
    ))
}

/// `Pr(S, R)` from the centralizer sums.
pub fn pr_centralizer_sum(sub: &Subring) -> Result<Probability, ProbError> {
    pr_centralizer_sum_in(sub, &sub.ring().whole())
}

/// `Pr(S, R)` as an average of `1/|[s, R]|` over the cosets of `Z(S, R)` in `S`.
pub fn pr_coset_form(sub: &Subring) -> Probability {
    let ring = sub.ring();
    let center = relative_center(sub);
    let mut covered = vec![false; ring.order()];
    let mut total = Rational::from_integer(0);
    let mut cosets = 0i64;
    for &s in sub.elements() {
        if covered[s] {
            continue;
        }
        for &z in center.elements() {
            covered[ring.add(s, z)] = true;
        }
        cosets += 1;
        let image = element_commutator_subgroup(ring, s).expect("[s, R] is an additive subgroup");
        total += Rational::new(1, image.order() as i64);
    }
    debug_assert_eq!(cosets as usize, sub.order() / center.order());
    Probability(total / Rational::from_integer(cosets))
}

/// `Pr(R) = Pr(R, R)`.
pub fn pr(ring: &FiniteRing) -> Probability {
    pr_centralizer_sum(&ring.whole()).expect("centralizer sums agree")
}

/// `Pr(S) = Pr(S, S)`, the commuting probability of `S` as a ring in its own right.
pub fn pr_of_subring(sub: &Subring) -> Probability {
    pr_centralizer_sum_in(sub, sub).expect("centralizer sums agree")
}

/// `Pr(S, R)` after confirming all three routes agree exactly.
pub fn pr_checked(sub: &Subring) -> Result<Probability, ProbError> {
    let pairs = pr_pair_count(sub);
    let sums = pr_centralizer_sum(sub)?;
    let cosets = pr_coset_form(sub);
    for (route, value) in [("centralizer sum", sums), ("coset form", cosets)] {
        if value != pairs {
            return Err(ProbError::InternalMismatch {
                route_a: "pair count",
                a: pairs.to_string(),
                route_b: route,
                b: value.to_string(),
            });
        }
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{builtin, center, enumerate_subrings, subring_closure};

    fn q(n: i64, d: i64) -> Probability {
        Probability::new(n, d).unwrap()
    }

    #[test]
    fn row_ring_example() {
        let r = builtin("mat_row", &["2"]).unwrap();
        let s = subring_closure(&r, &[3]).unwrap();
        assert_eq!(pr_pair_count(&s), q(3, 4));
        assert_eq!(pr_centralizer_sum(&s).unwrap(), q(3, 4));
        assert_eq!(pr_coset_form(&s), q(3, 4));
        assert_eq!(pr(&r), q(5, 8));
        assert_eq!(pr_pair_count(&r.whole()), q(5, 8));
        assert_eq!(pr_coset_form(&r.whole()), q(5, 8));
        assert_eq!(pr_of_subring(&s), Probability::one());
    }

    #[test]
    fn commutative_rings_have_probability_one() {
        let r = builtin("zn", &["12"]).unwrap();
        assert_eq!(pr(&r), Probability::one());
        for s in enumerate_subrings(&r, 64).unwrap() {
            assert_eq!(pr_checked(&s).unwrap(), Probability::one());
        }
    }

    #[test]
    fn central_subrings_give_one_coset() {
        let r = builtin("mat_full", &["2", "2"]).unwrap();
        let z = center(&r);
        assert_eq!(pr_coset_form(&z), Probability::one());
    }

    // Frozen from an explicit matrix-multiplication count over all pairs.
    #[test]
    fn matrix_rings_match_frozen_values() {
        let cases = [
            ("mat_upper_tri(2)", q(5, 8)),
            ("mat_upper_tri(3)", q(11, 27)),
            ("mat_upper_tri(5)", q(29, 125)),
            ("mat_row(3)", q(11, 27)),
            ("mat_row(5)", q(29, 125)),
            ("mat_full(2,2)", q(11, 32)),
        ];
        for (spec, expected) in cases {
            let r = spec
                .parse::<crate::ring::Builtin>()
                .unwrap()
                .build()
                .unwrap();
            let whole = r.whole();
            assert_eq!(pr_pair_count(&whole), expected, "{spec}");
            assert_eq!(pr_centralizer_sum(&whole).unwrap(), expected, "{spec}");
            assert_eq!(pr_coset_form(&whole), expected, "{spec}");
        }
    }

    #[test]
    fn probability_one_iff_subring_is_central() {
        let r = builtin("direct_sum", &["mat_row(2)", "zn(2)"]).unwrap();
        for s in enumerate_subrings(&r, 64).unwrap() {
            assert_eq!(pr_checked(&s).unwrap().is_one(), relative_center(&s) == s);
        }
    }

    #[test]
    fn relative_probability_requires_containment() {
        let r = builtin("mat_row", &["2"]).unwrap();
        let s = subring_closure(&r, &[3]).unwrap();
        let t = subring_closure(&r, &[1]).unwrap();
        assert_eq!(pr_pair_count_in(&s, &t), Err(ProbError::NotContained));
        assert_eq!(pr_pair_count_in(&s, &s).unwrap(), Probability::one());
    }

    #[test]
    fn probability_validation_and_wire_form() {
        assert!(Probability::new(3, 2).is_err());
        assert!(Probability::new(1, 0).is_err());
        assert!(Probability::new(-1, 2).is_err());
        let p: Probability = "10/16".parse().unwrap();
        assert_eq!(p.to_string(), "5/8");
        assert_eq!(serde_json::to_string(&p).unwrap(), "\"5/8\"");
        assert_eq!(
            serde_json::from_str::<Probability>("\"3/4\"").unwrap(),
            q(3, 4)
        );
        assert!(serde_json::from_str::<Probability>("0.75").is_err());
    }
}
