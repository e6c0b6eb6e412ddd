use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CheckError;

/// Identifier of a checkable statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    Lemma1,
    Theorem01,
    Cor1,
    Refine,
    Theorem001,
    Corprbd,
    Theorem02,
    Theorem2,
    Dc001,
    Dc002,
    Dc,
    Lemma2,
    Theorem3,
    Theorem3Corollary,
    Obs21,
    Eqlb,
    Newlb1,
    Newlb2,
    Newlb3,
    Newlb4,
    BoundComparisons,
    /// Equal relative commuting probability across an isoclinism.
    Isoclinism,
    /// `[s1, R1] ≅ [s2, R2]` for corresponding cosets under an isoclinism.
    Isolem,
}

/// The check operations. Every [`TheoremId`] is evaluated by exactly one of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckOp {
    LemmaIndex,
    Sandwich,
    EqualityConditions,
    Chain,
    PrimeBounds,
    PrPrimeBounds,
    NoncentralThresholds,
    ClassifyExtremal,
    QuotientFactorization,
    CentralizerQuotientIso,
    CommutatorChain,
    LowerBounds,
    Invariance,
    CosetCommutatorIso,
}

impl TheoremId {
    pub const ALL: [TheoremId; 21] = [
        TheoremId::Lemma1,
        TheoremId::Theorem01,
        TheoremId::Cor1,
        TheoremId::Refine,
        TheoremId::Theorem001,
        TheoremId::Corprbd,
        TheoremId::Theorem02,
        TheoremId::Theorem2,
        TheoremId::Dc001,
        TheoremId::Dc002,
        TheoremId::Dc,
        TheoremId::Lemma2,
        TheoremId::Theorem3,
        TheoremId::Theorem3Corollary,
        TheoremId::Obs21,
        TheoremId::Eqlb,
        TheoremId::Newlb1,
        TheoremId::Newlb2,
        TheoremId::Newlb3,
        TheoremId::Newlb4,
        TheoremId::BoundComparisons,
    ];

    /// Statements about pairs of isoclinic rings, checked per witness rather than per corpus input.
    pub const ISOCLINISM: [TheoremId; 2] = [TheoremId::Isoclinism, TheoremId::Isolem];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Lemma1 => "lemma1",
            TheoremId::Theorem01 => "theorem01",
            TheoremId::Cor1 => "cor1",
            TheoremId::Refine => "refine",
            TheoremId::Theorem001 => "theorem001",
            TheoremId::Corprbd => "corprbd",
            TheoremId::Theorem02 => "theorem02",
            TheoremId::Theorem2 => "theorem2",
            TheoremId::Dc001 => "dc001",
            TheoremId::Dc002 => "dc002",
            TheoremId::Dc => "dc",
            TheoremId::Lemma2 => "lemma2",
            TheoremId::Theorem3 => "theorem3",
            TheoremId::Theorem3Corollary => "theorem3-corollary",
            TheoremId::Obs21 => "obs2.1",
            TheoremId::Eqlb => "eqlb",
            TheoremId::Newlb1 => "newlb1",
            TheoremId::Newlb2 => "newlb2",
            TheoremId::Newlb3 => "newlb3",
            TheoremId::Newlb4 => "newlb4",
            TheoremId::BoundComparisons => "bound-comparisons",
            TheoremId::Isoclinism => "isoclinism",
            TheoremId::Isolem => "isolem",
        }
    }

    /// The operation that evaluates this statement.
    pub fn op(self) -> CheckOp {
        use TheoremId::*;
        match self {
            Lemma1 => CheckOp::LemmaIndex,
            Theorem01 => CheckOp::Sandwich,
            Cor1 => CheckOp::EqualityConditions,
            Refine => CheckOp::Chain,
            Theorem001 => CheckOp::PrimeBounds,
            Corprbd => CheckOp::PrPrimeBounds,
            Theorem02 | Theorem2 => CheckOp::NoncentralThresholds,
            Dc001 | Dc002 | Dc => CheckOp::ClassifyExtremal,
            Lemma2 | Theorem3 | Theorem3Corollary => CheckOp::QuotientFactorization,
            Obs21 => CheckOp::CentralizerQuotientIso,
            Eqlb => CheckOp::CommutatorChain,
            Newlb1 | Newlb2 | Newlb3 | Newlb4 | BoundComparisons => CheckOp::LowerBounds,
            Isoclinism => CheckOp::Invariance,
            Isolem => CheckOp::CosetCommutatorIso,
        }
    }

    /// One-line description of the statement.
    pub fn statement(self) -> &'static str {
        use TheoremId::*;
        match self {
            Lemma1 => "|S : C_S(r)| <= |R : C_R(r)|, with equality iff S + C_R(r) = R",
            Theorem01 => "Pr(R) <= Pr(S,R) <= Pr(S)",
            Cor1 => "equality cases of Pr(R) <= Pr(S,R) <= Pr(S)",
            Refine => "Pr(S2,R) <= Pr(S1,R) <= Pr(S1,S2) for S1 ⊆ S2",
            Theorem001 => "bounds on Pr(S,R) in terms of p, |Z(S,R)|, |S| and |R|",
            Corprbd => "bounds on Pr(R) in terms of p, |Z(R)| and |R|",
            Theorem02 => "Pr(S,R) <= (2p-1)/p^2 or (p^2+p-1)/p^3 when S ⊄ Z(R)",
            Theorem2 => "Pr(S,R) <= 3/4 or 5/8 when S ⊄ Z(R)",
            Dc001 => "Pr(S,R) = (2p-1)/p^2 forces S/Z(S,R) ≅ Z_p",
            Dc002 => "Pr(S,R) = (p^2+p-1)/p^3 forces S/Z(S,R) ≅ Z_p x Z_p",
            Dc => "Pr(S,R) = 3/4 or 5/8 forces S/Z(S,R) ≅ Z_2 or Z_2 x Z_2",
            Lemma2 => "(C_H(x) + N)/N ⊆ C_{H/N}(x + N)",
            Theorem3 => "Pr(H,R) <= Pr(H/N,R/N) Pr(N)",
            Theorem3Corollary => "Pr(R) <= Pr(R/N) Pr(N)",
            Obs21 => "R/C_R(x) ≅ [x,R]",
            Eqlb => "|[S,R]| >= |K(S,R)| >= |[s,R]| = |R : C_R(s)|",
            Newlb1 => "Pr(S,R) >= (1/|K|)(1 + (|K|-1)/|S : Z(S,R)|)",
            Newlb2 => "Pr(S,R) >= (1/|[S,R]|)(1 + (|[S,R]|-1)/|S : Z(S,R)|)",
            Newlb3 => "Pr(R) >= (1/|K(R,R)|)(1 + (|K(R,R)|-1)/|R : Z(R)|)",
            Newlb4 => "Pr(R) >= (1/|[R,R]|)(1 + (|[R,R]|-1)/|R : Z(R)|)",
            BoundComparisons => {
                "the commutator lower bounds dominate the prime lower bound and each other"
            }
            Isoclinism => "isoclinic pairs have equal Pr(S,R)",
            Isolem => "[s1,R1] ≅ [s2,R2] for corresponding cosets",
        }
    }
}

impl CheckOp {
    pub const ALL: [CheckOp; 14] = [
        CheckOp::LemmaIndex,
        CheckOp::Sandwich,
        CheckOp::EqualityConditions,
        CheckOp::Chain,
        CheckOp::PrimeBounds,
        CheckOp::PrPrimeBounds,
        CheckOp::NoncentralThresholds,
        CheckOp::ClassifyExtremal,
        CheckOp::QuotientFactorization,
        CheckOp::CentralizerQuotientIso,
        CheckOp::CommutatorChain,
        CheckOp::LowerBounds,
        CheckOp::Invariance,
        CheckOp::CosetCommutatorIso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckOp::LemmaIndex => "check_lemma_index",
            CheckOp::Sandwich => "check_sandwich",
            CheckOp::EqualityConditions => "check_equality_conditions",
            CheckOp::Chain => "check_chain",
            CheckOp::PrimeBounds => "check_prime_bounds",
            CheckOp::PrPrimeBounds => "check_pr_prime_bounds",
            CheckOp::NoncentralThresholds => "check_noncentral_thresholds",
            CheckOp::ClassifyExtremal => "classify_extremal",
            CheckOp::QuotientFactorization => "check_quotient_factorization",
            CheckOp::CentralizerQuotientIso => "check_centralizer_quotient_iso",
            CheckOp::CommutatorChain => "check_commutator_chain",
            CheckOp::LowerBounds => "check_lower_bounds",
            CheckOp::Invariance => "verify_invariance",
            CheckOp::CosetCommutatorIso => "verify_coset_commutator_iso",
        }
    }

    /// Statements evaluated by this operation, in registry order.
    pub fn ids(self) -> Vec<TheoremId> {
        TheoremId::ALL
            .into_iter()
            .chain(TheoremId::ISOCLINISM)
            .filter(|id| id.op() == self)
            .collect()
    }

    pub fn primary(self) -> TheoremId {
        self.ids()[0]
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .chain(TheoremId::ISOCLINISM)
            .find(|id| id.as_str() == s)
            .ok_or_else(|| CheckError::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated selector of sweepable statements; `all` selects every one.
pub fn parse_selection(s: &str) -> Result<Vec<TheoremId>, CheckError> {
    let mut ids = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            ids.extend(TheoremId::ALL);
            continue;
        }
        let id: TheoremId = part.parse()?;
        if TheoremId::ISOCLINISM.contains(&id) {
            return Err(CheckError::NotSweepable(id.as_str().to_string()));
        }
        ids.push(id);
    }
    if ids.is_empty() {
        return Err(CheckError::UnknownTheorem(s.to_string()));
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}
