//! Checkable inequalities and structure statements about `Pr(S, R)`.
//!
//! Each operation evaluates its statements as exact rational comparisons and
//! returns a [`TheoremCheck`]. A check whose hypotheses fail is returned with
//! `hypotheses_hold = false` and no clauses, so sweeps can skip and record it.

mod registry;
pub mod sweep;

pub use registry::{parse_selection, CheckOp, TheoremId};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{quotient, AbelianError, Subgroup};
use crate::prob::{pr, pr_centralizer_sum, pr_centralizer_sum_in, pr_of_subring, ProbError};
use crate::rational::{self, int, Rational};
use crate::ring::{
    centralizer, commutator_set, commutator_subgroup, element_commutator_subgroup, quotient_ring,
    relative_center, smallest_prime_divisor, sum_set, FiniteRing, QuotientRing, RingError, Subring,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Group(#[from] AbelianError),
    #[error(transparent)]
    Prob(#[from] ProbError),
    #[error("subrings belong to different rings")]
    RingMismatch,
    #[error("Pr(S,R) = {pr} is not the extremal value for p = {p}")]
    PreconditionMismatch { pr: String, p: u64 },
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("`{0}` is checked per isoclinism witness, not over a corpus")]
    NotSweepable(String),
}

/// One evaluated statement inside a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub theorem: TheoremId,
    pub statement: String,
    pub holds: bool,
    pub detail: String,
}

/// Verdict of one check operation on one input.
///
/// `lhs`/`rhs` are the sides of the first inequality evaluated;
/// `inequality_holds` covers every inequality clause. The equality fields
/// come from the first equality condition the check evaluates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub theorem_id: TheoremId,
    pub subject: String,
    pub hypotheses_hold: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(
        default,
        with = "rational::serde_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub lhs: Option<Rational>,
    #[serde(
        default,
        with = "rational::serde_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub rhs: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequality_holds: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality_attained: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality_condition_predicted: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub clauses: Vec<Clause>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl TheoremCheck {
    /// True when the hypotheses fail or every clause holds.
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.holds)
    }

    /// Keeps only the clauses for the given statements.
    pub fn restrict(&mut self, keep: &[TheoremId]) {
        self.clauses.retain(|c| keep.contains(&c.theorem));
    }
}

pub(crate) struct Builder {
    check: TheoremCheck,
    inequalities: Vec<bool>,
}

fn q(r: &Rational) -> String {
    rational::format(r)
}

impl Builder {
    pub(crate) fn new(id: TheoremId, subject: String) -> Self {
        Self {
            check: TheoremCheck {
                theorem_id: id,
                subject,
                hypotheses_hold: true,
                p: None,
                lhs: None,
                rhs: None,
                inequality_holds: None,
                equality_attained: None,
                equality_condition_predicted: None,
                clauses: Vec::new(),
                notes: Vec::new(),
                witness: None,
            },
            inequalities: Vec::new(),
        }
    }

    pub(crate) fn skip(mut self, reason: &str) -> TheoremCheck {
        self.check.hypotheses_hold = false;
        self.check.notes.push(reason.to_string());
        self.check
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.check.notes.push(note.into());
    }

    pub(crate) fn clause(
        &mut self,
        theorem: TheoremId,
        statement: &str,
        holds: bool,
        detail: String,
    ) {
        self.check.clauses.push(Clause {
            theorem,
            statement: statement.to_string(),
            holds,
            detail,
        });
    }

    fn sides(&mut self, lhs: Rational, rhs: Rational, holds: bool) {
        if self.check.lhs.is_none() {
            self.check.lhs = Some(lhs);
            self.check.rhs = Some(rhs);
        }
        self.inequalities.push(holds);
    }

    pub(crate) fn le(&mut self, theorem: TheoremId, statement: &str, lhs: Rational, rhs: Rational) {
        let holds = lhs <= rhs;
        self.sides(lhs, rhs, holds);
        self.clause(
            theorem,
            statement,
            holds,
            format!("{} <= {}", q(&lhs), q(&rhs)),
        );
    }

    pub(crate) fn lt(&mut self, theorem: TheoremId, statement: &str, lhs: Rational, rhs: Rational) {
        let holds = lhs < rhs;
        self.sides(lhs, rhs, holds);
        self.clause(
            theorem,
            statement,
            holds,
            format!("{} < {}", q(&lhs), q(&rhs)),
        );
    }

    pub(crate) fn eq(&mut self, theorem: TheoremId, statement: &str, lhs: Rational, rhs: Rational) {
        let holds = lhs == rhs;
        self.sides(lhs, rhs, holds);
        self.clause(
            theorem,
            statement,
            holds,
            format!("{} = {}", q(&lhs), q(&rhs)),
        );
    }

    fn equality(&mut self, attained: bool, predicted: bool) {
        if self.check.equality_attained.is_none() {
            self.check.equality_attained = Some(attained);
            self.check.equality_condition_predicted = Some(predicted);
        }
    }

    /// Both directions of `attained <=> predicted`, as two clauses.
    pub(crate) fn iff(
        &mut self,
        theorem: TheoremId,
        statement: &str,
        attained: bool,
        predicted: bool,
    ) {
        self.equality(attained, predicted);
        let detail = format!("equality {attained}, condition {predicted}");
        self.clause(
            theorem,
            &format!("{statement} (=>)"),
            !attained || predicted,
            detail.clone(),
        );
        self.clause(
            theorem,
            &format!("{statement} (<=)"),
            !predicted || attained,
            detail,
        );
    }

    /// `premise => conclusion`; equality fields record `conclusion` as attained.
    pub(crate) fn implies(
        &mut self,
        theorem: TheoremId,
        statement: &str,
        premise: bool,
        conclusion: bool,
    ) {
        self.equality(conclusion, premise);
        self.clause(
            theorem,
            statement,
            !premise || conclusion,
            format!("condition {premise}, equality {conclusion}"),
        );
    }

    pub(crate) fn finish(mut self) -> TheoremCheck {
        if !self.inequalities.is_empty() {
            self.check.inequality_holds = Some(self.inequalities.iter().all(|&h| h));
        }
        self.check.witness = self.check.clauses.iter().find(|c| !c.holds).map(|c| {
            format!(
                "{}: {} [{}] on {}",
                c.theorem, c.statement, c.detail, self.check.subject
            )
        });
        self.check
    }
}

fn set_label(sub: &Subring) -> String {
    if sub.is_whole() {
        "R".to_string()
    } else {
        sub.to_string()
    }
}

fn subject(sub: &Subring) -> String {
    format!("{}; S={}", sub.ring().label(), set_label(sub))
}

fn ratio(a: usize, b: usize) -> Rational {
    Rational::new(a as i64, b as i64)
}

fn prime_of(ring: &FiniteRing) -> Result<u64, CheckError> {
    Ok(smallest_prime_divisor(ring.order() as u64)?)
}

fn pr_sr(sub: &Subring) -> Result<Rational, CheckError> {
    Ok(pr_centralizer_sum(sub)?.value())
}

fn same_ring(a: &Subring, b: &Subring) -> Result<(), CheckError> {
    if a.ring().same_ring(b.ring()) {
        Ok(())
    } else {
        Err(CheckError::RingMismatch)
    }
}

/// Invariant factors of `S / Z(S, R)`, computed as a subgroup of `R / Z(S, R)`.
pub fn relative_quotient_factors(sub: &Subring) -> Vec<u64> {
    let ring = sub.ring();
    let z = relative_center(sub);
    let rz = quotient(ring.additive(), &z.as_subgroup()).expect("Z(S,R) is an additive subgroup");
    let image: Vec<usize> = sub.elements().iter().map(|&s| rz.project(s)).collect();
    Subgroup::from_elements(rz.structure(), &image)
        .expect("image of a subgroup is a subgroup")
        .invariant_factors()
}

/// `(p - 1) z + s) / (p s)` and `z/s + p (s - z) / (s r)`: the prime upper and lower bounds.
fn prime_bounds(p: u64, z: usize, s: usize, r: usize) -> (Rational, Rational) {
    let (p, z, s, r) = (p as i64, z as i64, s as i64, r as i64);
    let lower = Rational::new(z, s) + Rational::new(p * (s - z), s * r);
    let upper = Rational::new((p - 1) * z + s, p * s);
    (lower, upper)
}

fn commutative_threshold(p: u64) -> Rational {
    let p = p as i64;
    Rational::new(2 * p - 1, p * p)
}

fn noncommutative_threshold(p: u64) -> Rational {
    let p = p as i64;
    Rational::new(p * p + p - 1, p * p * p)
}

/// `(1/m)(1 + (m - 1)/i)`.
fn commutator_bound(m: usize, i: usize) -> Rational {
    ratio(1, m) * (int(1) + ratio(m - 1, i))
}

/// Index inequality for `C_S(r)` and its equality condition.
pub fn check_lemma_index(sub: &Subring, r: usize) -> Result<TheoremCheck, CheckError> {
    let ring = sub.ring();
    ring.check(r)?;
    let mut b = Builder::new(TheoremId::Lemma1, format!("{}; r={r}", subject(sub)));
    let cs = centralizer(sub, r)?;
    let cr = centralizer(&ring.whole(), r)?;
    let lhs = ratio(sub.order(), cs.order());
    let rhs = ratio(ring.order(), cr.order());
    b.le(TheoremId::Lemma1, "|S : C_S(r)| <= |R : C_R(r)|", lhs, rhs);
    let covers = sum_set(ring, sub.elements(), cr.elements()).len() == ring.order();
    b.iff(
        TheoremId::Lemma1,
        "|S : C_S(r)| = |R : C_R(r)| iff S + C_R(r) = R",
        lhs == rhs,
        covers,
    );
    Ok(b.finish())
}

/// `Pr(R) <= Pr(S, R) <= Pr(S)`.
pub fn check_sandwich(sub: &Subring) -> Result<TheoremCheck, CheckError> {
    let mut b = Builder::new(TheoremId::Theorem01, subject(sub));
    let whole = pr(sub.ring()).value();
    let rel = pr_sr(sub)?;
    let own = pr_of_subring(sub).value();
    b.le(TheoremId::Theorem01, "Pr(R) <= Pr(S,R)", whole, rel);
    b.le(TheoremId::Theorem01, "Pr(S,R) <= Pr(S)", rel, own);
    Ok(b.finish())
}

/// When each side of the sandwich is attained.
pub fn check_equality_conditions(sub: &Subring) -> Result<TheoremCheck, CheckError> {
    let ring = sub.ring();
    let mut b = Builder::new(TheoremId::Cor1, subject(sub));
    let whole = pr(ring).value();
    let rel = pr_sr(sub)?;
    let own = pr_of_subring(sub).value();
    let whole_ring = ring.whole();
    let mut covers = vec![false; ring.order()];
    for r in ring.elements() {
        let cr = centralizer(&whole_ring, r)?;
        covers[r] = sum_set(ring, sub.elements(), cr.elements()).len() == ring.order();
    }
    let over_r = covers.iter().all(|&c| c);
    let over_s = sub.elements().iter().all(|&s| covers[s]);
    b.iff(
        TheoremId::Cor1,
        "Pr(S,R) = Pr(R) iff S + C_R(r) = R for all r in R",
        rel == whole,
        over_r,
    );
    b.iff(
        TheoremId::Cor1,
        "Pr(S,R) = Pr(S) iff S + C_R(r) = R for all r in S",
        rel == own,
        over_s,
    );
    b.implies(
        TheoremId::Cor1,
        "Pr(S,R) = Pr(R) implies Pr(S,R) = Pr(S)",
        rel == whole,
        rel == own,
    );
    if rel == own && rel != whole {
        b.note("Pr(S,R) = Pr(S) while Pr(S,R) != Pr(R)");
    }
    Ok(b.finish())
}

/// `Pr(S2, R) <= Pr(S1, R) <= Pr(S1, S2)` for `S1 ⊆ S2`, with the outer terms.
pub fn check_chain(s1: &Subring, s2: &Subring) -> Result<TheoremCheck, CheckError> {
    same_ring(s1, s2)?;
    let b = Builder::new(
        TheoremId::Refine,
        format!(
            "{}; S1={}; S2={}",
            s1.ring().label(),
            set_label(s1),
            set_label(s2)
        ),
    );
    if !s1.is_subset_of(s2) {
        return Ok(b.skip("S1 is not contained in S2"));
    }
    let mut b = b;
    let outer = pr_sr(s2)?;
    let inner = pr_sr(s1)?;
    let within = pr_centralizer_sum_in(s1, s2)?.value();
    b.le(TheoremId::Refine, "Pr(S2,R) <= Pr(S1,R)", outer, inner);
    b.le(TheoremId::Refine, "Pr(S1,R) <= Pr(S1,S2)", inner, within);
    b.le(
        TheoremId::Refine,
        "Pr(R) <= Pr(S2,R)",
        pr(s1.ring()).value(),
        outer,
    );
    b.le(
        TheoremId::Refine,
        "Pr(S1,S2) <= Pr(S1)",
        within,
        pr_of_subring(s1).value(),
    );
    Ok(b.finish())
}

/// Bounds on `Pr(S, R)` from the smallest prime `p` dividing `|R|`.
pub fn check_prime_bounds(sub: &Subring) -> Result<TheoremCheck, CheckError> {
    let ring = sub.ring();
    let mut b = Builder::new(TheoremId::Theorem001, subject(sub));
    if ring.order() < 2 {
        return Ok(b.skip("|R| = 1 has no prime divisor"));
    }
    let p = prime_of(ring)?;
    b.check.p = Some(p);
    let z = relative_center(sub);
    let (lower, upper) = prime_bounds(p, z.order(), sub.order(), ring.order());
    let value = pr_sr(sub)?;
    b.le(
        TheoremId::Theorem001,
        "z/s + p(s-z)/(s r) <= Pr(S,R)",
        lower,
        value,
    );
    b.le(
        TheoremId::Theorem001,
        "Pr(S,R) <= ((p-1)z + s)/(p s)",
        value,
        upper,
    );
    let whole = ring.whole();
    let mut bad = None;
    for &s in sub.elements().iter().filter(|&&s| !z.contains(s)) {
        let c = centralizer(&whole, s)?.order() as u64;
        if c < p || c > ring.order() as u64 / p {
            bad = Some((s, c));
            break;
        }
    }
    b.clause(
        TheoremId::Theorem001,
        "p <= |C_R(s)| <= |R|/p for s in S outside Z(S,R)",
        bad.is_none(),
        bad.map_or_else(String::new, |(s, c)| format!("s={s}, |C_R(s)|={c}")),
    );
    Ok(b.finish())
}

/// The prime bounds for `S = R`, and the comparisons that hold for non-commutative `R`.
pub fn check_pr_prime_bounds(ring: &FiniteRing) -> Result<TheoremCheck, CheckError> {
    let mut b = Builder::new(TheoremId::Corprbd, ring.label());
    if ring.order() < 2 {
        return Ok(b.skip("|R| = 1 has no prime divisor"));
    }
    let p = prime_of(ring)?;
    b.check.p = Some(p);
    let whole = ring.whole();
    let z = relative_center(&whole);
    let (lower, upper) = prime_bounds(p, z.order(), ring.order(), ring.order());
    let value = pr(ring).value();
    b.le(
        TheoremId::Corprbd,
        "|Z(R)|/|R| + p(|R|-|Z(R)|)/|R|^2 <= Pr(R)",
        lower,
        value,
    );
    b.le(
        TheoremId::Corprbd,
        "Pr(R) <= ((p-1)|Z(R)| + |R|)/(p|R|)",
        value,
        upper,
    );
    if ring.is_commutative() {
        b.note("commutative ring");
    } else {
        let threshold = noncommutative_threshold(p);
        let p2 = p as usize * p as usize;
        b.le(
            TheoremId::Corprbd,
            "p^2 <= |R : Z(R)|",
            int(p2),
            ratio(ring.order(), z.order()),
        );
        b.le(
            TheoremId::Corprbd,
            "((p-1)|Z(R)| + |R|)/(p|R|) <= (p^2+p-1)/p^3",
            upper,
            threshold,
        );
        b.le(
            TheoremId::Corprbd,
            "Pr(R) <= (p^2+p-1)/p^3",
            value,
            threshold,
        );
        let rz = quotient(ring.additive(), &z.as_subgroup())?;
        let factors = rz.invariant_factors();
        b.clause(
            TheoremId::Corprbd,
            "R/Z(R) is not cyclic",
            factors.len() >= 2,
            format!("R/Z(R) invariant factors {factors:?}"),
        );
    }
    Ok(b.finish())
}

/// Upper thresholds for `Pr(S, R)` when `S ⊄ Z(R)`.
pub fn check_noncentral_thresholds(sub: &Subring) -> Result<TheoremCheck, CheckError> {
    let ring = sub.ring();
    let mut b = Builder::new(TheoremId::Theorem02, subject(sub));
    let z = relative_center(sub);
    if z.order() == sub.order() {
        return Ok(b.skip("S is contained in Z(R)"));
    }
    let p = prime_of(ring)?;
    b.check.p = Some(p);
    let value = pr_sr(sub)?;
    if sub.is_commutative() {
        b.le(
            TheoremId::Theorem02,
            "Pr(S,R) <= (2p-1)/p^2",
            value,
            commutative_threshold(p),
        );
        b.le(
            TheoremId::Theorem2,
            "Pr(S,R) <= 3/4",
            value,
            Rational::new(3, 4),
        );
    } else {
        b.le(
            TheoremId::Theorem02,
            "Pr(S,R) <= (p^2+p-1)/p^3",
            value,
            noncommutative_threshold(p),
        );
        b.le(
            TheoremId::Theorem2,
            "Pr(S,R) <= 5/8",
            value,
            Rational::new(5, 8),
        );
    }
    b.le(
        TheoremId::Theorem02,
        "p <= |S : Z(S,R)|",
        int(p as usize),
        ratio(sub.order(), z.order()),
    );
    Ok(b.finish())
}

/// Structure of `S / Z(S, R)` when `Pr(S, R)` attains its threshold.
///
/// Fails with [`CheckError::PreconditionMismatch`] when the value is not extremal.
pub fn classify_extremal(sub: &Subring) -> Result<TheoremCheck, CheckError> {
    let ring = sub.ring();
    let value = pr_sr(sub)?;
    let p = match ring.order() {
        0 | 1 => {
            return Err(CheckError::PreconditionMismatch {
                pr: q(&value),
                p: 1,
            })
        }
        _ => prime_of(ring)?,
    };
    let commutative = sub.is_commutative();
    let target = if commutative {
        commutative_threshold(p)
    } else {
        noncommutative_threshold(p)
    };
    if value != target {
        return Err(CheckError::PreconditionMismatch { pr: q(&value), p });
    }
    let (id, expected) = if commutative {
        (TheoremId::Dc001, vec![p])
    } else {
        (TheoremId::Dc002, vec![p, p])
    };
    let mut b = Builder::new(id, subject(sub));
    b.check.p = Some(p);
    b.eq(id, "Pr(S,R) equals the threshold", value, target);
    b.clause(
        id,
        "p divides |R|",
        (ring.order() as u64).is_multiple_of(p),
        format!("|R| = {}", ring.order()),
    );
    let factors = relative_quotient_factors(sub);
    let statement = if commutative {
        "S/Z(S,R) ≅ Z_p"
    } else {
        "S/Z(S,R) ≅ Z_p x Z_p"
    };
    let detail = format!("invariant factors {factors:?}, expected {expected:?}");
    b.clause(id, statement, factors == expected, detail.clone());
    if p == 2 {
        let statement = if commutative {
            "Pr(S,R) = 3/4 gives S/Z(S,R) ≅ Z_2"
        } else {
            "Pr(S,R) = 5/8 gives S/Z(S,R) ≅ Z_2 x Z_2"
        };
        b.clause(TheoremId::Dc, statement, factors == expected, detail);
    }
    Ok(b.finish())
}

/// Centralizers modulo an ideal and the factorization `Pr(H, R) <= Pr(H/N, R/N) Pr(N)`.
pub fn check_quotient_factorization(h: &Subring, n: &Subring) -> Result<TheoremCheck, CheckError> {
    same_ring(h, n)?;
    if !n.is_ideal() || !n.is_subset_of(h) {
        let b = Builder::new(TheoremId::Lemma2, factorization_subject(h, n));
        let reason = if n.is_ideal() {
            "N is not contained in H"
        } else {
            "N is not an ideal"
        };
        return Ok(b.skip(reason));
    }
    let qr = quotient_ring(h.ring(), n)?;
    check_quotient_factorization_in(h, n, &qr)
}

fn factorization_subject(h: &Subring, n: &Subring) -> String {
    format!(
        "{}; H={}; N={}",
        h.ring().label(),
        set_label(h),
        set_label(n)
    )
}

/// As [`check_quotient_factorization`], reusing a precomputed `R / N`.
pub(crate) fn check_quotient_factorization_in(
    h: &Subring,
    n: &Subring,
    qr: &QuotientRing,
) -> Result<TheoremCheck, CheckError> {
    let ring = h.ring();
    let mut b = Builder::new(TheoremId::Lemma2, factorization_subject(h, n));
    let hq = qr.image(h);
    let qring = qr.ring();
    let mut not_included = None;
    let mut not_equal = None;
    for x in ring.elements() {
        let mut lhs: Vec<usize> = centralizer(h, x)?
            .elements()
            .iter()
            .map(|&c| qr.project(c))
            .collect();
        lhs.sort_unstable();
        lhs.dedup();
        let px = qr.project(x);
        let rhs: Vec<usize> = hq
            .elements()
            .iter()
            .copied()
            .filter(|&y| qring.commutes(y, px))
            .collect();
        if not_included.is_none() && !lhs.iter().all(|y| rhs.binary_search(y).is_ok()) {
            not_included = Some(x);
        }
        if not_equal.is_none() && lhs != rhs {
            not_equal = Some(x);
        }
    }
    let commutators = commutator_subgroup(h);
    let disjoint = n
        .elements()
        .iter()
        .all(|&y| y == 0 || !commutators.contains(y));
    b.clause(
        TheoremId::Lemma2,
        "(C_H(x) + N)/N ⊆ C_{H/N}(x + N) for all x in R",
        not_included.is_none(),
        not_included.map_or_else(String::new, |x| format!("x={x}")),
    );
    b.implies(
        TheoremId::Lemma2,
        "N ∩ [H,R] = 0 implies (C_H(x) + N)/N = C_{H/N}(x + N) for all x in R",
        disjoint,
        not_equal.is_none(),
    );
    let lhs = pr_sr(h)?;
    let rhs = pr_sr(&hq)? * pr_of_subring(n).value();
    b.le(
        TheoremId::Theorem3,
        "Pr(H,R) <= Pr(H/N,R/N) Pr(N)",
        lhs,
        rhs,
    );
    b.implies(
        TheoremId::Theorem3,
        "N ∩ [H,R] = 0 implies Pr(H,R) = Pr(H/N,R/N) Pr(N)",
        disjoint,
        lhs == rhs,
    );
    if !disjoint && lhs == rhs {
        b.note("equality with N ∩ [H,R] != 0");
    }
    if h.is_whole() {
        b.le(
            TheoremId::Theorem3Corollary,
            "Pr(R) <= Pr(R/N) Pr(N)",
            lhs,
            rhs,
        );
        b.implies(
            TheoremId::Theorem3Corollary,
            "N ∩ [R,R] = 0 implies Pr(R) = Pr(R/N) Pr(N)",
            disjoint,
            lhs == rhs,
        );
    }
    if ring.is_commutative() {
        b.note("commutative ring");
    }
    Ok(b.finish())
}

/// `R / C_R(x) ≅ [x, R]` by invariant factors.
pub fn check_centralizer_quotient_iso(
    ring: &FiniteRing,
    x: usize,
) -> Result<TheoremCheck, CheckError> {
    ring.check(x)?;
    let mut b = Builder::new(TheoremId::Obs21, format!("{}; x={x}", ring.label()));
    let c = centralizer(&ring.whole(), x)?;
    let rc = quotient(ring.additive(), &c.as_subgroup())?;
    let image = element_commutator_subgroup(ring, x)?;
    b.eq(
        TheoremId::Obs21,
        "|R : C_R(x)| = |[x,R]|",
        int(rc.order()),
        int(image.order()),
    );
    let (left, right) = (rc.invariant_factors(), image.invariant_factors());
    b.clause(
        TheoremId::Obs21,
        "R/C_R(x) ≅ [x,R]",
        left == right,
        format!("{left:?} vs {right:?}"),
    );
    Ok(b.finish())
}

/// `|[S,R]| >= |K(S,R)| >= |[s,R]| = |R : C_R(s)|` for every `s` in `S`.
pub fn check_commutator_chain(sub: &Subring) -> Result<TheoremCheck, CheckError> {
    let ring = sub.ring();
    let mut b = Builder::new(TheoremId::Eqlb, subject(sub));
    let k = commutator_set(sub).len();
    let span = commutator_subgroup(sub).order();
    b.le(TheoremId::Eqlb, "|K(S,R)| <= |[S,R]|", int(k), int(span));
    let whole = ring.whole();
    let mut too_big = None;
    let mut mismatch = None;
    let mut largest = 0;
    for &s in sub.elements() {
        let image = element_commutator_subgroup(ring, s)?.order();
        let idx = ring.order() / centralizer(&whole, s)?.order();
        largest = largest.max(image);
        if too_big.is_none() && image > k {
            too_big = Some((s, image));
        }
        if mismatch.is_none() && image != idx {
            mismatch = Some((s, image, idx));
        }
    }
    b.clause(
        TheoremId::Eqlb,
        "|[s,R]| <= |K(S,R)| for all s in S",
        too_big.is_none(),
        too_big.map_or_else(
            || format!("max |[s,R]| = {largest}, |K(S,R)| = {k}"),
            |(s, m)| format!("s={s}, |[s,R]| = {m}, |K(S,R)| = {k}"),
        ),
    );
    b.clause(
        TheoremId::Eqlb,
        "|[s,R]| = |R : C_R(s)| for all s in S",
        mismatch.is_none(),
        mismatch.map_or_else(String::new, |(s, m, i)| format!("s={s}: {m} vs {i}")),
    );
    Ok(b.finish())
}

/// Lower bounds from `|K(S,R)|` and `|[S,R]|`, and how they compare to each other and to the prime bound.
pub fn check_lower_bounds(sub: &Subring) -> Result<TheoremCheck, CheckError> {
    let ring = sub.ring();
    let mut b = Builder::new(TheoremId::Newlb1, subject(sub));
    let z = relative_center(sub).order();
    let (s, r) = (sub.order(), ring.order());
    let i = s / z;
    let k = commutator_set(sub).len();
    let c = commutator_subgroup(sub).order();
    let value = pr_sr(sub)?;
    let bound_k = commutator_bound(k, i);
    let bound_c = commutator_bound(c, i);
    b.le(
        TheoremId::Newlb1,
        "(1/|K|)(1 + (|K|-1)/|S:Z(S,R)|) <= Pr(S,R)",
        bound_k,
        value,
    );
    if i > 1 {
        b.lt(
            TheoremId::Newlb1,
            "1/|K(S,R)| < Pr(S,R)",
            ratio(1, k),
            value,
        );
    }
    b.le(
        TheoremId::Newlb2,
        "(1/|[S,R]|)(1 + (|[S,R]|-1)/|S:Z(S,R)|) <= Pr(S,R)",
        bound_c,
        value,
    );
    if i > 1 {
        b.lt(TheoremId::Newlb2, "1/|[S,R]| < Pr(S,R)", ratio(1, c), value);
    }
    if sub.is_whole() {
        b.le(
            TheoremId::Newlb3,
            "(1/|K(R,R)|)(1 + (|K(R,R)|-1)/|R:Z(R)|) <= Pr(R)",
            bound_k,
            value,
        );
        b.le(
            TheoremId::Newlb4,
            "(1/|[R,R]|)(1 + (|[R,R]|-1)/|R:Z(R)|) <= Pr(R)",
            bound_c,
            value,
        );
        if i > 1 {
            b.lt(TheoremId::Newlb3, "1/|K(R,R)| < Pr(R)", ratio(1, k), value);
            b.lt(TheoremId::Newlb4, "1/|[R,R]| < Pr(R)", ratio(1, c), value);
        }
    }
    b.le(
        TheoremId::BoundComparisons,
        "[S,R]-bound <= K-bound",
        bound_c,
        bound_k,
    );
    b.iff(
        TheoremId::BoundComparisons,
        "K-bound = [S,R]-bound iff K(S,R) = [S,R]",
        bound_k == bound_c,
        k == c,
    );
    if c != r && i > 1 {
        let p = prime_of(ring)?;
        b.check.p = Some(p);
        let (prime_lower, _) = prime_bounds(p, z, s, r);
        b.le(
            TheoremId::BoundComparisons,
            "prime lower bound <= [S,R]-bound",
            prime_lower,
            bound_c,
        );
        b.le(
            TheoremId::BoundComparisons,
            "prime lower bound <= K-bound",
            prime_lower,
            bound_k,
        );
        let index_is_p = (r / c) as u64 == p;
        b.iff(
            TheoremId::BoundComparisons,
            "[S,R]-bound = prime lower bound iff |R : [S,R]| = p",
            bound_c == prime_lower,
            index_is_p,
        );
        if index_is_p != ((r / s) as u64 == p) {
            b.note(format!(
                "|R : [S,R]| = {} and |R : S| = {} differ in whether they equal p = {p}",
                r / c,
                r / s
            ));
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests;
