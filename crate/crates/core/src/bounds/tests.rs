use super::*;
use crate::corpus::builtin_corpus;
use crate::ring::{builtin, center, subring_closure, Builtin};

// mat_row(2) indices: 0, e2 = 1, e1 = 2, e1 + e2 = 3.
const E2: usize = 1;
const E1: usize = 2;

fn row2() -> (FiniteRing, Subring) {
    let r = builtin("mat_row", &["2"]).unwrap();
    let s = subring_closure(&r, &[3]).unwrap();
    (r, s)
}

fn r(n: i64, d: i64) -> Option<Rational> {
    Some(Rational::new(n, d))
}

fn clause_holds(check: &TheoremCheck, statement: &str) -> bool {
    check
        .clauses
        .iter()
        .find(|c| c.statement == statement)
        .unwrap_or_else(|| panic!("no clause `{statement}` in {check:?}"))
        .holds
}

#[test]
fn lemma_index_at_zero_and_e1() {
    let (ring, s) = row2();
    let c = check_lemma_index(&s, 0).unwrap();
    assert_eq!((c.lhs, c.rhs), (r(1, 1), r(1, 1)));
    assert_eq!(c.equality_attained, Some(true));
    assert_eq!(c.equality_condition_predicted, Some(true));
    let c = check_lemma_index(&s, E1).unwrap();
    assert_eq!((c.lhs, c.rhs), (r(2, 1), r(2, 1)));
    assert_eq!(c.equality_condition_predicted, Some(true));
    assert!(c.passed());
    assert!(check_lemma_index(&s, 4).is_err());
    // S = {0}: index 1 on the left, 2 on the right, and {0} + C_R(e1) is not R.
    let c = check_lemma_index(&ring.zero_subring(), E1).unwrap();
    assert_eq!((c.lhs, c.rhs), (r(1, 1), r(2, 1)));
    assert_eq!(c.equality_attained, Some(false));
    assert_eq!(c.equality_condition_predicted, Some(false));
}

#[test]
fn commutative_ring_indices_are_one() {
    let z = builtin("zn", &["6"]).unwrap();
    for x in z.elements() {
        let c = check_lemma_index(&z.whole(), x).unwrap();
        assert_eq!((c.lhs, c.rhs), (r(1, 1), r(1, 1)));
    }
}

#[test]
fn sandwich_on_the_example() {
    let (ring, s) = row2();
    let c = check_sandwich(&s).unwrap();
    assert!(c.passed());
    assert_eq!((c.lhs, c.rhs), (r(5, 8), r(3, 4)));
    let details: Vec<&str> = c.clauses.iter().map(|c| c.detail.as_str()).collect();
    assert_eq!(details, vec!["5/8 <= 3/4", "3/4 <= 1/1"]);
    let c = check_sandwich(&ring.whole()).unwrap();
    assert_eq!(c.lhs, c.rhs);
}

#[test]
fn equality_conditions_on_the_example() {
    let (ring, s) = row2();
    let c = check_equality_conditions(&s).unwrap();
    assert!(c.passed());
    assert_eq!(c.equality_attained, Some(false));
    assert_eq!(c.equality_condition_predicted, Some(false));
    let c = check_equality_conditions(&ring.whole()).unwrap();
    assert!(c.passed());
    assert_eq!(c.equality_attained, Some(true));
    // A central subring of a non-commutative ring: Pr(S,R) = Pr(S) = 1, but not Pr(R).
    let c = check_equality_conditions(&center(&ring)).unwrap();
    assert!(c.passed());
    assert_eq!(c.equality_attained, Some(false));
    assert!(c.notes.iter().any(|n| n.contains("Pr(S,R) = Pr(S)")));
}

#[test]
fn chain_examples() {
    let (ring, s) = row2();
    let zero = ring.zero_subring();
    let c = check_chain(&zero, &s).unwrap();
    assert!(c.passed());
    let details: Vec<&str> = c.clauses.iter().map(|c| c.detail.as_str()).collect();
    assert_eq!(
        details,
        vec!["3/4 <= 1/1", "1/1 <= 1/1", "5/8 <= 3/4", "1/1 <= 1/1"]
    );
    let c = check_chain(&s, &s).unwrap();
    assert!(c.passed());
    let not_nested = check_chain(&s, &zero).unwrap();
    assert!(!not_nested.hypotheses_hold);
    assert!(not_nested.lhs.is_none() && not_nested.clauses.is_empty());
    let other = builtin("zn", &["2"]).unwrap();
    assert_eq!(
        check_chain(&other.whole(), &s),
        Err(CheckError::RingMismatch)
    );
}

#[test]
fn prime_bounds_are_tight_on_the_example() {
    let (ring, s) = row2();
    let c = check_prime_bounds(&s).unwrap();
    assert_eq!(c.p, Some(2));
    assert_eq!((c.lhs, c.rhs), (r(3, 4), r(3, 4)));
    assert!(c.passed());
    let c = check_prime_bounds(&center(&ring)).unwrap();
    assert_eq!((c.lhs, c.rhs), (r(1, 1), r(1, 1)));
    let trivial = FiniteRing::trivial();
    assert!(
        !check_prime_bounds(&trivial.whole())
            .unwrap()
            .hypotheses_hold
    );
}

#[test]
fn pr_prime_bounds_for_row_ring() {
    let (ring, _) = row2();
    let c = check_pr_prime_bounds(&ring).unwrap();
    assert!(c.passed(), "{c:?}");
    assert_eq!((c.lhs, c.rhs), (r(5, 8), r(5, 8)));
    assert!(clause_holds(&c, "R/Z(R) is not cyclic"));
    let c = check_pr_prime_bounds(&builtin("zn", &["6"]).unwrap()).unwrap();
    assert_eq!((c.lhs, c.rhs), (r(1, 1), r(1, 1)));
    assert_eq!(c.notes, vec!["commutative ring"]);
}

#[test]
fn noncentral_thresholds() {
    let (ring, s) = row2();
    let c = check_noncentral_thresholds(&s).unwrap();
    assert_eq!((c.lhs, c.rhs), (r(3, 4), r(3, 4)));
    assert!(c.passed());
    let c = check_noncentral_thresholds(&ring.whole()).unwrap();
    assert_eq!((c.lhs, c.rhs), (r(5, 8), r(5, 8)));
    let tri = builtin("mat_upper_tri", &["2"]).unwrap();
    let c = check_noncentral_thresholds(&tri.whole()).unwrap();
    assert!(c.passed());
    assert_eq!(c.rhs, r(5, 8));
    let c = check_noncentral_thresholds(&center(&ring)).unwrap();
    assert!(!c.hypotheses_hold);
}

#[test]
fn extremal_classification() {
    let (ring, s) = row2();
    let c = classify_extremal(&s).unwrap();
    assert_eq!(c.theorem_id, TheoremId::Dc001);
    assert!(c.passed());
    assert!(c.clauses.iter().any(|c| c.theorem == TheoremId::Dc));
    assert_eq!(relative_quotient_factors(&s), vec![2]);
    let c = classify_extremal(&ring.whole()).unwrap();
    assert_eq!(c.theorem_id, TheoremId::Dc002);
    assert!(c.passed());
    assert_eq!(relative_quotient_factors(&ring.whole()), vec![2, 2]);
    let tri3 = builtin("mat_upper_tri", &["3"]).unwrap();
    let c = classify_extremal(&tri3.whole()).unwrap();
    assert_eq!(c.p, Some(3));
    assert!(c.passed());
    let z4 = builtin("zn", &["4"]).unwrap();
    assert!(matches!(
        classify_extremal(&z4.whole()),
        Err(CheckError::PreconditionMismatch { .. })
    ));
}

#[test]
fn quotient_factorization_examples() {
    let (ring, s) = row2();
    let c = check_quotient_factorization(&ring.whole(), &ring.zero_subring()).unwrap();
    assert!(c.passed());
    assert_eq!((c.lhs, c.rhs), (r(5, 8), r(5, 8)));
    assert_eq!(c.equality_attained, Some(true));
    let n = Subring::from_elements(&ring, &[0, E2]).unwrap();
    let c = check_quotient_factorization(&ring.whole(), &n).unwrap();
    assert!(c.passed());
    assert_eq!((c.lhs, c.rhs), (r(5, 8), r(1, 1)));
    assert!(c
        .clauses
        .iter()
        .any(|c| c.theorem == TheoremId::Theorem3Corollary));
    // {0, e1+e2} is not an ideal.
    let c = check_quotient_factorization(&ring.whole(), &s).unwrap();
    assert!(!c.hypotheses_hold);
    let z = builtin("zn", &["4"]).unwrap();
    let c = check_quotient_factorization(&z.whole(), &subring_closure(&z, &[2]).unwrap()).unwrap();
    assert!(c.notes.contains(&"commutative ring".to_string()));
}

#[test]
fn centralizer_quotient_iso_examples() {
    let (ring, _) = row2();
    let c = check_centralizer_quotient_iso(&ring, E1).unwrap();
    assert_eq!((c.lhs, c.rhs), (r(2, 1), r(2, 1)));
    assert!(c.passed());
    let c = check_centralizer_quotient_iso(&ring, 0).unwrap();
    assert_eq!((c.lhs, c.rhs), (r(1, 1), r(1, 1)));
    let full = builtin("mat_full", &["2", "2"]).unwrap();
    for x in full.elements() {
        assert!(check_centralizer_quotient_iso(&full, x).unwrap().passed());
    }
}

#[test]
fn commutator_chain_on_the_example() {
    let (_, s) = row2();
    let c = check_commutator_chain(&s).unwrap();
    assert_eq!((c.lhs, c.rhs), (r(2, 1), r(2, 1)));
    assert!(c.passed());
    let z = builtin("zn", &["8"]).unwrap();
    let c = check_commutator_chain(&z.whole()).unwrap();
    assert_eq!((c.lhs, c.rhs), (r(1, 1), r(1, 1)));
}

#[test]
fn lower_bounds_on_the_example() {
    let (ring, s) = row2();
    let c = check_lower_bounds(&s).unwrap();
    assert!(c.passed(), "{c:?}");
    assert_eq!((c.lhs, c.rhs), (r(3, 4), r(3, 4)));
    assert_eq!(c.p, Some(2));
    let c = check_lower_bounds(&center(&ring)).unwrap();
    assert_eq!((c.lhs, c.rhs), (r(1, 1), r(1, 1)));
    let c = check_lower_bounds(&ring.whole()).unwrap();
    assert!(c.passed());
    assert!(c.clauses.iter().any(|c| c.theorem == TheoremId::Newlb4));
}

#[test]
fn builder_reports_violations() {
    let mut b = Builder::new(TheoremId::Theorem01, "probe".into());
    b.le(
        TheoremId::Theorem01,
        "1 <= 1/2",
        Rational::from_integer(1),
        Rational::new(1, 2),
    );
    b.iff(TheoremId::Cor1, "x iff y", true, false);
    let c = b.finish();
    assert!(!c.passed());
    assert_eq!(c.inequality_holds, Some(false));
    assert_eq!(c.failures().count(), 2);
    assert_eq!(
        c.witness.as_deref(),
        Some("theorem01: 1 <= 1/2 [1/1 <= 1/2] on probe")
    );
}

#[test]
fn check_json_round_trip() {
    let (_, s) = row2();
    let c = check_lower_bounds(&s).unwrap();
    let json = serde_json::to_string(&c).unwrap();
    assert!(json.contains("\"lhs\":\"3/4\""));
    assert_eq!(serde_json::from_str::<TheoremCheck>(&json).unwrap(), c);
    let skipped = check_noncentral_thresholds(&s.ring().zero_subring()).unwrap();
    let json = serde_json::to_string(&skipped).unwrap();
    assert!(!json.contains("lhs") && !json.contains("inequality_holds"));
}

#[test]
fn quick_sweep_passes_and_exercises_both_directions() {
    let corpus = builtin_corpus(16).unwrap();
    let out = sweep::run_sweep(&corpus, &TheoremId::ALL, true).unwrap();
    assert!(out.passed(), "{:?}", out.first_witness());
    for id in TheoremId::ALL {
        assert!(out.tallies[&id].clauses > 0, "{id} never evaluated");
    }
    for id in [TheoremId::Lemma1, TheoremId::Cor1] {
        let attained: Vec<Option<bool>> = out
            .checks
            .iter()
            .filter(|c| c.theorem_id == id && c.hypotheses_hold)
            .map(|c| c.equality_attained)
            .collect();
        assert!(
            attained.contains(&Some(true)) && attained.contains(&Some(false)),
            "{id}"
        );
    }
}

#[test]
fn sweep_selection_restricts_clauses() {
    let corpus =
        vec![crate::corpus::CorpusEntry::new(Builtin::MatRow(2).build().unwrap()).unwrap()];
    let out = sweep::run_sweep(&corpus, &[TheoremId::Theorem2], true).unwrap();
    assert_eq!(
        out.tallies.keys().copied().collect::<Vec<_>>(),
        vec![TheoremId::Theorem2]
    );
    assert!(out
        .checks
        .iter()
        .all(|c| c.clauses.iter().all(|cl| cl.theorem == TheoremId::Theorem2)));
}
