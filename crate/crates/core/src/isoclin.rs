//! Isoclinism of ring pairs `(S, R)`: witness search, re-verification and the
//! invariance of `Pr(S, R)`.
//!
//! A witness is a pair of additive isomorphisms `phi: R1/Z(S1,R1) -> R2/Z(S2,R2)`
//! and `psi: [S1,R1] -> [S2,R2]` with `phi(S1/Z) = S2/Z` and
//! `psi([u, v]) = [u', v']` for lifts `u', v'` of `phi(u + Z), phi(v + Z)`.
//! `psi` is never searched: for each `phi` the relation `[u,v] -> [u',v']`
//! generates a subgroup of `[S1,R1] x [S2,R2]`, and `psi` exists exactly when
//! that subgroup is the graph of a bijection.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{
    isomorphisms, quotient, subgroup_generated, AbelianError, AbelianGroup, QuotientGroup, Subgroup,
};
use crate::bounds::{Builder, TheoremCheck, TheoremId};
use crate::prob::{pr_checked, ProbError, Probability};
use crate::ring::{
    commutator_subgroup, element_commutator_subgroup, relative_center, FiniteRing, RingError,
    Subring,
};

/// Default number of `phi` candidates examined before giving up.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Central shifts are re-checked exhaustively up to this many bracket evaluations.
const LIFT_CHECK_LIMIT: usize = 1 << 20;

/// `phi` candidates verified together; the first success in enumeration order wins.
const CHUNK: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoclinError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Group(#[from] AbelianError),
    #[error(transparent)]
    Prob(#[from] ProbError),
    #[error("undecided: search budget of {budget} candidates exhausted")]
    Undecided { budget: u64 },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
}

/// A subring together with the data the isoclinism definition refers to.
#[derive(Debug, Clone)]
pub struct RingPair {
    sub: Subring,
    center: Subring,
    quotient: QuotientGroup,
    image: Subgroup,
    commutators: Subgroup,
}

impl RingPair {
    pub fn new(sub: Subring) -> Result<Self, IsoclinError> {
        let ring = sub.ring();
        let center = relative_center(&sub);
        let quotient = quotient(ring.additive(), &center.as_subgroup())?;
        let image: Vec<usize> = sub
            .elements()
            .iter()
            .map(|&s| quotient.project(s))
            .collect();
        let image = Subgroup::from_elements(quotient.structure(), &image)?;
        let commutators = commutator_subgroup(&sub);
        Ok(Self {
            sub,
            center,
            quotient,
            image,
            commutators,
        })
    }

    /// The pair `(R, R)`.
    pub fn whole(ring: &FiniteRing) -> Result<Self, IsoclinError> {
        Self::new(ring.whole())
    }

    pub fn ring(&self) -> &FiniteRing {
        self.sub.ring()
    }

    pub fn sub(&self) -> &Subring {
        &self.sub
    }

    /// `Z(S, R)`.
    pub fn center(&self) -> &Subring {
        &self.center
    }

    /// `R / Z(S, R)` with its projection.
    pub fn quotient(&self) -> &QuotientGroup {
        &self.quotient
    }

    /// `S / Z(S, R)` inside `R / Z(S, R)`.
    pub fn image(&self) -> &Subgroup {
        &self.image
    }

    /// `[S, R]`.
    pub fn commutators(&self) -> &Subgroup {
        &self.commutators
    }

    pub fn label(&self) -> String {
        let s = if self.sub.is_whole() {
            "R".to_string()
        } else {
            self.sub.to_string()
        };
        format!("({s}, {})", self.ring().label())
    }

    fn lift_image(&self, coset: usize) -> usize {
        self.quotient.lift(coset)
    }
}

/// Isomorphism invariants of a pair; equal for isoclinic pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInvariants {
    pub quotient: Vec<u64>,
    pub image: Vec<u64>,
    pub commutators: Vec<u64>,
    pub pr: Probability,
}

pub fn pair_invariants(pair: &RingPair) -> Result<PairInvariants, IsoclinError> {
    Ok(PairInvariants {
        quotient: pair.quotient.invariant_factors(),
        image: pair.image.invariant_factors(),
        commutators: pair.commutators.invariant_factors(),
        pr: pr_checked(&pair.sub)?,
    })
}

/// The first group invariant on which two pairs differ, described.
///
/// `Pr` is reported by [`pair_invariants`] but never used to reject.
pub fn invariant_mismatch(a: &PairInvariants, b: &PairInvariants) -> Option<String> {
    let fields: [(&str, &Vec<u64>, &Vec<u64>); 3] = [
        ("quotient", &a.quotient, &b.quotient),
        ("subring image", &a.image, &b.image),
        ("commutator", &a.commutators, &b.commutators),
    ];
    fields
        .into_iter()
        .find(|(_, x, y)| x != y)
        .map(|(name, x, y)| format!("{name} invariants {x:?} vs {y:?}"))
}

/// A verified isoclinism between two pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoclinismWitness {
    /// `phi[c]` is the image of coset `c` of `R1 / Z(S1, R1)`, in canonical quotient indices.
    pub phi: Vec<usize>,
    /// `(x, psi(x))` for every `x` in `[S1, R1]`, sorted by `x`.
    pub psi: Vec<(usize, usize)>,
    pub transcript: Vec<String>,
}

impl IsoclinismWitness {
    pub fn psi_of(&self, x: usize) -> Option<usize> {
        self.psi
            .binary_search_by_key(&x, |&(a, _)| a)
            .ok()
            .map(|i| self.psi[i].1)
    }
}

/// Outcome of a search that finished within budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Isoclinic(Box<IsoclinismWitness>),
    NotIsoclinic { reason: String },
}

impl Verdict {
    pub fn witness(&self) -> Option<&IsoclinismWitness> {
        match self {
            Verdict::Isoclinic(w) => Some(w),
            Verdict::NotIsoclinic { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    /// Reject on differing group invariants before enumerating `phi`.
    pub prefilter: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            prefilter: true,
        }
    }
}

/// Index of `(a, b)` in `R1 x R2`, first coordinate most significant.
fn pair_index(a: usize, b: usize, n2: usize) -> usize {
    a * n2 + b
}

/// `[u', v']` for lifts of `phi(u + Z1), phi(v + Z1)`.
fn image_bracket(p1: &RingPair, p2: &RingPair, phi: &[usize], u: usize, v: usize) -> usize {
    let u2 = p2.lift_image(phi[p1.quotient.project(u)]);
    let v2 = p2.lift_image(phi[p1.quotient.project(v)]);
    p2.ring().bracket(u2, v2)
}

/// `psi` induced by `phi`, if it is a well-defined bijection.
fn induced_psi(p1: &RingPair, p2: &RingPair, phi: &[usize]) -> Option<Vec<(usize, usize)>> {
    if p1.image.order() != p2.image.order()
        || !p1
            .image
            .elements()
            .iter()
            .all(|&c| p2.image.contains(phi[c]))
    {
        return None;
    }
    let (r1, r2) = (p1.ring(), p2.ring());
    let product = AbelianGroup::new(
        r1.additive()
            .cyclic_orders()
            .iter()
            .chain(r2.additive().cyclic_orders())
            .copied()
            .collect(),
    )
    .expect("product of valid groups");
    // Brackets only depend on cosets of the relative centers, so coset representatives suffice.
    let mut gens = BTreeSet::new();
    for &cu in p1.image.elements() {
        let u = p1.lift_image(cu);
        for cv in p1.quotient.structure().elements() {
            let v = p1.lift_image(cv);
            gens.insert(pair_index(
                r1.bracket(u, v),
                image_bracket(p1, p2, phi, u, v),
                r2.order(),
            ));
        }
    }
    let gens: Vec<usize> = gens.into_iter().collect();
    let graph = subgroup_generated(&product, &gens).expect("generators lie in the product");
    let n2 = r2.order();
    if graph.order() != p2.commutators.order() {
        return None;
    }
    let split: Vec<(usize, usize)> = graph.elements().iter().map(|&g| (g / n2, g % n2)).collect();
    let single_valued = split.iter().all(|&(a, b)| a != 0 || b == 0);
    let injective = split.iter().all(|&(a, b)| b != 0 || a == 0);
    let onto: BTreeSet<usize> = split.iter().map(|&(_, b)| b).collect();
    (single_valued && injective && onto.len() == p2.commutators.order()).then_some(split)
}

/// Searches for an isoclinism from `p1` to `p2`.
///
/// `phi` candidates are enumerated in lexicographic order and verified in
/// parallel chunks; the first success in enumeration order is returned.
pub fn find_isoclinism(
    p1: &RingPair,
    p2: &RingPair,
    options: SearchOptions,
) -> Result<Verdict, IsoclinError> {
    if options.prefilter {
        let (a, b) = (pair_invariants(p1)?, pair_invariants(p2)?);
        if let Some(reason) = invariant_mismatch(&a, &b) {
            return Ok(Verdict::NotIsoclinic { reason });
        }
    }
    if p1.commutators.order() != p2.commutators.order() {
        return Ok(Verdict::NotIsoclinic {
            reason: format!(
                "commutator orders {} vs {}",
                p1.commutators.order(),
                p2.commutators.order()
            ),
        });
    }
    let mut candidates = isomorphisms(
        p1.quotient.structure(),
        p2.quotient.structure(),
        options.budget,
    );
    let mut examined = 0u64;
    loop {
        let mut chunk = Vec::with_capacity(CHUNK);
        let mut exhausted_budget = false;
        for next in candidates.by_ref().take(CHUNK) {
            match next {
                Ok(iso) => chunk.push(iso.materialize()),
                Err(_) => {
                    exhausted_budget = true;
                    break;
                }
            }
        }
        if chunk.is_empty() && !exhausted_budget {
            let reason = if examined == 0 {
                format!(
                    "quotient invariants {:?} vs {:?}",
                    p1.quotient.invariant_factors(),
                    p2.quotient.invariant_factors()
                )
            } else {
                format!(
                    "none of the {examined} quotient isomorphisms induces a commutator isomorphism"
                )
            };
            return Ok(Verdict::NotIsoclinic { reason });
        }
        let before = examined;
        examined += chunk.len() as u64;
        let found = chunk
            .par_iter()
            .enumerate()
            .find_map_first(|(i, phi)| induced_psi(p1, p2, phi).map(|psi| (i, phi.clone(), psi)));
        if let Some((i, phi, psi)) = found {
            let mut witness = IsoclinismWitness {
                phi,
                psi,
                transcript: Vec::new(),
            };
            witness.transcript = verify_witness(p1, p2, &witness)?;
            let position = before + i as u64 + 1;
            witness.transcript.insert(
                0,
                format!("phi is candidate {position} in enumeration order"),
            );
            return Ok(Verdict::Isoclinic(Box::new(witness)));
        }
        if exhausted_budget {
            return Err(IsoclinError::Undecided {
                budget: options.budget,
            });
        }
    }
}

/// [`find_isoclinism`] for `S_i = R_i`.
pub fn rings_isoclinic(
    r1: &FiniteRing,
    r2: &FiniteRing,
    budget: u64,
) -> Result<Verdict, IsoclinError> {
    find_isoclinism(
        &RingPair::whole(r1)?,
        &RingPair::whole(r2)?,
        SearchOptions {
            budget,
            prefilter: true,
        },
    )
}

fn invalid(msg: impl Into<String>) -> IsoclinError {
    IsoclinError::InvalidWitness(msg.into())
}

/// Re-checks every defining condition of a witness from scratch.
///
/// Returns the list of verified conditions.
pub fn verify_witness(
    p1: &RingPair,
    p2: &RingPair,
    w: &IsoclinismWitness,
) -> Result<Vec<String>, IsoclinError> {
    let (q1, q2) = (p1.quotient.structure(), p2.quotient.structure());
    let mut transcript = Vec::new();
    if w.phi.len() != q1.order() || q1.order() != q2.order() {
        return Err(invalid("phi does not map R1/Z1 onto R2/Z2"));
    }
    let targets: BTreeSet<usize> = w.phi.iter().copied().collect();
    if targets.len() != q2.order() || targets.iter().any(|&t| t >= q2.order()) {
        return Err(invalid("phi is not a bijection"));
    }
    for a in q1.elements() {
        for b in q1.elements() {
            if w.phi[q1.add(a, b)] != q2.add(w.phi[a], w.phi[b]) {
                return Err(invalid(format!("phi is not additive at cosets {a}, {b}")));
            }
        }
    }
    transcript.push(format!(
        "phi is an additive bijection on {} cosets",
        q1.order()
    ));

    let mapped: BTreeSet<usize> = p1.image.elements().iter().map(|&c| w.phi[c]).collect();
    let expected: BTreeSet<usize> = p2.image.elements().iter().copied().collect();
    if mapped != expected {
        return Err(invalid("phi(S1/Z1) != S2/Z2"));
    }
    transcript.push(format!(
        "phi maps S1/Z1 onto S2/Z2 ({} cosets)",
        expected.len()
    ));

    let (c1, c2) = (&p1.commutators, &p2.commutators);
    let domain: Vec<usize> = w.psi.iter().map(|&(a, _)| a).collect();
    if domain != c1.elements() {
        return Err(invalid("psi is not defined exactly on [S1,R1]"));
    }
    let range: BTreeSet<usize> = w.psi.iter().map(|&(_, b)| b).collect();
    if range.len() != c2.order() || !range.iter().all(|&b| c2.contains(b)) {
        return Err(invalid("psi is not a bijection onto [S2,R2]"));
    }
    let (r1, r2) = (p1.ring(), p2.ring());
    for &(a, fa) in &w.psi {
        for &(b, fb) in &w.psi {
            if w.psi_of(r1.add(a, b)) != Some(r2.add(fa, fb)) {
                return Err(invalid(format!("psi is not additive at {a}, {b}")));
            }
        }
    }
    transcript.push(format!(
        "psi is an additive bijection on {} elements",
        c1.order()
    ));

    for &u in p1.sub.elements() {
        for v in r1.elements() {
            let expected = image_bracket(p1, p2, &w.phi, u, v);
            if w.psi_of(r1.bracket(u, v)) != Some(expected) {
                return Err(invalid(format!("psi([u,v]) != [u',v'] at u={u}, v={v}")));
            }
        }
    }
    transcript.push(format!(
        "psi([u,v]) = [u',v'] for all {} pairs (u,v)",
        p1.sub.order() * r1.order()
    ));

    let z2 = p2.center.elements();
    let work = p1.image.order() * p1.quotient.order() * z2.len() * z2.len();
    if work <= LIFT_CHECK_LIMIT {
        for &cu in p1.image.elements() {
            for cv in q1.elements() {
                let u2 = p2.lift_image(w.phi[cu]);
                let v2 = p2.lift_image(w.phi[cv]);
                let base = r2.bracket(u2, v2);
                for &z in z2 {
                    for &y in z2 {
                        if r2.bracket(r2.add(u2, z), r2.add(v2, y)) != base {
                            return Err(invalid(format!(
                                "[u',v'] depends on the lift at u'={u2}, v'={v2}"
                            )));
                        }
                    }
                }
            }
        }
        transcript.push(format!(
            "[u',v'] is independent of the lifts over all {} central shifts",
            z2.len() * z2.len()
        ));
    } else {
        transcript.push("lift independence not re-checked (instance too large)".to_string());
    }
    Ok(transcript)
}

/// `Pr(S1, R1) = Pr(S2, R2)` for a verified witness.
pub fn verify_invariance(
    p1: &RingPair,
    p2: &RingPair,
    w: &IsoclinismWitness,
) -> Result<TheoremCheck, IsoclinError> {
    verify_witness(p1, p2, w)?;
    let mut b = Builder::new(
        TheoremId::Isoclinism,
        format!("{} ~ {}", p1.label(), p2.label()),
    );
    let (a, c) = (pr_checked(&p1.sub)?, pr_checked(&p2.sub)?);
    b.eq(
        TheoremId::Isoclinism,
        "Pr(S1,R1) = Pr(S2,R2)",
        a.value(),
        c.value(),
    );
    Ok(b.finish())
}

/// `[s1, R1] ≅ [s2, R2]` whenever `phi(s1 + Z1) = s2 + Z2`.
pub fn verify_coset_commutator_iso(
    p1: &RingPair,
    p2: &RingPair,
    w: &IsoclinismWitness,
) -> Result<TheoremCheck, IsoclinError> {
    verify_witness(p1, p2, w)?;
    let mut b = Builder::new(
        TheoremId::Isolem,
        format!("{} ~ {}", p1.label(), p2.label()),
    );
    let mut order_mismatch = None;
    let mut iso_mismatch = None;
    for &c in p1.image.elements() {
        let s1 = p1.lift_image(c);
        let s2 = p2.lift_image(w.phi[c]);
        let g1 = element_commutator_subgroup(p1.ring(), s1)?;
        let g2 = element_commutator_subgroup(p2.ring(), s2)?;
        if order_mismatch.is_none() && g1.order() != g2.order() {
            order_mismatch = Some(format!("coset {c}: {} vs {}", g1.order(), g2.order()));
        }
        let (f1, f2) = (g1.invariant_factors(), g2.invariant_factors());
        if iso_mismatch.is_none() && f1 != f2 {
            iso_mismatch = Some(format!("coset {c}: {f1:?} vs {f2:?}"));
        }
    }
    let cosets = p1.image.order();
    b.clause(
        TheoremId::Isolem,
        "|[s1,R1]| = |[s2,R2]| for every coset of S1/Z1",
        order_mismatch.is_none(),
        order_mismatch.unwrap_or_else(|| format!("{cosets} cosets")),
    );
    b.clause(
        TheoremId::Isolem,
        "[s1,R1] ≅ [s2,R2] for every coset of S1/Z1",
        iso_mismatch.is_none(),
        iso_mismatch.unwrap_or_else(|| format!("{cosets} cosets")),
    );
    Ok(b.finish())
}

/// Counts over the isoclinism relation on a list of pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityStats {
    pub pairs: usize,
    pub isoclinic: usize,
    pub undecided: usize,
    /// Triples `(a, b, c)` with `a ~ b` and `b ~ c`.
    pub chains: usize,
    /// Chains where `a ~ c` was not found.
    pub broken: usize,
}

/// Decides isoclinism for every ordered pair and records how often it composes.
pub fn transitivity_stats(
    pairs: &[RingPair],
    options: SearchOptions,
) -> Result<TransitivityStats, IsoclinError> {
    let n = pairs.len();
    let verdicts: Vec<Option<bool>> = (0..n * n)
        .into_par_iter()
        .map(
            |k| match find_isoclinism(&pairs[k / n], &pairs[k % n], options) {
                Ok(v) => Ok(Some(v.witness().is_some())),
                Err(IsoclinError::Undecided { .. }) => Ok(None),
                Err(e) => Err(e),
            },
        )
        .collect::<Result<_, _>>()?;
    let related = |a: usize, b: usize| verdicts[a * n + b] == Some(true);
    let mut stats = TransitivityStats {
        pairs: n * n,
        isoclinic: verdicts.iter().filter(|v| **v == Some(true)).count(),
        undecided: verdicts.iter().filter(|v| v.is_none()).count(),
        ..Default::default()
    };
    for a in 0..n {
        for b in (0..n).filter(|&b| related(a, b)) {
            for c in (0..n).filter(|&c| related(b, c)) {
                stats.chains += 1;
                if !related(a, c) {
                    stats.broken += 1;
                }
            }
        }
    }
    Ok(stats)
}
