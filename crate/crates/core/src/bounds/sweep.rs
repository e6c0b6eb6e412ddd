//! Runs selected checks over every applicable input of a corpus.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    check_centralizer_quotient_iso, check_chain, check_commutator_chain, check_equality_conditions,
    check_lemma_index, check_lower_bounds, check_noncentral_thresholds, check_pr_prime_bounds,
    check_prime_bounds, check_quotient_factorization_in, check_sandwich, classify_extremal,
    CheckError, CheckOp, TheoremCheck, TheoremId,
};
use crate::corpus::CorpusEntry;
use crate::ring::{quotient_ring, QuotientRing};

/// Per-statement counts over a sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    /// Checks that evaluated at least one clause of this statement.
    pub checks: usize,
    pub clauses: usize,
    pub failed: usize,
    /// Inputs whose hypotheses did not hold.
    pub skipped: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepOutcome {
    /// Recorded checks in input order: all of them, or only failures.
    pub checks: Vec<TheoremCheck>,
    pub tallies: BTreeMap<TheoremId, Tally>,
    /// Count of each distinct note, keyed `operation: note`.
    pub notes: BTreeMap<String, usize>,
}

impl SweepOutcome {
    pub fn failed(&self) -> usize {
        self.tallies.values().map(|t| t.failed).sum()
    }

    pub fn passed(&self) -> bool {
        self.failed() == 0
    }

    /// The first violated clause, described.
    pub fn first_witness(&self) -> Option<&str> {
        self.checks.iter().find_map(|c| c.witness.as_deref())
    }
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Ring,
    Element(usize),
    Sub(CheckOp, usize),
    SubElement(usize, usize),
    Pair(usize, usize),
    Quotient { h: usize, n: usize },
}

fn tasks_for(entry: &CorpusEntry, ops: &[CheckOp]) -> Vec<Task> {
    let subs = &entry.subrings;
    let mut out = Vec::new();
    for &op in ops {
        match op {
            CheckOp::PrPrimeBounds => out.push(Task::Ring),
            CheckOp::CentralizerQuotientIso => out.extend(entry.ring.elements().map(Task::Element)),
            CheckOp::LemmaIndex => {
                for i in 0..subs.len() {
                    out.extend(entry.ring.elements().map(|r| Task::SubElement(i, r)));
                }
            }
            CheckOp::Chain => {
                for i in 0..subs.len() {
                    for j in 0..subs.len() {
                        if subs[i].is_subset_of(&subs[j]) {
                            out.push(Task::Pair(i, j));
                        }
                    }
                }
            }
            CheckOp::QuotientFactorization => {
                for n in 0..subs.len() {
                    if !subs[n].is_ideal() {
                        continue;
                    }
                    for h in 0..subs.len() {
                        if subs[n].is_subset_of(&subs[h]) {
                            out.push(Task::Quotient { h, n });
                        }
                    }
                }
            }
            CheckOp::Invariance | CheckOp::CosetCommutatorIso => {}
            _ => out.extend((0..subs.len()).map(|i| Task::Sub(op, i))),
        }
    }
    out
}

fn run_task(
    entry: &CorpusEntry,
    quotients: &BTreeMap<usize, QuotientRing>,
    task: Task,
) -> Result<Option<TheoremCheck>, CheckError> {
    let subs = &entry.subrings;
    let check = match task {
        Task::Ring => check_pr_prime_bounds(&entry.ring)?,
        Task::Element(x) => check_centralizer_quotient_iso(&entry.ring, x)?,
        Task::SubElement(i, r) => check_lemma_index(&subs[i], r)?,
        Task::Pair(i, j) => check_chain(&subs[i], &subs[j])?,
        Task::Quotient { h, n } => {
            check_quotient_factorization_in(&subs[h], &subs[n], &quotients[&n])?
        }
        Task::Sub(op, i) => {
            let s = &subs[i];
            match op {
                CheckOp::Sandwich => check_sandwich(s)?,
                CheckOp::EqualityConditions => check_equality_conditions(s)?,
                CheckOp::PrimeBounds => check_prime_bounds(s)?,
                CheckOp::NoncentralThresholds => check_noncentral_thresholds(s)?,
                CheckOp::CommutatorChain => check_commutator_chain(s)?,
                CheckOp::LowerBounds => check_lower_bounds(s)?,
                CheckOp::ClassifyExtremal => match classify_extremal(s) {
                    Ok(c) => c,
                    Err(CheckError::PreconditionMismatch { .. }) => return Ok(None),
                    Err(e) => return Err(e),
                },
                other => unreachable!("{} is not a per-subring check", other.name()),
            }
        }
    };
    Ok(Some(check))
}

/// Runs every selected statement over every applicable input of `corpus`.
///
/// Inputs are quantified as follows: subrings `S`; subrings with an element
/// `r`; nested pairs `S1 ⊆ S2`; ideals `N` inside subrings `H`; ring elements
/// `x`; and each ring once. Extremal classification only runs where its
/// precondition holds. Results are in corpus order regardless of scheduling.
pub fn run_sweep(
    corpus: &[CorpusEntry],
    selection: &[TheoremId],
    keep_all: bool,
) -> Result<SweepOutcome, CheckError> {
    let mut ops: Vec<CheckOp> = selection.iter().map(|id| id.op()).collect();
    ops.sort_unstable();
    ops.dedup();

    let quotients: Vec<BTreeMap<usize, QuotientRing>> = corpus
        .par_iter()
        .map(|entry| {
            if !ops.contains(&CheckOp::QuotientFactorization) {
                return Ok(BTreeMap::new());
            }
            entry
                .subrings
                .iter()
                .enumerate()
                .filter(|(_, n)| n.is_ideal())
                .map(|(i, n)| Ok((i, quotient_ring(&entry.ring, n)?)))
                .collect::<Result<BTreeMap<_, _>, CheckError>>()
        })
        .collect::<Result<_, _>>()?;

    let tasks: Vec<(usize, Task)> = corpus
        .iter()
        .enumerate()
        .flat_map(|(e, entry)| tasks_for(entry, &ops).into_iter().map(move |t| (e, t)))
        .collect();
    let results: Vec<Option<TheoremCheck>> = tasks
        .par_iter()
        .map(|&(e, task)| run_task(&corpus[e], &quotients[e], task))
        .collect::<Result<_, _>>()?;

    let mut outcome = SweepOutcome::default();
    for id in selection {
        outcome.tallies.entry(*id).or_default();
    }
    for mut check in results.into_iter().flatten() {
        let op = check.theorem_id.op();
        for note in &check.notes {
            *outcome
                .notes
                .entry(format!("{}: {note}", op.name()))
                .or_default() += 1;
        }
        if !check.hypotheses_hold {
            for id in op.ids().into_iter().filter(|id| selection.contains(id)) {
                outcome.tallies.entry(id).or_default().skipped += 1;
            }
            if keep_all {
                outcome.checks.push(check);
            }
            continue;
        }
        check.restrict(selection);
        if check.clauses.is_empty() {
            continue;
        }
        let mut seen = Vec::new();
        for clause in &check.clauses {
            let tally = outcome.tallies.entry(clause.theorem).or_default();
            tally.clauses += 1;
            if !clause.holds {
                tally.failed += 1;
            }
            if !seen.contains(&clause.theorem) {
                seen.push(clause.theorem);
                tally.checks += 1;
            }
        }
        let witness = check.failures().next().map(|c| {
            format!(
                "{}: {} [{}] on {}",
                c.theorem, c.statement, c.detail, check.subject
            )
        });
        check.witness = witness;
        if keep_all || !check.passed() {
            outcome.checks.push(check);
        }
    }
    Ok(outcome)
}
