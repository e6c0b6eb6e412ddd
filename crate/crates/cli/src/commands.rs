//! The `compute`, `verify`, `isoclinic` and `subrings` commands.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use ringcomm::abelian::quotient;
use ringcomm::bounds::sweep::run_sweep;
use ringcomm::bounds::{parse_selection, relative_quotient_factors, CheckError};
use ringcomm::corpus::{builtin_corpus, CorpusEntry, QUICK_ORDER};
use ringcomm::isoclin::{
    find_isoclinism, pair_invariants, verify_coset_commutator_iso, verify_invariance, IsoclinError,
    RingPair, SearchOptions, Verdict,
};
use ringcomm::prob::{pr_checked, pr_of_subring};
use ringcomm::ring::{
    center, centralizer, commutator_set, commutator_subgroup, enumerate_subrings, relative_center,
    RingError, Subring,
};

use crate::report::{
    CentralizerCount, Computation, InputDigest, IsoclinismResult, IsoclinismStatus, PairSummary,
    Report, ResultItem, Status, SubringRow,
};
use crate::ringspec::{load_ring_arg, RingInput, SpecError};
use crate::CliError;

/// Default cap on ring orders for `verify` and `subrings`.
pub const DEFAULT_CAP: usize = 64;

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CheckError> for CliError {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::Ring(RingError::CapExceeded { .. }) => CliError::Limit(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<IsoclinError> for CliError {
    fn from(e: IsoclinError) -> Self {
        match e {
            IsoclinError::Undecided { .. } => CliError::Limit(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn digest(input: &RingInput) -> InputDigest {
    InputDigest::of(&input.label, &input.text)
}

/// `Pr` and the centralizer/commutator invariants of `(S, R)`.
pub fn compute(ring: &str, subring: Option<&str>) -> Result<Report, CliError> {
    let input = load_ring_arg(ring)?;
    let built = &input.built;
    let sub = match subring {
        Some(s) => built.resolve_subring(s)?,
        None => built.ring.whole(),
    };
    let r = &built.ring;
    let pr_pair = pr_checked(&sub).map_err(input_err)?;
    let pr_ring = pr_checked(&r.whole()).map_err(input_err)?;
    let z = center(r);
    let k = commutator_set(&sub);
    let gamma = commutator_subgroup(&sub);
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &s in sub.elements() {
        let c = centralizer(&r.whole(), s).map_err(input_err)?;
        *sizes.entry(c.order()).or_default() += 1;
    }
    let central_quotient = quotient(r.additive(), &z.as_subgroup())
        .map_err(input_err)?
        .invariant_factors();
    let computation = Computation {
        ring: r.label(),
        ring_order: r.order(),
        additive: r.additive().cyclic_orders().to_vec(),
        commutative: r.is_commutative(),
        subring: sub.elements().to_vec(),
        pr_ring,
        pr_pair,
        pr_subring: pr_of_subring(&sub),
        center: z.elements().to_vec(),
        relative_center: relative_center(&sub).elements().to_vec(),
        relative_quotient: relative_quotient_factors(&sub),
        central_quotient,
        commutator_set_is_subgroup: k.len() == gamma.order(),
        commutator_set: k,
        commutator_subgroup: gamma.elements().to_vec(),
        commutator_factors: gamma.invariant_factors(),
        centralizer_sizes: sizes
            .into_iter()
            .map(|(size, count)| CentralizerCount { size, count })
            .collect(),
    };
    let mut report = Report::new("compute", vec![digest(&input)]);
    report.summary.rings = 1;
    report.summary.subrings = 1;
    report.results.push(ResultItem::Computation(computation));
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Records {
    #[default]
    Failures,
    All,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyArgs {
    pub corpus: Option<String>,
    pub ring: Option<String>,
    pub subrings: Vec<String>,
    pub theorems: String,
    pub cap: usize,
    pub records: Records,
}

/// Parses `builtin<=N`; `None` for anything else.
pub fn builtin_bound(selector: &str) -> Option<Result<usize, CliError>> {
    let rest = selector.trim().strip_prefix("builtin")?;
    let n = rest.trim().strip_prefix("<=")?.trim();
    Some(
        n.parse::<usize>().map_err(|_| {
            CliError::Input(format!("corpus bound `{n}` is not a non-negative integer"))
        }),
    )
}

fn corpus_from(args: &VerifyArgs) -> Result<(Vec<CorpusEntry>, Vec<InputDigest>), CliError> {
    if let Some(ring) = &args.ring {
        if args.corpus.is_some() {
            return Err(CliError::Input(
                "use either --ring or --corpus, not both".into(),
            ));
        }
        let input = load_ring_arg(ring)?;
        let r = &input.built.ring;
        if r.order() > args.cap {
            return Err(CliError::Limit(format!(
                "ring of order {} exceeds --cap {}",
                r.order(),
                args.cap
            )));
        }
        let entry = if args.subrings.is_empty() {
            CorpusEntry::new(r.clone()).map_err(input_err)?
        } else {
            let mut subrings = args
                .subrings
                .iter()
                .map(|s| input.built.resolve_subring(s))
                .collect::<Result<Vec<Subring>, _>>()?;
            subrings.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
            subrings.dedup();
            CorpusEntry {
                ring: r.clone(),
                subrings,
                exhaustive: false,
            }
        };
        return Ok((vec![entry], vec![digest(&input)]));
    }
    if !args.subrings.is_empty() {
        return Err(CliError::Input("--subring requires --ring".into()));
    }
    let selector = args
        .corpus
        .clone()
        .unwrap_or_else(|| format!("builtin<={QUICK_ORDER}"));
    if let Some(bound) = builtin_bound(&selector) {
        let n = bound?;
        if n > args.cap {
            return Err(CliError::Limit(format!(
                "corpus bound {n} exceeds --cap {}",
                args.cap
            )));
        }
        let corpus = builtin_corpus(n).map_err(input_err)?;
        return Ok((
            corpus,
            vec![InputDigest::of(selector.trim(), selector.trim())],
        ));
    }
    let mut corpus = Vec::new();
    let mut digests = Vec::new();
    for file in selector.split(',').map(str::trim).filter(|f| !f.is_empty()) {
        if !Path::new(file).is_file() {
            return Err(CliError::Input(format!(
                "corpus `{file}` is neither `builtin<=N` nor a readable file"
            )));
        }
        let text = fs::read_to_string(file).map_err(input_err)?;
        let input = load_ring_arg(file)?;
        let r = &input.built.ring;
        if r.order() > args.cap {
            return Err(CliError::Limit(format!(
                "{file}: ring of order {} exceeds --cap {}",
                r.order(),
                args.cap
            )));
        }
        corpus.push(CorpusEntry::new(r.clone()).map_err(input_err)?);
        digests.push(InputDigest::of(file, &text));
    }
    if corpus.is_empty() {
        return Err(CliError::Input("empty corpus".into()));
    }
    Ok((corpus, digests))
}

/// Runs the selected statements over a corpus or a single ring.
pub fn verify(args: &VerifyArgs) -> Result<Report, CliError> {
    let selection = parse_selection(&args.theorems)?;
    let (corpus, inputs) = corpus_from(args)?;
    let explicit = !args.subrings.is_empty();
    let outcome = run_sweep(
        &corpus,
        &selection,
        args.records == Records::All || explicit,
    )?;
    let mut report = Report::new("verify", inputs);
    report.summary.rings = corpus.len();
    report.summary.subrings = corpus.iter().map(|e| e.subrings.len()).sum();
    let mut skipped_explicit = Vec::new();
    for check in outcome.checks {
        if explicit && !check.hypotheses_hold {
            skipped_explicit.push(format!(
                "{} on {}",
                check.theorem_id.as_str(),
                check.subject
            ));
        }
        if args.records == Records::All || !check.passed() {
            report.results.push(ResultItem::Check(check));
        }
    }
    let s = &mut report.summary;
    s.checks = outcome.tallies.values().map(|t| t.checks).sum();
    s.clauses = outcome.tallies.values().map(|t| t.clauses).sum();
    s.failed = outcome.tallies.values().map(|t| t.failed).sum();
    s.skipped = outcome.tallies.values().map(|t| t.skipped).sum();
    s.tallies = outcome.tallies;
    s.notes = outcome.notes;
    if s.failed > 0 {
        let first = report.results.iter().find_map(|r| match r {
            ResultItem::Check(c) => c.witness.clone(),
            _ => None,
        });
        report.summary.message = first.map(|w| format!("first violation: {w}"));
        report.set_status(Status::CheckFailed);
    } else if let Some(first) = skipped_explicit.first() {
        report.summary.message = Some(format!(
            "hypotheses fail for {} requested check(s), first: {first}",
            skipped_explicit.len()
        ));
        report.set_status(Status::InputError);
    }
    Ok(report)
}

#[derive(Debug, Clone, Default)]
pub struct IsoclinicArgs {
    pub pairs: Vec<String>,
    pub subrings: Vec<String>,
    pub budget: u64,
    pub prefilter: bool,
}

fn pair_from(input: &RingInput, subring: Option<&str>) -> Result<RingPair, CliError> {
    let built = &input.built;
    let sub = match subring {
        Some(s) => built.resolve_subring(s)?,
        None if built.subrings.len() == 1 => built.subrings[0].1.clone(),
        None => built.ring.whole(),
    };
    Ok(RingPair::new(sub)?)
}

/// Decides whether two pairs are isoclinic and checks the consequences of a witness.
pub fn isoclinic(args: &IsoclinicArgs) -> Result<Report, CliError> {
    if args.pairs.len() != 2 {
        return Err(CliError::Input(
            "isoclinic needs exactly two --pair arguments".into(),
        ));
    }
    if !(args.subrings.is_empty() || args.subrings.len() == 2) {
        return Err(CliError::Input(
            "give --subring twice, once per pair, or not at all".into(),
        ));
    }
    let inputs = [
        load_ring_arg(&args.pairs[0])?,
        load_ring_arg(&args.pairs[1])?,
    ];
    let sub = |i: usize| args.subrings.get(i).map(String::as_str);
    let p1 = pair_from(&inputs[0], sub(0))?;
    let p2 = pair_from(&inputs[1], sub(1))?;
    let summary = |p: &RingPair| -> Result<PairSummary, CliError> {
        Ok(PairSummary {
            label: p.label(),
            invariants: pair_invariants(p)?,
        })
    };
    let (left, right) = (summary(&p1)?, summary(&p2)?);
    let mut report = Report::new("isoclinic", inputs.iter().map(digest).collect());
    report.summary.rings = 2;
    report.summary.subrings = 2;
    let options = SearchOptions {
        budget: args.budget,
        prefilter: args.prefilter,
    };
    let mut result = IsoclinismResult {
        left,
        right,
        verdict: IsoclinismStatus::Undecided,
        reason: None,
        witness: None,
        verified: Vec::new(),
    };
    match find_isoclinism(&p1, &p2, options) {
        Ok(Verdict::Isoclinic(w)) => {
            let invariance = verify_invariance(&p1, &p2, &w)?;
            let cosets = verify_coset_commutator_iso(&p1, &p2, &w)?;
            result.verdict = IsoclinismStatus::Isoclinic;
            result.verified = w.transcript.clone();
            result.witness = Some(*w);
            report.results.push(ResultItem::Isoclinism(result));
            report.push_check(invariance);
            report.push_check(cosets);
            if report.summary.failed > 0 {
                report.set_status(Status::CheckFailed);
            }
        }
        Ok(Verdict::NotIsoclinic { reason }) => {
            result.verdict = IsoclinismStatus::NotIsoclinic;
            result.reason = Some(reason);
            report.results.push(ResultItem::Isoclinism(result));
        }
        Err(IsoclinError::Undecided { budget }) => {
            result.reason = Some(format!("budget of {budget} candidates exhausted"));
            report.results.push(ResultItem::Isoclinism(result));
            report.set_status(Status::LimitExceeded);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

/// Every subring with its `Pr(S, R)`, sorted by `(order, elements)`.
pub fn subrings(ring: &str, cap: usize) -> Result<Report, CliError> {
    let input = load_ring_arg(ring)?;
    let r = &input.built.ring;
    let subs = enumerate_subrings(r, cap).map_err(|e| match e {
        RingError::CapExceeded { .. } => CliError::Limit(e.to_string()),
        other => input_err(other),
    })?;
    let z = center(r);
    let mut report = Report::new("subrings", vec![digest(&input)]);
    report.summary.rings = 1;
    report.summary.subrings = subs.len();
    for s in subs {
        let pr = pr_checked(&s).map_err(input_err)?;
        report.results.push(ResultItem::Subring(SubringRow {
            ring: r.label(),
            order: s.order(),
            elements: s.elements().to_vec(),
            generators: s.generators().to_vec(),
            ideal: s.is_ideal(),
            commutative: s.is_commutative(),
            central: s.is_subset_of(&z),
            pr,
        }));
    }
    Ok(report)
}
