//! Versioned, field-ordered reports and their text/csv renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ringcomm::bounds::sweep::Tally;
use ringcomm::bounds::{TheoremCheck, TheoremId};
use ringcomm::isoclin::{IsoclinismWitness, PairInvariants};
use ringcomm::prob::Probability;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "ringcomm-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub label: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(label: impl Into<String>, content: &str) -> Self {
        let digest = Sha256::digest(content.as_bytes());
        Self {
            label: label.into(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerCount {
    pub size: usize,
    pub count: usize,
}

/// Everything `compute` reports for one pair `(S, R)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Computation {
    pub ring: String,
    pub ring_order: usize,
    pub additive: Vec<u64>,
    pub commutative: bool,
    pub subring: Vec<usize>,
    pub pr_ring: Probability,
    pub pr_pair: Probability,
    pub pr_subring: Probability,
    pub center: Vec<usize>,
    pub relative_center: Vec<usize>,
    /// Invariant factors of `S / Z(S,R)`.
    pub relative_quotient: Vec<u64>,
    /// Invariant factors of `R / Z(R)`.
    pub central_quotient: Vec<u64>,
    pub commutator_set: Vec<usize>,
    pub commutator_set_is_subgroup: bool,
    pub commutator_subgroup: Vec<usize>,
    pub commutator_factors: Vec<u64>,
    /// `|C_R(s)|` over `s` in `S`, as a histogram.
    pub centralizer_sizes: Vec<CentralizerCount>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSummary {
    pub label: String,
    pub invariants: PairInvariants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoclinismStatus {
    Isoclinic,
    NotIsoclinic,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoclinismResult {
    pub left: PairSummary,
    pub right: PairSummary,
    pub verdict: IsoclinismStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<IsoclinismWitness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verified: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubringRow {
    pub ring: String,
    pub order: usize,
    pub elements: Vec<usize>,
    pub generators: Vec<usize>,
    pub ideal: bool,
    pub commutative: bool,
    pub central: bool,
    pub pr: Probability,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultItem {
    Computation(Computation),
    Check(TheoremCheck),
    Isoclinism(IsoclinismResult),
    Subring(SubringRow),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    CheckFailed,
    InputError,
    LimitExceeded,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 1,
            Status::InputError => 2,
            Status::LimitExceeded => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub rings: usize,
    pub subrings: usize,
    pub checks: usize,
    pub clauses: usize,
    pub failed: usize,
    pub skipped: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tallies: BTreeMap<TheoremId, Tally>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub results: Vec<ResultItem>,
    pub summary: Summary,
    pub status: Status,
    pub exit_status: u8,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<InputDigest>) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            inputs,
            results: Vec::new(),
            summary: Summary::default(),
            status: Status::Ok,
            exit_status: 0,
        }
    }

    pub fn set_status(&mut self, status: Status) {
        self.status = status;
        self.exit_status = status.exit_code();
    }

    /// Adds a check to the results and the summary counts.
    pub fn push_check(&mut self, check: TheoremCheck) {
        self.summary.checks += 1;
        self.summary.clauses += check.clauses.len();
        self.summary.failed += check.failures().count();
        if !check.hypotheses_hold {
            self.summary.skipped += 1;
        }
        self.results.push(ResultItem::Check(check));
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for item in &self.results {
            render_text(&mut out, item);
        }
        let s = &self.summary;
        if s.checks > 0 || !s.tallies.is_empty() {
            let _ = writeln!(
                out,
                "checks: {}  clauses: {}  failed: {}  skipped: {}",
                s.checks, s.clauses, s.failed, s.skipped
            );
        }
        if s.rings > 0 {
            let _ = writeln!(out, "rings: {}  subrings: {}", s.rings, s.subrings);
        }
        for (id, t) in &s.tallies {
            let _ = writeln!(
                out,
                "  {:<18} checks {:>7}  clauses {:>7}  failed {:>3}  skipped {:>6}",
                id.as_str(),
                t.checks,
                t.clauses,
                t.failed,
                t.skipped
            );
        }
        for (note, n) in &s.notes {
            let _ = writeln!(out, "  note x{n}: {note}");
        }
        if let Some(m) = &s.message {
            let _ = writeln!(out, "{m}");
        }
        let _ = writeln!(out, "status: {}", status_name(self.status));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["kind", "subject", "item", "value", "detail"])
            .expect("csv writes to memory");
        let mut row = |kind: &str, subject: &str, item: &str, value: &str, detail: &str| {
            w.write_record([kind, subject, item, value, detail])
                .expect("csv writes to memory");
        };
        for r in &self.results {
            match r {
                ResultItem::Computation(c) => {
                    let subject = format!("{}; S={}", c.ring, set(&c.subring));
                    row("computation", &subject, "Pr(R)", &c.pr_ring.to_string(), "");
                    row(
                        "computation",
                        &subject,
                        "Pr(S,R)",
                        &c.pr_pair.to_string(),
                        "",
                    );
                    row(
                        "computation",
                        &subject,
                        "Pr(S)",
                        &c.pr_subring.to_string(),
                        "",
                    );
                    row("computation", &subject, "Z(R)", &set(&c.center), "");
                    row(
                        "computation",
                        &subject,
                        "Z(S,R)",
                        &set(&c.relative_center),
                        "",
                    );
                    row(
                        "computation",
                        &subject,
                        "S/Z(S,R)",
                        &format!("{:?}", c.relative_quotient),
                        "",
                    );
                    row(
                        "computation",
                        &subject,
                        "K(S,R)",
                        &set(&c.commutator_set),
                        "",
                    );
                    row(
                        "computation",
                        &subject,
                        "[S,R]",
                        &set(&c.commutator_subgroup),
                        &format!("{:?}", c.commutator_factors),
                    );
                    for cc in &c.centralizer_sizes {
                        row(
                            "computation",
                            &subject,
                            "|C_R(s)|",
                            &cc.size.to_string(),
                            &cc.count.to_string(),
                        );
                    }
                }
                ResultItem::Check(c) => {
                    for cl in &c.clauses {
                        let value = if cl.holds { "holds" } else { "fails" };
                        row("check", &c.subject, cl.theorem.as_str(), value, &cl.detail);
                    }
                    if c.clauses.is_empty() {
                        row(
                            "check",
                            &c.subject,
                            c.theorem_id.as_str(),
                            "hypotheses fail",
                            "",
                        );
                    }
                }
                ResultItem::Isoclinism(i) => {
                    let subject = format!("{} ~ {}", i.left.label, i.right.label);
                    row(
                        "isoclinism",
                        &subject,
                        "verdict",
                        status_word(i.verdict),
                        i.reason.as_deref().unwrap_or(""),
                    );
                }
                ResultItem::Subring(s) => {
                    row(
                        "subring",
                        &s.ring,
                        &set(&s.elements),
                        &s.pr.to_string(),
                        &subring_flags(s),
                    );
                }
            }
        }
        let s = &self.summary;
        for (id, t) in &s.tallies {
            row(
                "tally",
                "",
                id.as_str(),
                &t.failed.to_string(),
                &format!(
                    "checks={} clauses={} skipped={}",
                    t.checks, t.clauses, t.skipped
                ),
            );
        }
        row(
            "summary",
            "",
            "status",
            status_name(self.status),
            &s.message.clone().unwrap_or_default(),
        );
        String::from_utf8(w.into_inner().expect("csv flushes")).expect("csv is utf-8")
    }
}

fn set(xs: &[usize]) -> String {
    let inner: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::CheckFailed => "check failed",
        Status::InputError => "input error",
        Status::LimitExceeded => "limit exceeded",
    }
}

fn status_word(v: IsoclinismStatus) -> &'static str {
    match v {
        IsoclinismStatus::Isoclinic => "isoclinic",
        IsoclinismStatus::NotIsoclinic => "not isoclinic",
        IsoclinismStatus::Undecided => "undecided",
    }
}

fn subring_flags(s: &SubringRow) -> String {
    let mut flags = Vec::new();
    if s.ideal {
        flags.push("ideal");
    }
    if s.commutative {
        flags.push("commutative");
    }
    if s.central {
        flags.push("central");
    }
    flags.join(" ")
}

fn render_text(out: &mut String, item: &ResultItem) {
    match item {
        ResultItem::Computation(c) => {
            let _ = writeln!(
                out,
                "ring      {} (order {}, additive {:?})",
                c.ring, c.ring_order, c.additive
            );
            let _ = writeln!(out, "S         {}", set(&c.subring));
            let _ = writeln!(out, "Pr(R)     {}", c.pr_ring);
            let _ = writeln!(out, "Pr(S,R)   {}", c.pr_pair);
            let _ = writeln!(out, "Pr(S)     {}", c.pr_subring);
            let _ = writeln!(
                out,
                "Z(R)      {}  R/Z(R) {:?}",
                set(&c.center),
                c.central_quotient
            );
            let _ = writeln!(
                out,
                "Z(S,R)    {}  S/Z(S,R) {:?}",
                set(&c.relative_center),
                c.relative_quotient
            );
            let kind = if c.commutator_set_is_subgroup {
                "subgroup"
            } else {
                "not a subgroup"
            };
            let _ = writeln!(out, "K(S,R)    {} ({kind})", set(&c.commutator_set));
            let _ = writeln!(
                out,
                "[S,R]     {}  {:?}",
                set(&c.commutator_subgroup),
                c.commutator_factors
            );
            let hist: Vec<String> = c
                .centralizer_sizes
                .iter()
                .map(|cc| format!("{}x{}", cc.count, cc.size))
                .collect();
            let _ = writeln!(out, "|C_R(s)|  {}", hist.join(" "));
        }
        ResultItem::Check(c) => {
            let mark = if c.passed() { "ok  " } else { "FAIL" };
            let hyp = if c.hypotheses_hold {
                ""
            } else {
                " (hypotheses fail)"
            };
            let _ = writeln!(out, "{mark} {} {}{hyp}", c.theorem_id.as_str(), c.subject);
            for cl in &c.clauses {
                let mark = if cl.holds { "ok" } else { "!!" };
                let _ = writeln!(
                    out,
                    "    {mark} [{}] {}: {}",
                    cl.theorem.as_str(),
                    cl.statement,
                    cl.detail
                );
            }
            for n in &c.notes {
                let _ = writeln!(out, "    note: {n}");
            }
        }
        ResultItem::Isoclinism(i) => {
            for side in [&i.left, &i.right] {
                let inv = &side.invariants;
                let _ = writeln!(
                    out,
                    "{}: R/Z {:?}, S/Z {:?}, [S,R] {:?}, Pr {}",
                    side.label, inv.quotient, inv.image, inv.commutators, inv.pr
                );
            }
            let _ = writeln!(out, "verdict: {}", status_word(i.verdict));
            if let Some(r) = &i.reason {
                let _ = writeln!(out, "reason: {r}");
            }
            if let Some(w) = &i.witness {
                let _ = writeln!(out, "phi: {:?}", w.phi);
                let psi: Vec<String> = w.psi.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                let _ = writeln!(out, "psi: {}", psi.join(" "));
            }
            for v in &i.verified {
                let _ = writeln!(out, "  verified: {v}");
            }
        }
        ResultItem::Subring(s) => {
            let _ = writeln!(
                out,
                "{:>4}  {:<24} Pr(S,R) = {:<8} {}",
                s.order,
                set(&s.elements),
                s.pr.to_string(),
                subring_flags(s)
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_lowercase_hex_sha256() {
        let d = InputDigest::of("abc", "abc");
        assert_eq!(
            d.sha256,
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn status_codes() {
        let mut r = Report::new("verify", Vec::new());
        assert_eq!((r.status, r.exit_status), (Status::Ok, 0));
        for (s, code) in [
            (Status::CheckFailed, 1),
            (Status::InputError, 2),
            (Status::LimitExceeded, 3),
        ] {
            r.set_status(s);
            assert_eq!(r.exit_status, code);
        }
    }

    #[test]
    fn fields_serialize_in_declaration_order() {
        let json = Report::new("compute", vec![InputDigest::of("x", "")]).to_json();
        let keys = [
            "\"schema\"",
            "\"tool_version\"",
            "\"command\"",
            "\"inputs\"",
            "\"results\"",
            "\"summary\"",
            "\"status\"",
            "\"exit_status\"",
        ];
        let positions: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{json}");
    }

    #[test]
    fn csv_quotes_sets() {
        let mut r = Report::new("subrings", Vec::new());
        r.results.push(ResultItem::Subring(SubringRow {
            ring: "zn(4)".into(),
            order: 2,
            elements: vec![0, 2],
            generators: vec![2],
            ideal: true,
            commutative: true,
            central: false,
            pr: Probability::one(),
        }));
        let csv = r.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("kind,subject,item,value,detail"));
        assert_eq!(
            lines.next(),
            Some("subring,zn(4),\"{0,2}\",1/1,ideal commutative")
        );
        assert_eq!(lines.next(), Some("summary,,status,ok,"));
    }
}
