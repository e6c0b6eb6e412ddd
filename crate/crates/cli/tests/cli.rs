use std::fs;
use std::process::{Command, Output};

use ringcomm_cli::report::{Report, ResultItem, Status};
use serde_json::Value;

fn run_ringcomm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringcomm"))
        .args(args)
        .output()
        .expect("ringcomm should execute")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "expected JSON stdout ({e})\nstdout:\n{}\nstderr:\n{}",
            String::from_utf8_lossy(&output.stdout),
            String::from_utf8_lossy(&output.stderr)
        )
    })
}

#[test]
fn compute_json_carries_exact_rationals() {
    let out = run_ringcomm(&[
        "compute",
        "--ring",
        "mat_row(2)",
        "--subring",
        "e1+e2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], "ringcomm-report/1");
    let c = &v["results"][0];
    assert_eq!(c["kind"], "computation");
    assert_eq!(c["pr_ring"], "5/8");
    assert_eq!(c["pr_pair"], "3/4");
    assert_eq!(c["pr_subring"], "1/1");
    assert_eq!(v["exit_status"], 0);
}

#[test]
fn spec_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("row.ring");
    fs::write(
        &path,
        "# row ring over Z_2\nname row\nring custom 2,2\nmult 1 1 = 1,0\nmult 1 2 = 0,1\nsubring S gen e1+e2\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let out = run_ringcomm(&["compute", "--ring", p, "--subring", "S", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["results"][0]["ring"], "row");
    assert_eq!(v["results"][0]["pr_pair"], "3/4");
    assert_eq!(v["inputs"][0]["label"], p);

    let out = run_ringcomm(&["verify", "--corpus", p, "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["summary"]["failed"], 0);
}

#[test]
fn report_parses_back_into_the_same_value() {
    let out = run_ringcomm(&[
        "isoclinic",
        "--pair",
        "mat_row(2)",
        "--pair",
        "mat_upper_tri(2)",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(report.to_json(), text);
    assert!(matches!(&report.results[0], ResultItem::Isoclinism(i) if i.witness.is_some()));
}

#[test]
fn exit_codes() {
    let parse_error = run_ringcomm(&[
        "compute",
        "--ring",
        "ring zn 4; subring S gen e1 + x",
        "--subring",
        "S",
    ]);
    assert_eq!(code(&parse_error), 2);
    let stderr = String::from_utf8_lossy(&parse_error.stderr);
    assert!(stderr.contains("line 2, column"), "{stderr}");

    assert_eq!(code(&run_ringcomm(&["compute", "--ring", "zn(0)"])), 2);
    assert_eq!(code(&run_ringcomm(&["verify", "--theorems", "lemma9"])), 2);
    assert_eq!(code(&run_ringcomm(&["frobnicate"])), 2);
    assert_eq!(
        code(&run_ringcomm(&["verify", "--corpus", "builtin<=65"])),
        3
    );
    assert_eq!(code(&run_ringcomm(&["verify", "--ring", "zn(128)"])), 3);
    assert_eq!(
        code(&run_ringcomm(&[
            "subrings", "--ring", "zn(64)", "--cap", "32"
        ])),
        3
    );
    let undecided = run_ringcomm(&[
        "isoclinic",
        "--pair",
        "mat_row(2)",
        "--subring",
        "e1+e2",
        "--pair",
        "mat_row(2)",
        "--subring",
        "R",
        "--budget",
        "1",
        "--no-prefilter",
        "--format",
        "json",
    ]);
    assert_eq!(code(&undecided), 3);
    assert_eq!(json(&undecided)["results"][0]["verdict"], "undecided");
    let hypotheses = run_ringcomm(&[
        "verify",
        "--ring",
        "mat_row(2)",
        "--subring",
        "Z",
        "--theorems",
        "theorem02",
    ]);
    assert_eq!(code(&hypotheses), 2);
}

#[test]
fn verify_single_ring_passes() {
    let out = run_ringcomm(&[
        "verify",
        "--theorems",
        "all",
        "--ring",
        "zn(6)",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.status, Status::Ok);
    assert_eq!(report.summary.failed, 0);
    assert!(report.summary.tallies.len() >= 20);
}

#[test]
fn subrings_are_sorted_by_order_then_elements() {
    let out = run_ringcomm(&["subrings", "--ring", "mat_row(2)", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let rows: Vec<(u64, Vec<u64>)> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let elems = r["elements"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap())
                .collect();
            (r["order"].as_u64().unwrap(), elems)
        })
        .collect();
    let mut sorted = rows.clone();
    sorted.sort();
    assert_eq!(rows, sorted);
    let s = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["elements"] == serde_json::json!([0, 3]))
        .unwrap();
    assert_eq!(s["pr"], "3/4");
}

#[test]
fn csv_and_text_formats() {
    let out = run_ringcomm(&["subrings", "--ring", "zn(4)", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.iter().filter(|r| &r[0] == "subring").count(), 3);
    let text = run_ringcomm(&["compute", "--ring", "mat_row(2)", "--subring", "e1+e2"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("Pr(S,R)   3/4"), "{text}");
}
