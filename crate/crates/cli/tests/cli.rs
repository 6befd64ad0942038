//! Black-box tests of the `jrank` binary: exit codes, file formats, text vs
//! structured agreement, and the replay loop.

use jrank_core::rational::{format_rational, rat};
use proptest::prelude::*;
use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.push("tests/fixtures");
    path.push(name);
    path.to_str().unwrap().to_string()
}

/// Runs the binary; returns (exit code, stdout, stderr).
fn jrank(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_jrank"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn temp_file(contents: &str, suffix: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new()
        .suffix(suffix)
        .tempfile()
        .expect("temp file");
    f.write_all(contents.as_bytes()).expect("write temp file");
    f.flush().unwrap();
    f
}

#[test]
fn exit_codes_follow_the_contract() {
    // 0: clean run without findings.
    let (code, out, _) = jrank(&["classify", "-i", &fixture("diamond.csv")]);
    assert_eq!(code, 0, "clean classify");
    assert!(out.contains("balanced:   yes"));

    // 1: a certificate was found.
    let (code, out, _) = jrank(&[
        "certify",
        "--target",
        "J1,J2",
        "--merge",
        "J3,J4",
        "-i",
        &fixture("upset_square.json"),
    ]);
    assert_eq!(code, 1, "certificate exists");
    assert!(out.contains("impossibility certificate: found"));

    // 1: violations were found.
    let (code, out, _) = jrank(&[
        "check",
        "--axiom",
        "sc",
        "--method",
        "flat",
        "-i",
        &fixture("diamond.csv"),
    ]);
    assert_eq!(code, 1, "flat breaks self-consistency here");
    assert!(out.contains("violations: 1"));

    // 2: input file missing.
    let (code, _, err) = jrank(&["classify", "-i", "/no/such/file.csv"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"), "stderr was: {err}");

    // 2: no input given at all.
    let (code, _, err) = jrank(&["classify"]);
    assert_eq!(code, 2);
    assert!(err.contains("--input"));

    // 2: unknown journal in a pair.
    let (code, _, err) = jrank(&[
        "aggregate",
        "--merge",
        "J1,JX",
        "-i",
        &fixture("diamond.csv"),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("JX"));

    // 2: unusable search grid.
    let (code, _, _) = jrank(&[
        "sc-enumerate",
        "--granularity",
        "0",
        "-i",
        &fixture("diamond.csv"),
    ]);
    assert_eq!(code, 2);

    // 2: clap-level usage error.
    let (code, _, _) = jrank(&["rank", "--method", "bogus", "-i", &fixture("diamond.csv")]);
    assert_eq!(code, 2);
}

#[test]
fn rank_prints_scores_and_the_induced_order() {
    let (code, out, _) = jrank(&["rank", "--method", "ls", "-i", &fixture("diamond.csv")]);
    assert_eq!(code, 0);
    assert!(out.contains("method: least squares"), "got: {out}");
    assert!(out.contains("1.000000"), "got: {out}");
    assert!(out.contains("-1.000000"), "got: {out}");
    assert!(out.contains("order: J1 ≻ (J2 ∼ J3) ≻ J4"), "got: {out}");
}

#[test]
fn classify_reports_all_four_flags() {
    let (code, out, _) = jrank(&["classify", "-i", &fixture("diamond.csv")]);
    assert_eq!(code, 0);
    for line in [
        "balanced:   yes",
        "unweighted: yes",
        "loopless:   yes",
        "extremal:   yes",
    ] {
        assert!(out.contains(line), "missing {line:?} in: {out}");
    }
}

#[test]
fn csv_and_structured_inputs_give_identical_output() {
    let a = jrank(&["rank", "--method", "ls", "-i", &fixture("upset_square.csv")]);
    let b = jrank(&[
        "rank",
        "--method",
        "ls",
        "-i",
        &fixture("upset_square.json"),
    ]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn text_and_structured_agree_on_every_number() {
    let (code, text, _) = jrank(&["rank", "--method", "ls", "-i", &fixture("upset_square.csv")]);
    assert_eq!(code, 0);
    let (code, json_text, _) = jrank(&[
        "rank",
        "--method",
        "ls",
        "-i",
        &fixture("upset_square.csv"),
        "--output",
        "structured",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&json_text).unwrap();
    let scores: Vec<f64> = doc["result"]["scores"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();

    // Text shows six decimals; each printed value must round-trip to the
    // structured one at that precision.
    let mut seen = 0;
    for line in text.lines() {
        let line = line.trim_start();
        for (i, name) in ["J1", "J2", "J3", "J4"].iter().enumerate() {
            if let Some(rest) = line.strip_prefix(name) {
                let printed: f64 = rest.trim().parse().expect("score parses");
                assert!(
                    (printed - scores[i]).abs() <= 5e-7,
                    "{name}: text {printed} vs structured {}",
                    scores[i]
                );
                seen += 1;
            }
        }
    }
    assert_eq!(seen, 4, "all four score lines found");

    // The order line and the structured order text are the same string.
    let order_line = text
        .lines()
        .find_map(|l| l.strip_prefix("order: "))
        .expect("order line");
    assert_eq!(order_line, doc["result"]["order"]["text"].as_str().unwrap());
}

#[test]
fn aggregate_emits_round_trippable_csv() {
    let (code, out, _) = jrank(&[
        "aggregate",
        "--merge",
        "J3,J4",
        "-i",
        &fixture("upset_square.json"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "J1,J2,J3∪J4\n0,0.5,0.5\n0.5,0,0.5\n0.5,0.5,0\n");

    let merged = temp_file(&out, ".csv");
    let (code, out, _) = jrank(&["classify", "-i", merged.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("J3∪J4"));
    assert!(out.contains("balanced:   yes"));
}

#[test]
fn transform_fixes_nothing_on_an_already_extremal_problem() {
    let (code, out, _) = jrank(&["transform", "-i", &fixture("diamond.csv")]);
    assert_eq!(code, 0);
    let original = std::fs::read_to_string(fixture("diamond.csv")).unwrap();
    assert_eq!(out.trim_end(), original.trim_end());
}

#[test]
fn every_command_replays_cleanly() {
    let input = fixture("upset_square.json");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["classify", "-i", &input],
        vec!["transform", "-i", &input],
        vec!["aggregate", "--merge", "J1,J2", "-i", &input],
        vec!["rank", "--method", "netsum", "-i", &input],
        vec!["sc-enumerate", "-i", &input],
        vec![
            "check",
            "--axiom",
            "ia-strict",
            "--method",
            "ls",
            "-i",
            &input,
        ],
        vec![
            "certify", "--target", "J1,J2", "--merge", "J3,J4", "-i", &input,
        ],
        vec!["search", "--n", "3", "--axiom", "sc", "--method", "flat"],
        vec![
            "search",
            "--n",
            "4",
            "--impossibility",
            "--family",
            "balanced",
        ],
    ];
    for mut args in invocations {
        let label = args.join(" ");
        args.extend(["--output", "structured"]);
        let (code, out, err) = jrank(&args);
        assert!(code == 0 || code == 1, "{label}: exit {code}, stderr {err}");
        let report = temp_file(&out, ".json");
        let (code, out, err) = jrank(&["check", "--replay", report.path().to_str().unwrap()]);
        assert_eq!(code, 0, "{label}: replay exit {code}, stderr {err}");
        assert!(out.contains("replay ok"), "{label}: {out}");
    }
}

#[test]
fn tampered_reports_fail_replay() {
    let (code, out, _) = jrank(&[
        "certify",
        "--target",
        "J1,J2",
        "--merge",
        "J3,J4",
        "-i",
        &fixture("upset_square.json"),
        "--output",
        "structured",
    ]);
    assert_eq!(code, 1);
    let mut doc: Value = serde_json::from_str(&out).unwrap();
    doc["result"]["certificate"]["after_relation"] = Value::String("below".into());
    let report = temp_file(&doc.to_string(), ".json");
    let (code, out, _) = jrank(&["check", "--replay", report.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("replay mismatch"), "got: {out}");
    assert!(
        out.contains("after_relation"),
        "diff names the field: {out}"
    );
}

#[test]
fn structured_reports_carry_the_full_context() {
    let (_, out, _) = jrank(&[
        "certify",
        "--target",
        "J1,J2",
        "--merge",
        "J3,J4",
        "-i",
        &fixture("upset_square.csv"),
        "--output",
        "structured",
    ]);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["schema"], "jrank-report/1");
    assert_eq!(doc["command"]["name"], "certify");
    assert_eq!(doc["command"]["args"]["target"], serde_json::json!([0, 1]));
    assert_eq!(doc["params"]["tie_tolerance"].as_f64().unwrap(), 1e-8);
    assert_eq!(doc["params"]["cap"], 128);
    assert_eq!(
        doc["problem"]["journals"],
        serde_json::json!(["J1", "J2", "J3", "J4"])
    );
    let cert = &doc["result"]["certificate"];
    assert_eq!(cert["before_relation"], "above");
    assert_eq!(cert["after_relation"], "tied");
    assert_eq!(cert["validated"], true);
    assert_eq!(cert["target_names"], serde_json::json!(["J1", "J2"]));
    assert!(!cert["before"].as_array().unwrap().is_empty());
    assert!(!cert["after"].as_array().unwrap().is_empty());
}

#[test]
fn parse_errors_name_the_offending_cell() {
    let bad_cell = temp_file("A,B\n0,x\n1,0\n", ".csv");
    let (code, _, err) = jrank(&["classify", "-i", bad_cell.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("\"x\""), "stderr: {err}");
    assert!(err.contains("column 2"), "stderr: {err}");

    let ragged = temp_file("A,B\n0,1\n1\n", ".csv");
    let (code, _, err) = jrank(&["classify", "-i", ragged.path().to_str().unwrap()]);
    assert_eq!(code, 2, "ragged row; stderr: {err}");

    let duplicate = temp_file("A,A\n0,1\n1,0\n", ".csv");
    let (code, _, err) = jrank(&["classify", "-i", duplicate.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains('A'), "stderr: {err}");

    let negative = temp_file("A,B\n0,-1\n1,0\n", ".csv");
    let (code, _, err) = jrank(&["classify", "-i", negative.path().to_str().unwrap()]);
    assert_eq!(code, 2, "negative cell; stderr: {err}");
}

#[test]
fn format_flag_overrides_the_extension() {
    let json = std::fs::read_to_string(fixture("diamond.json")).unwrap();
    let compact: Value = serde_json::from_str(&json).unwrap();
    let disguised = temp_file(&compact.to_string(), ".txt");
    let path = disguised.path().to_str().unwrap();

    let (code, _, _) = jrank(&["classify", "-i", path, "--format", "structured"]);
    assert_eq!(code, 0);
    let (code, _, _) = jrank(&["classify", "-i", path]);
    assert_eq!(code, 2, "auto-detection reads .txt as CSV and fails");
}

#[test]
fn wide_tie_tolerance_collapses_the_order() {
    let (code, out, _) = jrank(&[
        "rank",
        "--method",
        "ls",
        "-i",
        &fixture("upset_square.csv"),
        "--tie-tolerance",
        "10",
        "--output",
        "structured",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let classes = doc["result"]["order"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1, "everything within the band is tied");
}

#[test]
fn off_grid_problems_admit_every_candidate_order() {
    // On an integer grid the half-integer matrix has no decompositions, so
    // no witnesses exist and no order can be rejected.
    let (code, out, _) = jrank(&[
        "sc-enumerate",
        "-i",
        &fixture("upset_square.csv"),
        "--granularity",
        "1",
    ]);
    assert_eq!(code, 0);
    assert!(
        out.contains("admissible weak orders: 75 of 75"),
        "got: {out}"
    );
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn problems_survive_the_csv_and_report_round_trip(
        cells in prop::collection::vec((0i64..=7, 1i64..=2), 9)
    ) {
        let names = ["Alpha", "Beta, the second", "Gamma\"quoted\""];
        let mut csv = String::new();
        csv.push_str("\"Alpha\",\"Beta, the second\",\"Gamma\"\"quoted\"\"\"\n");
        for i in 0..3 {
            let row: Vec<String> = (0..3)
                .map(|j| {
                    let (num, den) = cells[i * 3 + j];
                    format_rational(rat(num, den))
                })
                .collect();
            csv.push_str(&row.join(","));
            csv.push('\n');
        }
        let input = temp_file(&csv, ".csv");
        let (code, out, err) = jrank(&[
            "classify",
            "-i",
            input.path().to_str().unwrap(),
            "--output",
            "structured",
        ]);
        prop_assert_eq!(code, 0, "stderr: {}", err);
        let doc: Value = serde_json::from_str(&out).unwrap();
        for (i, name) in names.iter().enumerate() {
            prop_assert_eq!(doc["problem"]["journals"][i].as_str().unwrap(), *name);
        }
        for i in 0..3 {
            for j in 0..3 {
                let (num, den) = cells[i * 3 + j];
                prop_assert_eq!(
                    doc["problem"]["citations"][i][j].as_str().unwrap(),
                    format_rational(rat(num, den))
                );
            }
        }
    }
}
