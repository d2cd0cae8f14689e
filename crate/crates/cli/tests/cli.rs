//! End-to-end checks of the circdet binary: JSON schemas, exit codes,
//! search/audit file round trips.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn circdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circdet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("circdet-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn member_verdicts_and_exit_codes() {
    let out = circdet(&["member", "--n", "25", "1375"]);
    assert!(out.status.success());
    let v = &json_lines(&out)[0];
    assert_eq!(v["decision"], "Member");
    assert_eq!(v["reason"]["kind"], "qualifying-prime");
    assert_eq!(v["reason"]["q"], 11);
    assert_eq!(v["reason"]["label"], "Perissad");

    // 26375 = 5^3 * 211, artiad: NonMember, exit 1 under --strict
    let out = circdet(&["member", "--n", "25", "--strict", "26375"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_lines(&out)[0]["decision"], "NonMember");
    let out = circdet(&["member", "--n", "25", "26375"]);
    assert_eq!(out.status.code(), Some(0));

    let out = circdet(&["member", "--n", "27", "--", "-1539"]);
    assert!(out.status.success());
    assert_eq!(json_lines(&out)[0]["decision"], "Member");

    // the general check
    let out = circdet(&["member", "--p", "5", "--t", "2", "--strict", "125"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_lines(&out)[0]["status"], "Excluded");

    // errors exit 2
    let out = circdet(&["member", "--n", "25", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = circdet(&["member", "--n", "25", "twelve"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_records() {
    let out = circdet(&["classify", "--p", "5", "--q", "4871"]);
    assert!(out.status.success());
    let v = &json_lines(&out)[0];
    assert_eq!(v["label"], "Artiad");
    assert_eq!(v["context"], "mod5");
    assert_eq!(v["certificates"]["fibonacci"], true);
    assert_eq!(v["certificates"]["quintic"], true);
    assert_eq!(v["certificates"]["dickson"]["artiad"], true);
    assert_eq!(v["certificates"]["jacobi"]["artiad"], true);
    let qs: i64 = (0..5)
        .map(|i| {
            v["certificates"]["jacobi"][format!("q{i}")]
                .as_i64()
                .unwrap()
        })
        .sum();
    assert_eq!(qs, -1);

    // p = 3 emits a mod3 record, plus mod9 for q = 1 mod 9
    let out = circdet(&["classify", "--p", "3", "--q", "19"]);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["context"], "mod3");
    assert_eq!(lines[1]["context"], "mod9");
    assert_eq!(lines[1]["label"], "Type1");

    let out = circdet(&["classify", "--p", "3", "--q", "991"]);
    let lines = json_lines(&out);
    assert_eq!(lines[1]["label"], "Type4");

    // csv mode
    let out = circdet(&["classify", "--p", "5", "--q", "11", "--csv", "--no-oracles"]);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("11,mod5,Perissad"));
}

#[test]
fn witness_construction_and_check() {
    let out = circdet(&["witness", "--n", "25", "--q", "11"]);
    assert!(out.status.success());
    let v = &json_lines(&out)[0];
    assert_eq!(v["target"], "1375");
    assert_eq!(v["profile"]["measure"], "1375");
    assert_eq!(v["profile"]["norms"][0], "55");

    let out = circdet(&["witness", "--n", "27", "--q", "73", "--level", "5"]);
    assert_eq!(json_lines(&out)[0]["target"], "17739");

    let out = circdet(&["witness", "--n", "25", "--target", "4125"]);
    let v = &json_lines(&out)[0];
    assert_eq!(v["target"], "4125");
    assert_eq!(v["profile"]["measure"], "4125");

    // verify mode on a published polynomial
    let out = circdet(&[
        "witness",
        "--n",
        "27",
        "--check",
        "1,0,0,1,1",
        "--target",
        "8829",
    ]);
    assert_eq!(json_lines(&out)[0]["verified"], true);

    // artiad: type mismatch is an error
    let out = circdet(&["witness", "--n", "25", "--q", "211"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_audit_round_trip() {
    let corpus = tmp_path("corpus.jsonl");
    let out = circdet(&[
        "search",
        "--p",
        "3",
        "--t",
        "3",
        "--coeffs",
        "0,1",
        "--max-degree",
        "9",
        "--f1",
        "3",
        "--out",
        corpus.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let manifest: Value = serde_json::from_str(
        &std::fs::read_to_string(corpus.with_extension("manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["complete"], true);

    let out = circdet(&["audit", "--p", "3", "--t", "3", corpus.to_str().unwrap()]);
    assert!(out.status.success());
    let v = &json_lines(&out)[0];
    assert_eq!(v["clean"], true);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert!(v["records"].as_u64().unwrap() > 0);

    std::fs::remove_file(&corpus).ok();
    std::fs::remove_file(corpus.with_extension("manifest.json")).ok();
}

#[test]
fn budgeted_search_resumes_into_full_coverage() {
    let part = tmp_path("part.jsonl");
    let rest = tmp_path("rest.jsonl");
    let full = tmp_path("full.jsonl");
    let space = [
        "--p",
        "3",
        "--t",
        "3",
        "--coeffs",
        "0,1",
        "--max-degree",
        "11",
    ];
    let mut args: Vec<&str> = vec!["search"];
    args.extend(space);
    args.extend(["--budget", "300", "--out", part.to_str().unwrap()]);
    let out = circdet(&args);
    assert_eq!(out.status.code(), Some(2)); // budget exhausted
    let manifest = part.with_extension("manifest.json");

    // resume without a budget: the hash covers the space, not the policy
    let mut args: Vec<&str> = vec!["search"];
    args.extend(space);
    args.extend([
        "--resume",
        manifest.to_str().unwrap(),
        "--out",
        rest.to_str().unwrap(),
    ]);
    assert!(circdet(&args).status.success());

    let mut args: Vec<&str> = vec!["search"];
    args.extend(space);
    args.extend(["--out", full.to_str().unwrap()]);
    assert!(circdet(&args).status.success());

    let mut merged: Vec<String> = std::fs::read_to_string(&part)
        .unwrap()
        .lines()
        .chain(std::fs::read_to_string(&rest).unwrap().lines())
        .map(str::to_string)
        .collect();
    let mut expect: Vec<String> = std::fs::read_to_string(&full)
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect();
    merged.sort();
    expect.sort();
    assert!(!expect.is_empty());
    assert_eq!(merged, expect);

    for f in [&part, &rest, &full] {
        std::fs::remove_file(f).ok();
        std::fs::remove_file(f.with_extension("manifest.json")).ok();
    }
}

#[test]
fn search_stdout_contains_known_record() {
    let out = circdet(&[
        "search",
        "--p",
        "5",
        "--t",
        "2",
        "--coeffs",
        "-1,0,1",
        "--max-degree",
        "10",
        "--f1",
        "5",
    ]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert!(lines
        .iter()
        .any(|v| v["coeffs"] == "1,0,0,0,1,1,0,0,0,1,1" && v["profile"]["measure"] == "1375"));
}

#[test]
fn tables_small() {
    let out = circdet(&["tables", "--context", "mod5", "--bound", "12"]);
    let v = &json_lines(&out)[0];
    assert_eq!(v["counts"]["Perissad"], 1);
    assert_eq!(v["counts"]["Artiad"], 0);
    assert_eq!(v["lists"]["Perissad"][0], 11);

    let out = circdet(&["tables", "--context", "nonsense", "--bound", "12"]);
    assert_eq!(out.status.code(), Some(2));
}
