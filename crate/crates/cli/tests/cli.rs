use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn finrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finrank")).args(args).env_remove("FINRANK_BUDGET").output().expect("binary runs")
}

fn json_run(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = finrank(&a);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

fn f(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn hirsch_of_ut3() {
    let (v, code) = json_run(&["hirsch", &f("ut3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["hirsch"], 3);
    assert_eq!(v["prime_used"], 5);
    assert!(v["certificates"]["block_form"].is_object());
    assert!(v["timings"]["unipotent_rank"].is_number());
}

#[test]
fn finite_index_pair() {
    let (v, code) = json_run(&["finite-index", &f("g.json"), &f("h.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["finite_index"], true);
    let (v, _) = json_run(&["finite-index", &f("ut3.json"), &f("ut3.json")]);
    assert_eq!(v["finite_index"], true);
}

#[test]
fn free_group_has_infinite_rank() {
    let (v, code) = json_run(&["is-finite-rank", &f("free.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["finite_rank"], false);
    assert!(v["obstruction"].is_string());
    let (v, code) = json_run(&["hirsch", &f("free.json")]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("finite rank"));
}

#[test]
fn budget_exhaustion_is_unknown() {
    let (v, code) = json_run(&["is-finite-rank", &f("free.json"), "--budget", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["finite_rank"], "unknown");
    let out = Command::new(env!("CARGO_BIN_EXE_finrank")).args(["hirsch", &f("free.json")]).env("FINRANK_BUDGET", "3").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schema_error_names_the_path() {
    let (v, code) = json_run(&["hirsch", &f("bad.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["path"], "$.generators[0][1]");
    let out = finrank(&["hirsch", &f("missing.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn prime_override_is_validated() {
    assert_eq!(finrank(&["hirsch", &f("g.json"), "--prime", "3"]).status.code(), Some(1));
    assert_eq!(finrank(&["hirsch", &f("g.json"), "--prime", "2"]).status.code(), Some(1));
    let (v, code) = json_run(&["hirsch", &f("g.json"), "--prime", "7"]);
    assert_eq!((code, v["prime_used"].as_u64()), (0, Some(7)));
    assert_eq!(v["hirsch"], 1);
}

#[test]
fn other_commands() {
    let (v, code) = json_run(&["rank-bound", &f("g.json"), "--verify"]);
    assert_eq!(code, 0);
    assert_eq!((v["hirsch"].as_u64(), v["prufer_upper_bound"].as_u64()), (Some(1), Some(5)));
    let (v, _) = json_run(&["unipotent-rank", &f("ut3.json")]);
    assert_eq!(v["unipotent_rank"], 3);
    assert_eq!(finrank(&["unipotent-rank", &f("g.json")]).status.code(), Some(1));

    let out = finrank(&["cr-part", &f("ut3.json")]);
    assert!(out.status.success());
    let part = finrank::toolkit::GroupFile::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(part.generators.iter().all(|g| g.is_identity(&part.field)));

    let text = String::from_utf8(finrank(&["hirsch", &f("ut3.json")]).stdout).unwrap();
    assert_eq!(text.trim(), "hirsch: 3 (prime 5)");
}

#[test]
fn verify_reports_its_checks() {
    let (v, code) = json_run(&["hirsch", &f("g.json"), "--verify"]);
    assert_eq!(code, 0);
    assert!(v["certificates"]["checks"].as_u64().unwrap() > 0);
}
