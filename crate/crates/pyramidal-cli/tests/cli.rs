//! End-to-end checks of the binary: exit codes, JSON output, and the
//! make -> analyze round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pyramidal"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("pyramidal-cli-test-{}-{name}", std::process::id()));
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn analyze_s3_file_reports_split_verdict() {
    let path = tmp("s3.json");
    std::fs::write(&path, r#"{"degree":3,"generators":[[1,0,2],[0,2,1]]}"#).unwrap();
    let out = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "s3_times_odd");
    assert_eq!(v["involution_count"], 3);
    assert_eq!(v["k_order"], 6);
    std::fs::remove_file(&path).ok();
}

#[test]
fn make_then_analyze_round_trips_the_promised_verdict() {
    let path = tmp("h2.json");
    let out = run(&[
        "make",
        "homocyclic",
        "-p",
        "n=2",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let out = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "homocyclic_semidirect");
    assert_eq!(v["case_params"]["exponent"], 2);
    std::fs::remove_file(&path).ok();
}

#[test]
fn make_s3xh_has_promised_order() {
    let path = tmp("s3c7.json");
    let out = run(&[
        "make",
        "s3xh",
        "-p",
        "h=cyclic:7",
        "-o",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order"], 42);
    std::fs::remove_file(&path).ok();
}

#[test]
fn small_corpus_runs_clean_in_json() {
    let out = run(&["corpus", "--profile", "small", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["summary"]["disagreements"], 0);
    assert_eq!(v["summary"]["invariant_failures"], 0);
    assert!(v["summary"]["groups"].as_u64().unwrap() >= 55);
    assert!(v["entries"].as_array().unwrap().len() >= 55);
}

#[test]
fn corpus_manifest_is_written_and_parses() {
    let path = tmp("manifest.json");
    let out = run(&[
        "corpus",
        "--profile",
        "small",
        "--write-manifest",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entries = v.as_array().unwrap();
    assert!(entries.len() >= 55);
    assert!(entries[0]["spec"].is_object());
    assert!(entries[0]["expected"].is_string());
    std::fs::remove_file(&path).ok();
}

#[test]
fn parse_errors_exit_with_code_two() {
    let path = tmp("broken.json");
    std::fs::write(&path, "{not json").unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();

    let path = tmp("nonbijective.json");
    std::fs::write(&path, r#"{"degree":3,"generators":[[0,0,1]]}"#).unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn unknown_family_exits_with_code_two() {
    let out = run(&["make", "mystery", "-o", "/dev/null"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_excess_exits_with_code_four() {
    let path = tmp("s3cap.json");
    std::fs::write(&path, r#"{"degree":3,"generators":[[1,0,2],[0,2,1]]}"#).unwrap();
    let out = run(&["analyze", path.to_str().unwrap(), "--cap", "5"]);
    assert_eq!(out.status.code(), Some(4), "{out:?}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn parallel_corpus_matches_serial_summary() {
    let serial = run(&["corpus", "--profile", "small", "--json"]);
    let parallel = run(&["corpus", "--profile", "small", "--json", "--jobs", "4"]);
    let vs: serde_json::Value = serde_json::from_str(&stdout(&serial)).unwrap();
    let vp: serde_json::Value = serde_json::from_str(&stdout(&parallel)).unwrap();
    assert_eq!(vs["summary"]["groups"], vp["summary"]["groups"]);
    assert_eq!(
        vs["summary"]["disagreements"],
        vp["summary"]["disagreements"]
    );
    let ids_s: Vec<_> = vs["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["id"].clone())
        .collect();
    let ids_p: Vec<_> = vp["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["id"].clone())
        .collect();
    assert_eq!(ids_s, ids_p, "results must merge deterministically");
}
