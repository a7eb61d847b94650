//! End-to-end checks of the binary: exit codes, byte-stable output, and the
//! construct/sample/search/verify flows.

use std::path::PathBuf;
use std::process::{Command, Output};

fn flagtor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagtor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("flagtor-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn usage_error_exits_two() {
    let out = flagtor(&["definitely-not-a-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_range_exits_zero() {
    let out = flagtor(&["verify", "--m-min", "2", "--m-max", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("X_2: PASS"));
    assert!(text.contains("3/3 certified"));
}

#[test]
fn construct_homology_roundtrip() {
    let file = tmp("x5.json");
    let out = flagtor(&["construct", "xm:5", "--out", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = flagtor(&["homology", file.to_str().unwrap()]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("H_1 = Z + Z/5"), "{text}");
    std::fs::remove_file(file).ok();
}

#[test]
fn sample_is_byte_stable() {
    let run = || {
        let out = flagtor(&["--seed", "31", "sample", "--n", "25", "--p", "0.4"]);
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn search_self_finds_identity() {
    let file = tmp("rp2.json");
    flagtor(&["construct", "rp2", "--out", file.to_str().unwrap()]);
    let out = flagtor(&[
        "search",
        "--pattern",
        file.to_str().unwrap(),
        "--host",
        file.to_str().unwrap(),
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("Found"), "{text}");
    std::fs::remove_file(file).ok();
}

#[test]
fn reproduce_lemma_exits_zero() {
    let out = flagtor(&["reproduce", "lemma51"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("table lemma51: PASS"));
}

#[test]
fn missing_file_reports_error() {
    let out = flagtor(&["homology", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}
