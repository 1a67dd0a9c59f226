use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-curves")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn si_and_canon() {
    assert_eq!(stdout(&["si", "aabAB"]).trim(), "1");
    assert_eq!(stdout(&["si", "aabaaB"]).trim(), "3");
    assert_eq!(stdout(&["canon", "BAba"]).trim(), "abAB");
}

#[test]
fn orbit_counts_table() {
    let text = stdout(&["orbit", "counts", "--seed", "a", "--max-wl", "6"]);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "wordlength,count,cumulative");
    assert_eq!(&rows[1..], ["1,2,2", "2,2,4", "3,4,8", "4,4,12", "5,8,20", "6,4,24"]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["si", "abab"]).status.code(), Some(2));
    assert_eq!(run(&["si", "axb"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["orbit", "verify", "--seed", "abaBAbAB", "--max-wl", "16"]).status.code(), Some(1));
    assert_eq!(run(&["orbit", "verify", "--seed", "aabAB", "--max-wl", "16"]).status.code(), Some(0));
}

#[test]
fn representation_json_keeps_full_precision() {
    let text = stdout(&["metric", "build", "--l1", "1", "--l2", "1.2", "--l3", "1.012"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["placement"], "vertex");
    let c = v["c"].as_f64().unwrap();
    assert_eq!(c, 1.012);
    assert!(text.contains("1.0120000000000000e0"));
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut all: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "manifest.json")
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    all.sort();
    all
}

#[test]
fn replay_reproduces_outputs() {
    let first = tempfile::tempdir().unwrap();
    let again = tempfile::tempdir().unwrap();
    let out = first.path().to_str().unwrap();
    stdout(&[
        "--out", out, "--workers", "2", "coeffs", "--seeds", "aabAB,abaB", "--metrics", "1,1.2,1.012",
        "--max-wl", "30",
    ]);
    let manifest = first.path().join("manifest.json");
    let m: serde_json::Value = serde_json::from_slice(&fs::read(&manifest).unwrap()).unwrap();
    assert_eq!(m["tool"], "torus-curves");
    assert_eq!(m["workers"], 2);
    stdout(&["replay", manifest.to_str().unwrap(), "--out", again.path().to_str().unwrap()]);
    let a = files(first.path());
    assert_eq!(a.iter().map(|f| f.0.as_str()).collect::<Vec<_>>(), ["ratios.csv"]);
    assert_eq!(a, files(again.path()));
}

#[test]
fn spectrum_is_sorted_csv() {
    let text = stdout(&["spectrum", "--seed", "a", "--metric", "1,1.2,1.012", "--max-gl", "10"]);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let lengths: Vec<f64> = rdr.records().map(|r| r.unwrap()[1].parse().unwrap()).collect();
    assert!(!lengths.is_empty());
    assert!(lengths.windows(2).all(|w| w[0] <= w[1]));
}
