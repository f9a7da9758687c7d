use std::path::PathBuf;
use std::process::{Command, Output};

use hopf_bratteli::brat::{BundleReport, LevelReport};
use hopf_bratteli::calculus::CalculusReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bratteli")).args(args).output().unwrap()
}

fn level_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bratteli-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn analyze_exit_codes() {
    let good = level_file("good.txt", "in 1,2; out 1,4; mult [[1,0],[2,1]]\n");
    let out = run(&["analyze", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).trim_end().ends_with("PASS"));

    let json = run(&["analyze", good.to_str().unwrap(), "--json"]);
    let report: LevelReport = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(report.findings().count(), 3);

    let bare = level_file("bare.txt", "in 1,1; out 1,2; mult [[1,0],[1,1]]\n");
    assert_eq!(run(&["analyze", bare.to_str().unwrap()]).status.code(), Some(0));
    let direct = run(&["analyze", bare.to_str().unwrap(), "--direct"]);
    assert_eq!(direct.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&direct.stdout).contains("13 not divisible by 5"));

    let bad = level_file("bad.txt", "in 1,2; out 1,3; mult [[1,0],[2,1]]\n");
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("output block 1"));

    let limited = run(&["analyze", good.to_str().unwrap(), "--max-dim", "3"]);
    assert_eq!(limited.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&limited.stderr).contains("C: output 1"));

    assert_eq!(run(&["analyze", "/nonexistent/level.txt"]).status.code(), Some(2));
    assert_eq!(run(&["case7"]).status.code(), Some(2));
}

#[test]
fn case_subcommands() {
    for args in [
        vec!["case1", "--lengths", "2,1", "--json"],
        vec!["case2", "--k", "1", "--n", "3", "--json"],
        vec!["case3", "--dims", "1,2", "--n", "2", "--json"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let r: BundleReport = serde_json::from_slice(&out.stdout).unwrap();
        assert!(r.verdict.is_hopf_galois && r.passed());
    }
    let text = run(&["case2", "--k", "1", "--n", "2"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("Hopf-Galois: true"));
}

#[test]
fn trivial_and_calculus_subcommands() {
    let out = run(&["trivial", "--n", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["beta"][0][1], "cyc(1)[1/2]");

    let out = run(&["calculus", "--n", "2", "--subset", "(1,0),(1,1)", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: CalculusReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.rank, 2);
    assert_eq!(r.inner_element.unwrap(), vec!["E_{0,1}", "E_{1,0}"]);

    assert_eq!(run(&["calculus", "--n", "2", "--subset", "(0,0)"]).status.code(), Some(2));
}
