use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unicellular"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// `verify` prints a PASS/FAIL line followed by one JSON line.
fn verdict(o: &Output) -> (String, Value) {
    let out = stdout(o);
    let mut lines = out.lines();
    let head = lines.next().unwrap_or_default().to_string();
    let detail = serde_json::from_str(lines.next().unwrap_or("null")).unwrap();
    (head, detail)
}

#[test]
fn analyze_genus_two_example_json() {
    let o = run(&["analyze", "abcdBeCfAEFD", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["genus"], 2);
    assert_eq!(v["vertices"], 3);
    assert_eq!(v["degrees"], serde_json::json!([4, 4, 4]));
}

#[test]
fn extended_and_compact_agree() {
    let a = run(&["canon", "1 2 -1 -2"]);
    let b = run(&["canon", "abAB"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn verify_orbit_genus_three() {
    let o = run(&["verify", "orbit", "--genus", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let (head, detail) = verdict(&o);
    assert_eq!(head, "PASS orbit");
    assert_eq!(detail["orbit"], 63);
}

#[test]
fn enumeration_cap_exits_two_with_guidance() {
    let o = run(&["enumerate", "--genus", "2", "--degree", "3,3,3,3,3,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("graph --mode bfs"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "abAc"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "abab"]).status.code(), Some(2));
    assert_eq!(run(&["reduce", "3,0,6,0"]).status.code(), Some(2));
    assert_eq!(run(&["reduce", "1,0"]).status.code(), Some(2));
    assert_eq!(
        run(&["graph", "--genus", "2", "--degree", "4,4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["analyze", "abAB", "--format", "dot"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_commands_pass() {
    for args in [
        &[
            "verify",
            "connectivity",
            "--genus",
            "2",
            "--degree",
            "4,4,4",
        ][..],
        &["verify", "connectivity", "--genus", "1", "--degree", "3,3"],
        &[
            "verify",
            "connectivity",
            "--genus",
            "2",
            "--degree",
            "3,3,3,3,3,3",
            "--mode",
            "bfs",
        ],
        &["verify", "double-surgery", "--genus", "2"],
        &["verify", "stabilizer", "--genus", "2", "--full-span"],
        &["verify", "stabilizer", "--genus", "3", "--humphries"],
        &["verify", "invariant-nonzero", "--genus", "2"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(verdict(&o).0.starts_with("PASS"), "{args:?}");
    }
}

#[test]
fn verify_is_deterministic_apart_from_timing() {
    let args = [
        "verify",
        "connectivity",
        "--genus",
        "2",
        "--degree",
        "4,4,4",
    ];
    let strip = |o: &Output| {
        let (head, mut v) = verdict(o);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        (head, v)
    };
    assert_eq!(strip(&run(&args)), strip(&run(&args)));
}

#[test]
fn graph_formats() {
    let dot = run(&[
        "graph", "--genus", "2", "--degree", "4,4,4", "--format", "dot",
    ]);
    let text = stdout(&dot);
    assert!(text.starts_with("graph surgery {"));
    assert_eq!(text.matches(" -- ").count(), 7);
    let json = run(&[
        "graph", "--genus", "2", "--degree", "4,4,4", "--format", "json",
    ]);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 6);
    assert_eq!(v["metrics"]["components"], 1);
    let edge = &v["edges"][0];
    assert!(edge[2]["x"].is_string() && edge[2]["y"].is_string());
}

#[test]
fn bfs_with_explicit_seed() {
    let o = run(&[
        "graph",
        "--genus",
        "2",
        "--degree",
        "4,4,4",
        "--mode",
        "bfs",
        "--seed",
        "abcdBeCfAEFD",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["metrics"]["nodes"], 6);
    let bad = run(&[
        "graph",
        "--genus",
        "1",
        "--degree",
        "4",
        "--mode",
        "bfs",
        "--seed",
        "abcdBeCfAEFD",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn reduce_finale_single_move() {
    let o = run(&["reduce", "1,2,0,0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v,
        serde_json::json!([{"class": [0, 1, 0, 0], "power": -2, "tag": "eta"}])
    );
    let neg = run(&["reduce", "-3,4,2,6"]);
    assert_eq!(neg.status.code(), Some(0));
}

#[test]
fn homology_commands() {
    let o = run(&["invariant", "abcdBeCfAEFD", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["form"].as_array().unwrap().len(), 4);
    assert!(v["graph_class"].as_array().unwrap().iter().any(|b| b == 1));
    let odd = run(&["invariant", "abcABC"]);
    assert_eq!(odd.status.code(), Some(2));
    let chain = run(&["chain", "--genus", "3", "--format", "json"]);
    let v: Value = serde_json::from_slice(&chain.stdout).unwrap();
    assert_eq!(v["genus"], 3);
    let curves = run(&["curves", "abAB", "--format", "json"]);
    assert_eq!(curves.status.code(), Some(0));
}

#[test]
fn threads_flag() {
    let o = run(&["--threads", "2", "verify", "double-surgery", "--genus", "2"]);
    assert_eq!(o.status.code(), Some(0));
}
