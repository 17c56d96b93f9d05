//! End-to-end tests driving the built binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_antiforce")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("antiforce-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gen_writes_graph_and_classes_sidecar() {
    let dir = tmpdir("gen");
    let out = run_in(&dir, &["gen", "hypercube", "3", "-o", "q3.txt"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("q3.txt")).unwrap();
    assert!(text.starts_with("8 12\n"));
    assert_eq!(text.lines().count(), 13);
    let classes = std::fs::read_to_string(dir.join("q3.txt.classes")).unwrap();
    assert!(classes.contains("class 1: 0 1, 2 3, 4 5, 6 7"));
}

#[test]
fn af_by_class_reports_the_known_value() {
    let dir = tmpdir("af");
    assert!(run_in(&dir, &["gen", "hypercube", "3", "-o", "q3.txt"]).status.success());
    let out = run_in(&dir, &["af", "q3.txt", "--matching-class", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["af"], 4);
    assert_eq!(v["lower_bound_c4"], 4);
    assert_eq!(v["quarter_bound"], "4");
    assert_eq!(v["cyclomatic_bound"], 5);
    assert_eq!(v["witness"].as_array().unwrap().len(), 4);
}

#[test]
fn af_max_matches_single_matching_results() {
    let dir = tmpdir("afmax");
    assert!(run_in(&dir, &["gen", "complete", "4", "-o", "k4.txt"]).status.success());
    let out = run_in(&dir, &["af", "k4.txt", "--max", "--threads", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["af"], 2);
}

#[test]
fn nice_count_list_and_classes() {
    let dir = tmpdir("nice");
    assert!(run_in(&dir, &["gen", "hypercube", "3", "-o", "q3.txt"]).status.success());
    let out = run_in(&dir, &["nice", "q3.txt"]);
    assert_eq!(stdout(&out).trim(), "3");
    let out = run_in(&dir, &["nice", "q3.txt", "--list"]);
    let listing = stdout(&out);
    let blocks: Vec<&str> = listing.trim_end().split("\n\n").collect();
    assert_eq!(blocks.len(), 3);
    assert_eq!(blocks[0], "0 1\n2 3\n4 5\n6 7");
    let out = run_in(&dir, &["nice", "q3.txt", "--classes"]);
    assert_eq!(stdout(&out).trim(), "[[0,1,2]]");
    let out = run_in(&dir, &["involutions", "q3.txt"]);
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn theta_and_primality() {
    let dir = tmpdir("theta");
    assert!(run_in(&dir, &["gen", "cycle", "6", "-o", "c6.txt"]).status.success());
    let out = run_in(&dir, &["theta", "c6.txt", "--classes"]);
    assert_eq!(stdout(&out).lines().count(), 3);
    assert!(run_in(&dir, &["gen", "folded-hypercube", "4", "-o", "fq4.txt"]).status.success());
    let out = run_in(&dir, &["theta", "fq4.txt", "--prime"]);
    assert_eq!(stdout(&out).trim(), "prime");
}

#[test]
fn product_build_and_iso_check() {
    let dir = tmpdir("product");
    assert!(run_in(&dir, &["gen", "folded-hypercube", "3", "-o", "fq3.txt"]).status.success());
    assert!(run_in(&dir, &["gen", "complete", "2", "-o", "k2.txt"]).status.success());
    assert!(run_in(
        &dir,
        &["product", "--build", "fq3.txt", "k2.txt", "-o", "prod.txt"]
    )
    .status
    .success());
    assert!(run_in(&dir, &["gen", "enhanced-hypercube", "4", "1", "-o", "q41.txt"])
        .status
        .success());
    let out = run_in(&dir, &["product", "--verify-iso", "q41.txt", "prod.txt"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["isomorphic"], true);
    // non-isomorphic inputs exit 1
    let out = run_in(&dir, &["product", "--verify-iso", "k2.txt", "fq3.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn construct_trace_round_trip() {
    let dir = tmpdir("construct");
    let out = run_in(
        &dir,
        &["construct", "--seed", "7", "--steps", "5", "-o", "trace.json"],
    );
    assert!(out.status.success());
    // decompose a generated family and check the file parses as JSON steps
    assert!(run_in(&dir, &["gen", "hypercube", "3", "-o", "q3.txt"]).status.success());
    let nice = run_in(&dir, &["nice", "q3.txt", "--list"]);
    let first_block = stdout(&nice).split("\n\n").next().unwrap().trim_end().to_string();
    std::fs::write(dir.join("e1.txt"), format!("{first_block}\n")).unwrap();
    let out = run_in(
        &dir,
        &["construct", "--decompose", "q3.txt", "e1.txt", "-o", "d.json"],
    );
    assert!(out.status.success());
    let steps: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("d.json")).unwrap()).unwrap();
    assert!(steps.as_array().unwrap().len() >= 4);
}

#[test]
fn verify_tier3_passes_and_is_deterministic() {
    let dir = tmpdir("verify");
    let a = run_in(&dir, &["verify", "--suite", "paper", "--max-dim", "3"]);
    assert!(a.status.success(), "tier 3 verify must pass");
    let b = run_in(&dir, &["verify", "--suite", "paper", "--max-dim", "3"]);
    assert_eq!(stdout(&a), stdout(&b), "reports must be byte-identical");
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["schema"], "antiforce/1");
    assert_eq!(v["pass"], true);
    // tsv shape
    let t = run_in(&dir, &["verify", "--max-dim", "3", "--format", "tsv"]);
    assert!(stdout(&t).starts_with("name\texpected\tactual\tpass\tmillis\n"));
}

#[test]
fn malformed_files_exit_2_with_line_diagnostics() {
    let dir = tmpdir("errors");
    std::fs::write(dir.join("broken.txt"), "4 2\nbad line\n").unwrap();
    let out = run_in(&dir, &["af", "broken.txt", "--max"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "diagnostic should name the line: {err}");
    // usage errors also exit 2
    let out = run_in(&dir, &["gen", "no-such-family", "3", "-o", "x.txt"]);
    assert_eq!(out.status.code(), Some(2));
}
