use std::path::Path;
use std::process::{Command, Output};

use zigzag_core::analysis::{CheckStatus, Report, SweepSummary};

fn zigzag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zigzag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn graph_file(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn analyze_single_edge() {
    let dir = tempfile::tempdir().unwrap();
    let file = graph_file(dir.path(), "edge.txt", "vertices 2\nedge 1 2\n");
    let out = zigzag(&["analyze", &file, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((report.dim_der, report.hh1), (4, 1));
    assert!(report.formula_checks.values().all(|s| *s == CheckStatus::Pass));
    // the report round-trips through its JSON form
    let again: Report = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(again, report);
}

#[test]
fn analyze_triangle_is_not_a_tree() {
    let dir = tempfile::tempdir().unwrap();
    let file = graph_file(dir.path(), "tri.txt", "# triangle\nvertices 3\nedge 1 2\nedge 2 3\nedge 3 1\n");
    let out = zigzag(&["analyze", &file, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report.is_tree);
    assert_eq!(report.formula_checks["hh1_is_one"], CheckStatus::NotApplicable);
}

#[test]
fn analyze_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let looped = graph_file(dir.path(), "loop.txt", "vertices 3\nedge 1 1\n");
    let out = zigzag(&["analyze", &looped]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("loop edge"));

    let single = graph_file(dir.path(), "one.txt", "vertices 1\n");
    assert_eq!(zigzag(&["analyze", &single]).status.code(), Some(1));
    assert_eq!(zigzag(&["analyze", "/nonexistent/graph.txt"]).status.code(), Some(1));
    let edge = graph_file(dir.path(), "edge.txt", "vertices 2\nedge 1 2\n");
    assert_eq!(zigzag(&["analyze", &edge, "--field", "gf:9"]).status.code(), Some(1));
    assert_eq!(zigzag(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn analyze_human_output_and_prime_field() {
    let dir = tempfile::tempdir().unwrap();
    let file = graph_file(dir.path(), "path.txt", "vertices 4\nedge 1 2\nedge 2 3\nedge 3 4\n");
    let out = zigzag(&["analyze", &file]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("HH^1"));
    assert!(text.contains("structured_eq_solver"));

    let out = zigzag(&["analyze", &file, "--field", "gf:2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("characteristic 2"));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.dim_jordan, None);

    let out = zigzag(&["analyze", &file, "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn dump_derivations() {
    let dir = tempfile::tempdir().unwrap();
    let edge = graph_file(dir.path(), "edge.txt", "vertices 2\nedge 1 2\n");
    let out = zigzag(&["dump-derivations", &edge]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("params:").count(), 4);
    assert!(text.contains("e1 -> a(2,1)"));

    let star = graph_file(dir.path(), "star.txt", "vertices 5\nedge 1 2\nedge 1 3\nedge 1 4\nedge 4 5\n");
    let out = zigzag(&["dump", &star, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let dump: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(dump["dimension"], 13);
    assert_eq!(dump["maps"].as_array().unwrap().len(), 13);
    assert_eq!(dump["maps"][0]["matrix"].as_array().unwrap().len(), 18);

    let empty = graph_file(dir.path(), "empty.txt", "vertices 0\n");
    assert_eq!(zigzag(&["dump-derivations", &empty]).status.code(), Some(1));
    let lone = graph_file(dir.path(), "lone.txt", "vertices 1\n");
    assert_eq!(zigzag(&["dump-derivations", &lone]).status.code(), Some(1));
}

#[test]
fn sweep_single_tree() {
    let out = zigzag(&["sweep", "--count", "1", "--n-min", "2", "--n-max", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let summary: SweepSummary = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary.rows[0].dim_der, Some(4));
    assert_eq!(summary.rows[0].dim_inner, Some(3));
}

#[test]
fn sweep_human_output_is_deterministic() {
    let args = ["sweep", "--count", "8", "--n-min", "3", "--n-max", "9", "--seed", "5"];
    let (a, b) = (zigzag(&args), zigzag(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.ends_with("PASS: 8/8 trees\n"));
    assert_eq!(zigzag(&["sweep", "--n-min", "5", "--n-max", "3"]).status.code(), Some(1));
}
