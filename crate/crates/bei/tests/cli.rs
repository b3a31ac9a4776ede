use std::path::Path;
use std::process::{Command, Output};

use bei::formats::write_edge_list;
use bei_core::{build_jewel, Graph};

fn bei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bei"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_jewel() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "jewel.txt", &write_edge_list(&build_jewel()));
    let jsonl = dir.path().join("out.jsonl");
    let o = bei(&["analyze", "--input", &input, "--jsonl", jsonl.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("rules   [6, 9]"), "{out}");
    assert!(out.contains("lobster") && out.contains("contains-jewel"));
    let line = std::fs::read_to_string(&jsonl).unwrap();
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["rules"]["lo"], 6);
    assert_eq!(v["rules"]["hi"], 9);
    // a second run does not duplicate the record
    assert!(bei(&["analyze", "--input", &input, "--jsonl", jsonl.to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read_to_string(&jsonl).unwrap().lines().count(), 1);
}

#[test]
fn reg_on_path_and_glued_triangles() {
    let dir = tempfile::tempdir().unwrap();
    let p6 = write(dir.path(), "p6.txt", &write_edge_list(&Graph::path(6)));
    let out = stdout(&bei(&["reg", "--input", &p6]));
    assert!(out.contains("oracle  reg = 5"), "{out}");
    assert!(out.contains("rules   [5, 5] exact"));
    let tri = write(dir.path(), "bowtie.txt", "5\n1 2\n1 3\n2 3\n1 4\n1 5\n4 5\n");
    let out = stdout(&bei(&["reg", "--input", &tri, "--tier", "hochster", "--char", "2"]));
    assert!(out.contains("oracle  reg = 2 (tier hochster, p = 2)"), "{out}");
    let g6 = write(dir.path(), "k3.g6", "Bw\n");
    let out = stdout(&bei(&["analyze", "--input", &g6, "--format", "graph6"]));
    assert!(out.contains("[1, 1] exact"), "{out}");
}

#[test]
fn betti_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.txt", "3\n1 2\n2 3\n");
    let o = bei(&["betti", "--input", &p3]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        r#"{"p":32003,"entries":[[0,0,1],[1,2,2],[2,4,1]],"reg":2,"pd":2,"tier":"tor"}"#
    );
}

#[test]
fn over_cap_reports_rules_only() {
    let dir = tempfile::tempdir().unwrap();
    let big = write(dir.path(), "p14.txt", &write_edge_list(&Graph::path(14)));
    let o = bei(&["reg", "--input", &big]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("oracle  skipped") && out.contains("[13, 13] exact"), "{out}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(bei(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bei(&["--help"]).status.code(), Some(0));
    let bad = write(dir.path(), "bad.txt", "3\n1 2\n2 2\n");
    let o = bei(&["analyze", "--input", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3: self-loop"));
    assert_eq!(bei(&["verify", "--suite", "nonsense"]).status.code(), Some(1));
    assert_eq!(bei(&["scan-conjecture", "--max-n", "12"]).status.code(), Some(1));
    assert_eq!(bei(&["verify", "--suite", "figures"]).status.code(), Some(0));
}

#[test]
fn scan_small_is_resumable() {
    let dir = tempfile::tempdir().unwrap();
    let jsonl = dir.path().join("scan.jsonl");
    let j = jsonl.to_str().unwrap();
    let first = stdout(&bei(&["scan-conjecture", "--max-n", "8", "--jsonl", j, "--threads", "2"]));
    assert!(first.contains("trees scanned: 48"));
    assert!(first.contains("trees with reg >= m + 2: 0"));
    assert_eq!(std::fs::read_to_string(&jsonl).unwrap().lines().count(), 48);
    let second = stdout(&bei(&["scan-conjecture", "--max-n", "8", "--jsonl", j]));
    assert_eq!(first, second);
    assert_eq!(std::fs::read_to_string(&jsonl).unwrap().lines().count(), 48);
}
