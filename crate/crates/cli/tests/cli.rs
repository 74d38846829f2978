use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sitalian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sitalian"))
        .args(args)
        .env_remove("SIERPINSKI_MAX_VERTICES")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Writes S(K_n,t) and its construction into `dir`, returning both paths.
fn construct_into(dir: &TempDir, n: &str, t: &str) -> (std::path::PathBuf, std::path::PathBuf) {
    let g = dir.path().join("g.json");
    let w = dir.path().join("w.json");
    let out = sitalian(&["construct", n, t, "--out", path_str(&w), "--graph-out", path_str(&g)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    (g, w)
}

#[test]
fn gen_json_counts() {
    let out = sitalian(&["gen", "3", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["family"], "sierpinski");
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 9);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 12);
    assert_eq!(doc["vertices"][0], "11");
}

#[test]
fn gen_binary_alphabet_is_a_path() {
    let doc = stdout_json(&sitalian(&["gen", "2", "3"]));
    let edges: Vec<(u64, u64)> = doc["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_u64().unwrap(), e[1].as_u64().unwrap()))
        .collect();
    assert_eq!(edges, (0..7).map(|i| (i, i + 1)).collect::<Vec<_>>());
}

#[test]
fn gen_dot_lists_every_vertex() {
    let out = sitalian(&["gen", "5", "3", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph "));
    let nodes = text.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains(" -- ")).count();
    let edges = text.lines().filter(|l| l.contains(" -- ")).count();
    assert_eq!(nodes, 125);
    assert_eq!(edges, 5 * 124 / 2);
}

#[test]
fn construct_then_verify() {
    for (n, t) in [("3", "2"), ("3", "3"), ("4", "3"), ("2", "4"), ("5", "1")] {
        let dir = TempDir::new().unwrap();
        let (g, w) = construct_into(&dir, n, t);
        for variant in ["italian", "perfect"] {
            let out = sitalian(&["verify", path_str(&g), path_str(&w), "--variant", variant]);
            assert_eq!(out.status.code(), Some(0), "S(K_{n},{t}) {variant}");
            assert_eq!(stdout_json(&out)["valid"], true);
        }
    }
}

#[test]
fn construct_reports_weight() {
    let doc = stdout_json(&sitalian(&["construct", "3", "3"]));
    assert_eq!(doc["total_weight"], 12);
    assert_eq!(doc["closed_form"], 12);
    assert_eq!(doc["verdict"], "valid PID");
}

#[test]
fn zero_function_on_k3_fails() {
    let dir = TempDir::new().unwrap();
    let (g, w) = construct_into(&dir, "3", "1");
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&w).unwrap()).unwrap();
    doc["weights"] = serde_json::json!([0, 0, 0]);
    fs::write(&w, doc.to_string()).unwrap();
    let out = sitalian(&["verify", path_str(&g), path_str(&w)]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["valid"], false);
    let violations = report["violations"].as_array().unwrap();
    assert_eq!(violations.len(), 3);
    assert!(violations.iter().all(|v| v["kind"] == "deficit"));
}

#[test]
fn tampered_weight_is_localized() {
    let dir = TempDir::new().unwrap();
    let (g, w) = construct_into(&dir, "3", "3");
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&w).unwrap()).unwrap();
    let weights = doc["weights"].as_array_mut().unwrap();
    let hit = weights.iter().position(|x| x == 1).unwrap();
    weights[hit] = 0.into();
    fs::write(&w, doc.to_string()).unwrap();

    let out = sitalian(&["verify", path_str(&g), path_str(&w), "--variant", "perfect"]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    let violations = report["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    // the lowered vertex or one of its neighbours is reported
    let graph: Value = serde_json::from_str(&fs::read_to_string(&g).unwrap()).unwrap();
    let mut near = vec![hit as u64];
    for e in graph["edges"].as_array().unwrap() {
        let (a, b) = (e[0].as_u64().unwrap(), e[1].as_u64().unwrap());
        if a == hit as u64 {
            near.push(b);
        } else if b == hit as u64 {
            near.push(a);
        }
    }
    assert!(violations.iter().all(|v| near.contains(&v["vertex"].as_u64().unwrap())));
}

#[test]
fn hash_mismatch_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let (_, w) = construct_into(&dir, "3", "2");
    let other = dir.path().join("other.json");
    fs::write(&other, sitalian(&["gen", "3", "2"]).stdout).unwrap();
    let s4 = dir.path().join("s4.json");
    fs::write(&s4, sitalian(&["gen", "4", "2"]).stdout).unwrap();
    assert_eq!(sitalian(&["verify", path_str(&other), path_str(&w)]).status.code(), Some(0));
    let out = sitalian(&["verify", path_str(&s4), path_str(&w)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hash"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{not json").unwrap();
    assert_eq!(sitalian(&["verify", path_str(&bad), path_str(&bad)]).status.code(), Some(2));
    assert_eq!(sitalian(&["gen", "0", "2"]).status.code(), Some(2));
}

#[test]
fn solve_examples() {
    let doc = stdout_json(&sitalian(&["solve", "--sierpinski", "3", "2"]));
    assert_eq!(doc["optimum"], 5);
    assert_eq!(doc["proven"], true);

    let out = sitalian(&["solve", "--sierpinski", "3", "3", "--variant", "perfect"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["optimum"], 12);
    assert_eq!(doc["engine"], "branch-bound");

    let doc = stdout_json(&sitalian(&["solve", "--path", "9"]));
    assert_eq!(doc["optimum"], 5);

    let doc = stdout_json(&sitalian(&["solve", "--complete", "4"]));
    assert_eq!(doc["optimum"], 2);
}

#[test]
fn solve_from_graph_file() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.json");
    fs::write(&g, sitalian(&["gen", "4", "2"]).stdout).unwrap();
    let doc = stdout_json(&sitalian(&["solve", "--graph", path_str(&g), "--engine", "branch-bound"]));
    assert_eq!(doc["optimum"], 7);
}

#[test]
fn exhausted_budget_is_unproven() {
    let out = sitalian(&["solve", "--sierpinski", "3", "3", "--engine", "branch-bound", "--budget", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["proven"], false);
}

#[test]
fn table_rows_and_csv() {
    let out = sitalian(&["table", "--n", "3..4", "--t", "1..3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 6);

    let out = sitalian(&["table", "--n", "2", "--t", "1..4", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("n,t,vertices,regime,closed_italian"));
    let italian: Vec<&str> = lines.map(|l| l.split(',').nth(4).unwrap()).collect();
    assert_eq!(italian, ["2", "3", "5", "9"]);
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        &["gen", "4", "3"][..],
        &["gen", "3", "3", "--format", "dot"],
        &["construct", "4", "3"],
        &["solve", "--sierpinski", "3", "3"],
    ] {
        assert_eq!(sitalian(args).stdout, sitalian(args).stdout, "{args:?}");
    }
}

#[test]
fn capacity_limit_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sitalian"))
        .args(["gen", "3", "5"])
        .env("SIERPINSKI_MAX_VERTICES", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("243"));
    assert_eq!(sitalian(&["gen", "3", "5"]).status.code(), Some(0));
}

#[test]
fn export_colours_by_weight() {
    let dir = TempDir::new().unwrap();
    let (g, w) = construct_into(&dir, "3", "2");
    let out = sitalian(&["export", path_str(&g), "--weights", path_str(&w)]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("fillcolor=lightblue").count(), 5);
    assert!(text.contains("\"12\" [fillcolor=white, xlabel=\"0\"]"));

    let plain = sitalian(&["export", path_str(&g)]);
    assert_eq!(plain.stdout, sitalian(&["gen", "3", "2", "--format", "dot"]).stdout);
}
