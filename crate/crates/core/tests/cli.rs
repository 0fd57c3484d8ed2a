use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transitset")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn generated(dir: &Path, family: &str, size: &str) -> PathBuf {
    let out = run(&["generate", family, size]);
    assert!(out.status.success());
    write(dir, &format!("{family}{size}.txt"), &stdout(&out))
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn solve_exact_on_path_complement() {
    let dir = TempDir::new().unwrap();
    let g = generated(dir.path(), "path_complement", "7");
    let out = run(&["solve", "--input", g.to_str().unwrap(), "--mode", "exact", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["schema", "cost", "lower_bound", "optimal", "method", "transitions", "hyperedges"]);
    assert_eq!((v["cost"].as_u64(), v["optimal"].as_bool()), (Some(4), Some(true)));
    assert_eq!(v["method"], "exact");
    assert_eq!(v["transitions"].as_array().unwrap().len(), 4);
}

#[test]
fn solve_text_then_check_the_transitions() {
    let dir = TempDir::new().unwrap();
    let g = generated(dir.path(), "spider_complement", "2");
    let out = run(&["solve", "--input", g.to_str().unwrap(), "--mode", "exact"]);
    let text = stdout(&out);
    assert!(text.starts_with("cost 4\nlower_bound 4\noptimal true\n"), "{text}");
    let transitions: String = text
        .lines()
        .skip_while(|l| *l != "transitions")
        .skip(1)
        .take_while(|l| *l != "hyperedges")
        .map(|l| format!("{l}\n"))
        .collect();
    let t = write(dir.path(), "t.txt", &transitions);
    let out = run(&["check", "--input", g.to_str().unwrap(), "--transitions", t.to_str().unwrap()]);
    assert_eq!((out.status.code(), stdout(&out).as_str()), (Some(0), "connected\n"));
}

#[test]
fn check_reports_failures_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let g = generated(dir.path(), "path", "4");
    let t = write(dir.path(), "t.txt", "0 1 2\n");
    let out = run(&["check", "--input", g.to_str().unwrap(), "--transitions", t.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "not connected: no compatible walk between 0 and 3\n");

    let h = write(dir.path(), "h.txt", "0 1 2\n0 1 2\n");
    let out = run(&["check", "--input", g.to_str().unwrap(), "--hypergraph", h.to_str().unwrap(), "--output", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("collapsed 1 duplicate"));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["kind"], "uncovered_pair");
}

#[test]
fn check_co_connecting_hypergraph() {
    let dir = TempDir::new().unwrap();
    let g = generated(dir.path(), "path", "4");
    let h = write(dir.path(), "h.txt", "0 1 2 3\n");
    let out = run(&["check", "--input", g.to_str().unwrap(), "--hypergraph", h.to_str().unwrap(), "--co"]);
    assert_eq!((out.status.code(), stdout(&out).as_str()), (Some(0), "valid (cost 2)\n"));
}

#[test]
fn convert_both_ways() {
    let dir = TempDir::new().unwrap();
    let g = generated(dir.path(), "cycle", "5");
    let h = write(dir.path(), "h.txt", "0 1 2 3 4\n");
    let out = run(&["convert", "--input", g.to_str().unwrap(), "--hypergraph", h.to_str().unwrap(), "--output", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["size"], 3);
    let triples: String = v["transitions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| format!("{} {} {}\n", t[0], t[1], t[2]))
        .collect();
    let t = write(dir.path(), "t.txt", &triples);
    let out = run(&["convert", "--input", g.to_str().unwrap(), "--transitions", t.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0 1 2 3 4\n");

    let bad = write(dir.path(), "bad.txt", "0 1 2\n");
    let out = run(&["convert", "--input", g.to_str().unwrap(), "--transitions", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tau_output() {
    let dir = TempDir::new().unwrap();
    let g = generated(dir.path(), "spider_complement", "3");
    let out = run(&["tau", "--input", g.to_str().unwrap()]);
    assert!(stdout(&out).starts_with("tau 8\nlower_bound 6\nhyperedges\n"));
}

#[test]
fn generate_formats() {
    let out = run(&["generate", "path", "3"]);
    assert_eq!(stdout(&out), "3 2\n0 1\n1 2\n");
    let out = run(&["generate", "complete", "2", "--dot"]);
    assert_eq!(stdout(&out), "graph G {\n  0;\n  1;\n  0 -- 1;\n}\n");
    let a = stdout(&run(&["generate", "random_tree", "8", "--seed", "3"]));
    let b = stdout(&run(&["generate", "random_tree", "8", "--seed", "3"]));
    assert_eq!(a, b);
}

#[test]
fn bad_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "g.txt", "3 1\n0 5\n");
    let out = run(&["solve", "--input", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertex 5 out of range"));
    let missing = dir.path().join("absent.txt");
    assert_eq!(run(&["tau", "--input", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["generate", "petersen", "10"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let disconnected = write(dir.path(), "d.txt", "4 2\n0 1\n2 3\n");
    assert_eq!(run(&["solve", "--input", disconnected.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reduce_writes_graph_and_labels() {
    let dir = TempDir::new().unwrap();
    let cnf = write(dir.path(), "f.cnf", "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
    let labels = dir.path().join("labels.json");
    let out = run(&["reduce", "--cnf", cnf.to_str().unwrap(), "--labels", labels.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("64 80\n"));
    assert!(text.parse::<transitset::Graph>().is_ok());
    let v: Value = serde_json::from_str(&fs::read_to_string(labels).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["central_vertices"], serde_json::json!([30, 62]));
    assert_eq!(v["labelled_edges"].as_array().unwrap().len(), 6);
}

#[test]
fn table_rejects_unknown_configuration() {
    let out = run(&["table", "--only", "XYZ"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown configuration"));
}

#[test]
fn table_single_configuration() {
    let out = run(&["table", "--only", "sss", "--output", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["rows"][0]["configuration"], "SSS");
    assert_eq!(v["rows"][0]["cost"], 25);
}

#[test]
fn verify_reduction_rejects_partial_assignment() {
    let dir = TempDir::new().unwrap();
    let cnf = write(dir.path(), "f.cnf", "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
    let a = write(dir.path(), "a.txt", "1 -2 0\n");
    let out = run(&["verify-reduction", "--cnf", cnf.to_str().unwrap(), "--assignment", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("variable 3 unset"));
}
