use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_distfactor"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn construct_prints_graph6() {
    let out = run(&["--format", "text", "construct", "--extremal-gr", "11", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "J~~~~~~oE??\n");
    let v = json(&run(&["construct", "--extremal-gr", "11", "1"]));
    assert_eq!(v["edge_count"], 40);
    assert_eq!(v["layout"], serde_json::json!([1, 1, 7, 2]));
}

#[test]
fn spectra_of_k4() {
    let out = run(&["spectra", "--graph6", "C~"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["lambda1"]["value"].as_f64().unwrap() - 3.0).abs() < 1e-9);
    assert!((v["mu1"]["value"].as_f64().unwrap() - 6.0).abs() < 1e-9);
    assert_eq!(v["power_iteration"]["rel_tol"], 1e-12);
}

#[test]
fn certify_the_extremal_graph() {
    let out = run(&["certify", "id", "--graph6", "J~~~~~~oE??", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["verdict"], "extremal_exception");
}

#[test]
fn certify_reads_stdin() {
    let mut child = bin()
        .args(["certify", "k-factor", "--k", "1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"G~~~~{\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["verdict"], "consistent");
}

#[test]
fn counterexample_exits_one() {
    let mut g = distfactor::graph::disjoint_union(&distfactor::Graph::complete(10), &distfactor::Graph::empty(1));
    g.add_edge(0, 10);
    let g6 = distfactor::io::to_graph6(&g);
    let out = run(&["certify", "id", "--graph6", &g6, "--r", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["report"]["verdict"], "counterexample");
}

#[test]
fn search_exit_codes() {
    let out = run(&["search", "deleted", "--a", "1", "--b", "3", "--exhaustive", "2", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["search", "k-factor", "--k", "1", "--exhaustive", "2", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["counterexamples"].as_array().unwrap().is_empty());
    let out = run(&["search", "k-factor", "--k", "1", "--exhaustive", "2", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn sampled_search_is_byte_identical() {
    let args = ["search", "fractional-ab", "--a", "1", "--b", "2", "--sampled", "9", "30", "--seed", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn factor_oracles() {
    let v = json(&run(&["factor", "tutte", "--graph6", "Cs"]));
    assert_eq!(v["result"]["exists"], false);
    let v = json(&run(&["factor", "hall", "--graph6", "Cs", "--left", "0"]));
    assert_eq!(v["result"]["exists"], false);
    let v = json(&run(&["factor", "id", "--graph6", "C~"]));
    assert_eq!(v["result"]["critical"], true);
    let out = run(&["factor", "k-factor", "--graph6", "C~"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--k"));
}

#[test]
fn quotient_and_replay() {
    let out = run(&["quotient", "--extremal-gr", "12", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["matches_closed_form"], true);
    assert_eq!(v["threshold_check"]["lambda_exceeds"], false);
    let out = run(&["quotient", "--graph6", "C~", "--layout", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["replay", "comparison", "--n", "12", "--r", "1", "--s", "4"]).status.code(), Some(0));
    assert_eq!(run(&["replay", "comparison", "--n", "11", "--r", "1", "--s", "4"]).status.code(), Some(1));
    assert_eq!(run(&["replay", "join", "--s", "1", "--parts", "3,3"]).status.code(), Some(0));
}

#[test]
fn text_format_and_usage_errors() {
    let out = run(&["--format", "text", "spectra", "--graph6", "C~"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("lambda1.value: 3")));
    assert_eq!(run(&["spectra", "--graph6", "~~"]).status.code(), Some(2));
    assert_eq!(run(&["spectra", "--graph6", "Bg"]).status.code(), Some(0));
    assert_eq!(run(&["spectra", "--graph6", "B?"]).status.code(), Some(2));
    assert_eq!(run(&["construct"]).status.code(), Some(2));
    assert_eq!(run(&["certify", "deleted", "--graph6", "C~", "--a", "1", "--b", "2"]).status.code(), Some(2));
}
