use std::path::PathBuf;
use std::process::{Command, Output};

use coset_core::cli::{AnalysisReport, SpecDocument};
use coset_core::corpus::{disconnected_example, paper_example};
use coset_core::theorems::HypothesisReport;
use serde_json::Value;

struct Workspace {
    dir: PathBuf,
}

impl Workspace {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("cosetconn-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Self { dir }
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let path = self.dir.join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_str().unwrap().to_string()
    }
}

impl Drop for Workspace {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.dir);
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosetconn"))
        .args(args)
        .env_remove("COSET_ENUM_CAP")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn paper_spec(ws: &Workspace) -> String {
    ws.file(
        "paper.json",
        r#"{"degree": 4, "group_generators": ["(1 2)", "(1 2 3 4)"],
            "connection_set": [{"label": "a", "perm": "(1 2)"},
                               {"label": "b", "perm": "(1 2 3 4)"},
                               {"label": "ba", "perm": "(2 3 4)"}]}"#,
    )
}

#[test]
fn paper_spec_file_matches_the_corpus_example() {
    let ws = Workspace::new("match");
    let text = std::fs::read_to_string(paper_spec(&ws)).unwrap();
    let from_file = SpecDocument::parse(&text).unwrap().build(50_000).unwrap();
    let direct = coset_core::coset::CosetDigraph::build(paper_example(4)).unwrap();
    assert_eq!(from_file.graph(), direct.graph());
}

#[test]
fn analyze_paper_example() {
    let ws = Workspace::new("analyze");
    let out = run(&["analyze", &paper_spec(&ws)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kappa"]["oracle"], 2);
    assert_eq!(v["kappa"]["group_theoretic"], 2);
    assert_eq!(v["kappa"]["agree"], true);
    assert_eq!(v["lambda"], 3);
    assert_eq!(
        v["atoms"]["transpose"]["bruteforce"]["base_atom"],
        serde_json::json!(["()", "(1 2)"])
    );
    assert!(v.get("timings").is_none());
    assert!(String::from_utf8_lossy(&out.stderr).contains("κ = 2"));
}

#[test]
fn analyze_cp_family() {
    let ws = Workspace::new("cp");
    let out = run(&[
        "analyze",
        &ws.file("cp.json", r#"{"family": "cp", "n": 4, "k": 2}"#),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["instance"]["vertex_count"], 12);
    assert_eq!(v["instance"]["degree"], 3);
    assert_eq!(v["kappa"]["oracle"], 3);
    assert_eq!(v["lambda"], 3);
}

#[test]
fn analyze_disconnected() {
    let ws = Workspace::new("disc");
    let doc = SpecDocument::from_spec(&disconnected_example());
    let out = run(&[
        "analyze",
        &ws.file("d.json", &serde_json::to_string(&doc).unwrap()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["instance"]["connected"], false);
    assert_eq!(v["instance"]["components"].as_array().unwrap().len(), 6);
    assert!(v.get("kappa").is_none());
    assert!(v.get("lambda").is_none());
}

#[test]
fn reports_round_trip_byte_identically() {
    let ws = Workspace::new("rt");
    let spec = paper_spec(&ws);
    let out = run(&["analyze", &spec, "--timings"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: AnalysisReport = serde_json::from_str(&text).unwrap();
    assert!(report.timings.is_some());
    assert_eq!(format!("{}\n", report.to_json()), text);

    let out = run(&["check", "decomposition", &spec, "--partition", "a|b,ba"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: HypothesisReport = serde_json::from_str(&text).unwrap();
    assert_eq!(
        format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
        text
    );
}

#[test]
fn check_decomposition_exit_codes() {
    let ws = Workspace::new("dec");
    let cp = ws.file("cp.json", r#"{"family": "cp", "n": 5, "k": 2}"#);
    let out = run(&[
        "check",
        "decomposition",
        &cp,
        "--partition",
        "γ(2),γ(3)|γ(4)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["applicable"], true);
    assert_eq!(v["implied_bound"], 4);
    assert_eq!(v["theorem_id"], "decomposition");

    let out = run(&[
        "check",
        "decomposition",
        &paper_spec(&ws),
        "--partition",
        "a|b,ba",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["applicable"], false);
    assert_eq!(v["hypotheses"][1]["witness"], "(b, ba)");

    let out = run(&[
        "check",
        "decomposition",
        &cp,
        "--partition",
        "γ(2)|γ(3)|γ(4)",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["check", "decomposition", &cp, "--partition", "γ(2)|γ(9)"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_other_theorems() {
    let ws = Workspace::new("thm");
    let paper = paper_spec(&ws);
    let cp = ws.file("cp.json", r#"{"family": "cp", "n": 6, "k": 2}"#);
    assert_eq!(run(&["check", "edgec", &paper]).status.code(), Some(0));
    assert_eq!(run(&["check", "edgec", &cp]).status.code(), Some(0));
    assert_eq!(run(&["check", "corollary1_1", &cp]).status.code(), Some(0));
    assert_eq!(run(&["check", "corollary1", &paper]).status.code(), Some(3));
    assert_eq!(
        run(&["check", "hierarchical_gen", &cp]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&[
            "check",
            "hierarchical_gen",
            &cp,
            "--order",
            "γ(2),γ(3),γ(4),γ(5)"
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run(&["check", "hierarchical_gen", &cp, "--order", "γ(2),γ(3)"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["check", "hierarchical_cayley", &cp]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["check", "hierarchical_cayley", &paper]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["check", "no_such_theorem", &paper]).status.code(),
        Some(1)
    );

    let d5 = ws.file(
        "d5.json",
        r#"{"degree": 5, "group_generators": ["(1 2 3 4 5)", "(2 5)(3 4)"],
            "connection_set": [{"label": "r", "perm": "(1 2 3 4 5)"},
                               {"label": "f", "perm": "(2 5)(3 4)"},
                               {"label": "r^-1", "perm": "(1 5 4 3 2)"}]}"#,
    );
    let out = run(&[
        "check",
        "hierarchical_gen_c",
        &d5,
        "--order",
        "r,f",
        "--sprime",
        "r^-1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["computed_kappa"], 3);
}

#[test]
fn export_formats() {
    let ws = Workspace::new("export");
    let z4 = ws.file(
        "z4.json",
        r#"{"degree": 4, "group_generators": ["(1 2 3 4)"], "connection_set": [{"perm": "(1 2 3 4)"}]}"#,
    );
    let out = run(&["export", &z4, "--format", "edges"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.ends_with(" (1 2 3 4)")));
    let dot = String::from_utf8(run(&["export", &z4, "--format", "dot"]).stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 4);

    let cp = ws.file("cp.json", r#"{"family": "cp", "n": 4, "k": 2}"#);
    let a = run(&["export", &cp, "--format", "dot"]);
    let b = run(&["export", &cp, "--format", "dot"]);
    assert_eq!(a.stdout, b.stdout);
    let dot = String::from_utf8(a.stdout).unwrap();
    assert_eq!(dot.matches(" -> ").count(), 36);
    assert_eq!(
        dot.lines()
            .filter(|l| l.contains("[label=") && !l.contains("->"))
            .count(),
        12
    );
    assert_eq!(
        run(&["export", &cp, "--format", "png"]).status.code(),
        Some(1)
    );
}

#[test]
fn cp_command() {
    let out = run(&["cp", "--n", "4", "--k", "2", "--emit-spec"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = SpecDocument::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(doc.build(50_000).unwrap().vertex_count(), 12);

    let out = run(&["cp", "--n", "5", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["kappa"]["oracle"], 4);
    assert_eq!(run(&["cp", "--n", "3", "--k", "3"]).status.code(), Some(1));
}

#[test]
fn input_errors() {
    let ws = Workspace::new("bad");
    assert_eq!(
        run(&["analyze", &ws.file("a.json", "{not json")])
            .status
            .code(),
        Some(1)
    );
    let bad_cycle = ws.file(
        "b.json",
        r#"{"degree": 3, "group_generators": ["(1 2 4)"], "connection_set": [{"perm": "(1 2)"}]}"#,
    );
    assert_eq!(run(&["analyze", &bad_cycle]).status.code(), Some(1));
    let in_h = ws.file(
        "c.json",
        r#"{"degree": 3, "group_generators": ["(1 2 3)"], "subgroup_generators": ["(1 2 3)"],
            "connection_set": [{"perm": "(1 3 2)"}]}"#,
    );
    assert_eq!(run(&["analyze", &in_h]).status.code(), Some(1));
    assert_eq!(
        run(&["analyze", "/nonexistent/spec.json"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn enumeration_cap_from_environment() {
    let ws = Workspace::new("cap");
    let spec = ws.file("cp.json", r#"{"family": "cp", "n": 5, "k": 2}"#);
    let out = Command::new(env!("CARGO_BIN_EXE_cosetconn"))
        .args(["analyze", &spec])
        .env("COSET_ENUM_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap of 10"));
}

#[test]
fn oracle_is_skipped_beyond_the_envelope() {
    let out = run(&["cp", "--n", "7", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["instance"]["vertex_count"], 2520);
    assert!(v["kappa"].get("oracle").is_none());
    assert!(v["kappa"].get("agree").is_none());
    assert_eq!(v["kappa"]["group_theoretic"], 6);
    assert_eq!(v["lambda"], 6);
}
