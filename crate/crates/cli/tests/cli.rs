//! End-to-end invocations of the compiled binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sagbi-forge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_small_instance_passes_with_json_report() {
    let out = run(&["verify", "--a", "2", "--b", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["a"], 2);
    assert_eq!(report["b"], 3);
    assert_eq!(report["steps"].as_array().unwrap().len(), 6);
    assert!(report["steps"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["pass"] == true));
    assert_eq!(report["dimension"], 6);
    assert_eq!(report["field"], "q");
}

#[test]
fn verify_rejects_out_of_domain_parameters() {
    let out = run(&["verify", "--a", "1", "--b", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_text_format_renders_a_table() {
    let out = run(&["verify", "--a", "2", "--b", "2", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("subduction-criterion"));
    assert!(text.contains("all steps pass"));
}

#[test]
fn verify_budget_of_zero_exits_with_code_3() {
    let out = run(&["verify", "--a", "3", "--b", "3", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn budget_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_sagbi-forge"))
        .args(["verify", "--a", "3", "--b", "3"])
        .env("SAGBI_FORGE_BUDGET_SECS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn dim_of_named_graphs() {
    let out = run(&["dim", "--named", "path:5"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["dimension"], 4);
    assert_eq!(report["bipartite"], true);

    let out = run(&["dim", "--named", "complete:4", "--field", "fp:32003"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["dimension"], 5);
    assert_eq!(report["field"], "fp:32003");
}

#[test]
fn dim_lattice_strategy_on_complete_bipartite() {
    let out = run(&[
        "dim",
        "--named",
        "complete-bipartite:2,3",
        "--strategy",
        "lattice",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["dimension"], 6);
    assert_eq!(report["strategy"], "lattice");
}

#[test]
fn dim_reads_graph_json_files() {
    let dir = std::env::temp_dir();
    let path = dir.join("sagbi_forge_cli_test_c4.json");
    std::fs::write(&path, r#"{"vertices":4,"edges":[[1,2],[2,3],[3,4],[1,4]]}"#).unwrap();
    let out = run(&["dim", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["dimension"], 4);
    std::fs::remove_file(&path).ok();
}

#[test]
fn dim_with_malformed_input_is_a_usage_error() {
    let out = run(&["dim", "--named", "no-such-graph"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["dim", "--named", "g1", "--field", "fp:notaprime"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["dim"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn poset_actions() {
    let out = run(&["poset", "--a", "2", "--b", "2", "count"]);
    assert_eq!(stdout(&out).trim(), "5");

    let out = run(&["poset", "--a", "3", "--b", "4", "graded"]);
    assert_eq!(stdout(&out).trim(), "false");

    let out = run(&["poset", "--a", "2", "--b", "4", "graded"]);
    assert_eq!(stdout(&out).trim(), "true");

    let out = run(&["poset", "--a", "2", "--b", "2", "ideals"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().next().unwrap().contains("{}"));

    let out = run(&["poset", "--a", "2", "--b", "2", "hibi"]);
    assert_eq!(stdout(&out).trim().lines().count(), 1);
}

#[test]
fn sagbi_pass_and_quadrics_only_failure() {
    let out = run(&["sagbi", "--kab", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pass"], true);

    let out = run(&["sagbi", "--kab", "2,2", "--quadrics-only"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pass"], false);
    assert!(report["witness"].as_str().unwrap().len() > 0);
}

#[test]
fn sagbi_writes_report_files() {
    let dir = std::env::temp_dir();
    let path = dir.join("sagbi_forge_cli_test_report.json");
    let out = run(&["sagbi", "--kab", "2,3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["generators"], 9);
    std::fs::remove_file(&path).ok();
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let first = run(&["verify", "--a", "2", "--b", "2"]);
    let second = run(&["verify", "--a", "2", "--b", "2"]);
    let strip_ms = |s: &str| -> String {
        // wall-time fields are the one nondeterministic part of the schema
        s.lines()
            .filter(|l| !l.trim_start().starts_with("\"ms\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip_ms(&stdout(&first)), strip_ms(&stdout(&second)));
}
