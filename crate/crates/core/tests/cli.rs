//! End-to-end tests of the `etsemi` binary: exit-code contract, JSON
//! shapes, determinism and golden comparison.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn etsemi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etsemi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn etsemi_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etsemi"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

#[test]
fn construct_emits_graph_with_labels() {
    let out = etsemi(&["construct", "wreath", "--n", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    assert_eq!(value["n"], 10);
    assert_eq!(value["edges"].as_array().unwrap().len(), 20);
    assert_eq!(value["vertex_labels"][0], "(0,0)");

    // n below the family minimum is a usage error
    let bad = etsemi(&["construct", "wreath", "--n", "2"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn construct_dd_from_file_round_trips() {
    let dir = tempdir();
    let k5 = dir.join("k5.json");
    let out = etsemi(&["construct", "complete-bipartite", "--m", "4", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&k5, out.stdout).unwrap();
    let dd = etsemi(&["construct", "dd", "--base", k5.to_str().unwrap(), "--json"]);
    assert_eq!(dd.status.code(), Some(0));
    let value = stdout_json(&dd);
    assert_eq!(value["n"], 32); // 16 edges + 2·8 pair vertices
}

#[test]
fn classify_emits_transitivity_report() {
    let dir = tempdir();
    let graph = dir.join("k34.json");
    let out = etsemi(&["construct", "complete-bipartite", "--m", "3", "--n", "4"]);
    std::fs::write(&graph, out.stdout).unwrap();
    let report = etsemi(&["classify", "--graph", graph.to_str().unwrap(), "--json"]);
    assert_eq!(report.status.code(), Some(0));
    let value = stdout_json(&report);
    assert_eq!(value["edge_transitive"], true);
    assert_eq!(value["vertex_transitive"], false);
    assert_eq!(value["get_case"], "BipartiteBiOrbit");
}

#[test]
fn semireg_definitive_none_exits_zero() {
    let dir = tempdir();
    let graph = dir.join("k34.json");
    let out = etsemi(&["construct", "complete-bipartite", "--m", "3", "--n", "4"]);
    std::fs::write(&graph, out.stdout).unwrap();
    let result = etsemi(&["semireg", "--graph", graph.to_str().unwrap(), "--json"]);
    assert_eq!(result.status.code(), Some(0));
    let value = stdout_json(&result);
    assert_eq!(value["outcome"], "no-semiregular");
    assert!(value.get("certificate").is_none());
}

#[test]
fn semireg_certificate_and_parts() {
    let dir = tempdir();
    let graph = dir.join("w8.json");
    let out = etsemi(&["construct", "wreath", "--n", "8"]);
    std::fs::write(&graph, out.stdout).unwrap();

    let plain = etsemi(&["semireg", "--graph", graph.to_str().unwrap(), "--json"]);
    assert_eq!(plain.status.code(), Some(0));
    let value = stdout_json(&plain);
    assert!(value["outcome"].as_str().unwrap().starts_with("semiregular:"));

    let parts = etsemi(&["semireg", "--graph", graph.to_str().unwrap(), "--parts", "--json"]);
    assert_eq!(parts.status.code(), Some(0));
    let value = stdout_json(&parts);
    assert_eq!(value["outcome"], "part-preserving-semiregular:2");
    assert_eq!(value["certificate"]["cycle_length"], 2);
}

#[test]
fn env_cap_turns_results_inconclusive() {
    let dir = tempdir();
    let graph = dir.join("k34.json");
    let out = etsemi(&["construct", "complete-bipartite", "--m", "3", "--n", "4"]);
    std::fs::write(&graph, out.stdout).unwrap();
    let result = etsemi_with_env(
        &["semireg", "--graph", graph.to_str().unwrap()],
        "ETSEMI_CAP",
        "10",
    );
    assert_eq!(result.status.code(), Some(3));
}

#[test]
fn verify_exit_codes_match_the_reports() {
    let ok = etsemi(&["verify", "lemma41", "--n", "3", "--json"]);
    assert_eq!(ok.status.code(), Some(0));
    let value = stdout_json(&ok);
    assert_eq!(value["counters"]["group_order"], 32);

    // the second construction carries the documented defect: exit 2
    let red = etsemi(&["verify", "lemma42", "--n", "2", "--json"]);
    assert_eq!(red.status.code(), Some(2));
    let value = stdout_json(&red);
    assert_eq!(value["counters"]["group_order"], 128);

    let usage = etsemi(&["verify", "lemma41", "--n", "1"]);
    assert_eq!(usage.status.code(), Some(1));
}

#[test]
fn quotient_command_reports_orders() {
    let dir = tempdir();
    let graph = dir.join("c6.txt");
    std::fs::write(&graph, "6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n").unwrap();
    let gens = dir.join("r3.json");
    std::fs::write(&gens, r#"{"domain_size":6,"generators":[[3,4,5,0,1,2]]}"#).unwrap();
    let out = etsemi(&[
        "quotient",
        "--graph",
        graph.to_str().unwrap(),
        "--normal-gens",
        gens.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    assert_eq!(value["kernel_order"], 2);
    assert_eq!(value["induced_order"], 6);
    assert_eq!(value["blocks"].as_array().unwrap().len(), 3);
}

#[test]
fn corpus_exit_codes_and_golden() {
    let sharpness = corpus_dir().join("sharpness.json");
    let ok = etsemi(&["corpus", sharpness.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    // a row whose expectation contradicts the actual outcome fails the run
    let dir = tempdir();
    let bad_manifest = dir.join("bad.json");
    std::fs::write(
        &bad_manifest,
        r#"[{"name": "k33", "graph": "k33", "expect": "no-semiregular", "seed": 1}]"#,
    )
    .unwrap();
    let red = etsemi(&["corpus", bad_manifest.to_str().unwrap()]);
    assert_eq!(red.status.code(), Some(2));

    let golden = corpus_dir().join("golden/sharpness.jsonl");
    let compared = etsemi(&[
        "corpus",
        sharpness.to_str().unwrap(),
        "--golden",
        golden.to_str().unwrap(),
    ]);
    assert_eq!(compared.status.code(), Some(0));

    // a wrong golden is rejected
    let other = corpus_dir().join("golden/cubic.jsonl");
    let mismatch = etsemi(&[
        "corpus",
        sharpness.to_str().unwrap(),
        "--golden",
        other.to_str().unwrap(),
    ]);
    assert_eq!(mismatch.status.code(), Some(2));

    let missing = etsemi(&["corpus", "no-such-manifest.json"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn corpus_reports_are_deterministic() {
    let sharpness = corpus_dir().join("sharpness.json");
    let first = etsemi(&["corpus", sharpness.to_str().unwrap()]);
    let second = etsemi(&["corpus", sharpness.to_str().unwrap()]);
    let mask = |raw: &[u8]| -> Vec<serde_json::Value> {
        String::from_utf8_lossy(raw)
            .lines()
            .map(|line| {
                let mut v: serde_json::Value = serde_json::from_str(line).unwrap();
                v["timing_ms"] = 0.into();
                v
            })
            .collect()
    };
    assert_eq!(mask(&first.stdout), mask(&second.stdout));
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "etsemi-cli-test-{}-{}",
        std::process::id(),
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .unwrap()
            .as_nanos()
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
