//! Runs the `qh` binary on the sample documents in `data/`.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn qh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qh"))
        .args(args)
        .output()
        .expect("qh runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "status {:?}, stderr {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is one JSON object")
}

fn arrows(quiver: &Value) -> Vec<(String, u64, u64)> {
    let mut v: Vec<_> = quiver["arrows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| {
            (
                a["label"].as_str().unwrap().to_string(),
                a["src"].as_u64().unwrap(),
                a["tgt"].as_u64().unwrap(),
            )
        })
        .collect();
    v.sort();
    v
}

#[test]
fn triangle_with_its_cycle_contracted() {
    let out = qh(&[
        "mutate",
        "--quiver",
        &data("triangle.json"),
        "--homotopy",
        &data("triangle-cycle.json"),
        "--at",
        "1",
    ]);
    let v = stdout_json(&out);
    assert_eq!(
        arrows(&v["quiver"]),
        vec![("b*".to_string(), 2, 1), ("c*".to_string(), 1, 0)]
    );
    let deleted = &v["steps"][0]["deleted"][0];
    assert_eq!(deleted["delta"], "[bc]");
    assert_eq!(deleted["gamma"], "a");
    assert_eq!(deleted["membership"]["verdict"], "In");
}

#[test]
fn triangle_without_homotopy_keeps_the_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.json");
    let dot_path = dir.path().join("out.dot");
    let out = qh(&[
        "mutate",
        "--quiver",
        &data("triangle.json"),
        "--at",
        "1",
        "--out",
        out_path.to_str().unwrap(),
        "--dot",
        dot_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["quiver"]["arrows"].as_array().unwrap().len(), 4);
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert_eq!(dot.matches(" -> ").count(), 4);
}

#[test]
fn mutation_sequences_are_involutive() {
    let out = qh(&[
        "mutate",
        "--quiver",
        &data("markov.json"),
        "--homotopy",
        &data("markov-h4.json"),
        "--seq",
        "0,0",
    ]);
    let v = stdout_json(&out);
    let original: Value =
        serde_json::from_str(&std::fs::read_to_string(data("markov.json")).unwrap()).unwrap();
    let ends = |a: &Value| {
        let mut e: Vec<_> = a["arrows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| (x["src"].as_u64(), x["tgt"].as_u64()))
            .collect();
        e.sort();
        e
    };
    assert_eq!(ends(&v["quiver"]), ends(&original));
    assert_eq!(v["sequence"], serde_json::json!([0, 0]));
}

#[test]
fn schema_errors_carry_a_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"vertices": 2, "arrows": [{"id": 0, "src": 0, "tgt": "one"}]}"#,
    )
    .unwrap();
    let out = qh(&["mutate", "--quiver", bad.to_str().unwrap(), "--at", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let e = stderr_json(&out);
    assert_eq!(e["error"], "Schema");
    assert_eq!(e["pointer"], "/arrows/0/tgt");

    std::fs::write(&bad, r#"{"vertices": 2, "arrows": [], "colour": 1}"#).unwrap();
    let out = qh(&["export", "--quiver", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "Schema");
}

#[test]
fn domain_errors_exit_with_one() {
    let out = qh(&["mutate", "--quiver", &data("triangle.json"), "--at", "7"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "VertexOutOfRange");

    let out = qh(&["mutate", "--quiver", &data("missing.json"), "--at", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "Io");
}

#[test]
fn unknown_flags_and_targets_are_rejected() {
    let out = qh(&[
        "mutate",
        "--quiver",
        &data("triangle.json"),
        "--vertex",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "Usage");

    let out = qh(&["repro", "no-such-example"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "Usage");

    let out = qh(&[
        "mutate",
        "--quiver",
        &data("triangle.json"),
        "--at",
        "0",
        "--seq",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));

    assert!(qh(&["--help"]).status.success());
}

#[test]
fn klein_orbit_mutation_and_hexagon_loop() {
    let v = stdout_json(&qh(&[
        "orbit-mutate",
        "--cover",
        &data("klein-cover.json"),
        "--at",
        "0",
    ]));
    assert_eq!(v["weakly_admissible"], true);
    assert_eq!(v["loops_at"], serde_json::json!([]));

    let v = stdout_json(&qh(&[
        "orbit-mutate",
        "--cover",
        &data("hexagon-cover.json"),
        "--at",
        "0",
    ]));
    assert_eq!(v["weakly_admissible"], false);
    assert_eq!(v["loops_at"], serde_json::json!([1]));

    let v = stdout_json(&qh(&[
        "check-global",
        "--cover",
        &data("klein-cover.json"),
        "--depth",
        "3",
    ]));
    assert_eq!(v["ok"], true);

    let out = qh(&[
        "check-global",
        "--cover",
        &data("hexagon-cover.json"),
        "--depth",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(stderr_json(&out)["error"], "NotWeaklyAdmissible");
}

#[test]
fn flip_graphs_of_the_punctured_digons() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let v = stdout_json(&qh(&[
        "flip-graph",
        "--tri",
        &data("digon-ii.json"),
        "--dot",
        dot.to_str().unwrap(),
    ]));
    assert_eq!(v["nodes"], 6);
    assert_eq!(v["is_cycle"], true);
    assert_eq!(v["complete"], true);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph"));

    let v = stdout_json(&qh(&["flip-graph", "--tri", &data("digon-i.json")]));
    assert_eq!(v["nodes"], 4);
    assert_eq!(v["is_cycle"], true);
}

#[test]
fn flips_agree_with_mutation() {
    for (tri, boundary) in [
        ("digon-ii.json", "omit"),
        ("digon-i.json", "frozen"),
        ("torus-ii.json", "omit"),
        ("sphere.json", "omit"),
    ] {
        let v = stdout_json(&qh(&[
            "verify-flip-mutation",
            "--tri",
            &data(tri),
            "--boundary",
            boundary,
            "--all-nodes",
        ]));
        assert_eq!(v["failures"], 0, "{tri}");
        assert!(v["flips"].as_u64().unwrap() > 0);
    }
}

#[test]
fn mixed_monogon_reports_its_failing_flips() {
    let out = qh(&[
        "verify-flip-mutation",
        "--tri",
        &data("monogon-i-ii.json"),
        "--all-nodes",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["flips"], 96);
    assert_eq!(v["failures"], 4);
    let bad: Vec<&Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["generators_in"] == false)
        .collect();
    assert_eq!(bad.len(), 4);
    assert!(bad.iter().all(|c| c["quiver_match"] == true));
    assert_eq!(stderr_json(&out)["error"], "FlipMutationMismatch");
}

#[test]
fn single_flip_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.json");
    let twice = dir.path().join("twice.json");
    let out = qh(&[
        "flip",
        "--tri",
        &data("digon-ii.json"),
        "--at",
        "0",
        "--out",
        once.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = qh(&[
        "flip",
        "--tri",
        once.to_str().unwrap(),
        "--at",
        "0",
        "--out",
        twice.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let before = stdout_json(&qh(&["export", "--tri", &data("digon-ii.json")]));
    let after = stdout_json(&qh(&["export", "--tri", twice.to_str().unwrap()]));
    assert_eq!(arrows(&before).len(), arrows(&after).len());
}

#[test]
fn exports() {
    let out = qh(&[
        "export",
        "--quiver",
        &data("markov.json"),
        "--format",
        "dot",
    ]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph \"Q\" {\n"));
    assert_eq!(dot.matches(" -> ").count(), 6);

    let out = qh(&[
        "export",
        "--cover",
        &data("klein-cover.json"),
        "--total",
        "--format",
        "graphml",
    ]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout)
            .unwrap()
            .matches("<edge ")
            .count(),
        24
    );

    let v = stdout_json(&qh(&["export", "--tri", &data("torus-ii.json")]));
    assert_eq!(v["vertices"], 3);
    assert_eq!(v["arrows"].as_array().unwrap().len(), 6);
}

#[test]
fn cluster_exploration() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let v = stdout_json(&qh(&[
        "cluster-explore",
        "--seed",
        &data("klein-seed.json"),
        "--depth",
        "3",
        "--exhaustive",
        "--report",
        report.to_str().unwrap(),
    ]));
    assert_eq!(v["rank"], 3);
    assert_eq!(v["principal"], true);
    assert_eq!(v["findings"], serde_json::json!([]));
    let full: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(
        full["nodes"].as_array().unwrap().len(),
        v["nodes"].as_u64().unwrap() as usize
    );

    let sample = |seed: &str| {
        stdout_json(&qh(&[
            "cluster-explore",
            "--seed",
            &data("two-cycle-seed.json"),
            "--depth",
            "4",
            "--paths",
            "3",
            "--rng-seed",
            seed,
        ]))
    };
    assert_eq!(sample("5"), sample("5"));
    assert_eq!(sample("5")["findings"], serde_json::json!([]));
}

#[test]
fn worked_examples_match_their_golden_files() {
    let out = qh(&["repro", "all"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    let count = text.matches("\"matches_golden\": true").count();
    assert!(count >= 9, "{text}");
    assert!(!text.contains("\"matches_golden\": false"));
}
