// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

use std::process::{Command, Output};

use serde_json::Value;

fn tf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tripleforge"))
        .args(args)
        .env_remove("TRIPLEFORGE_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn certify_default_resource_passes() {
    let o = tf(&["certify", "--backend", "tableau"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert!(v["records"].as_array().unwrap().len() >= 10);
}

#[test]
fn dropping_nine_twelve_fails_certification() {
    let o = tf(&["certify", "--backend", "tableau", "--mutate", "drop-edge", "9,12"]);
    assert_eq!(code(&o), 1);
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("(0, 0): Z9 Z10 Z11 X12"), "{stderr}");
}

#[test]
fn emitted_resource_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let p = path.to_str().unwrap();
    let o = tf(&[
        "certify",
        "--backend",
        "graph",
        "--mutate",
        "add-edge",
        "9,10",
        "--emit-resource",
        p,
    ]);
    assert_eq!(code(&o), 1);
    let o = tf(&[
        "certify",
        "--backend",
        "graph",
        "--resource",
        p,
        "--mutate",
        "drop-edge",
        "9,10",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn enumerated_triples_reconstruct_pq() {
    let o = tf(&["triple", "--mode", "enumerate", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = r.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        [
            "p",
            "q",
            "s",
            "share_a",
            "share_b",
            "share_r",
            "share_xor",
            "pq",
            "probability"
        ]
    );
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 32);
    for row in &rows {
        assert_eq!(&row[6], &row[7]);
        assert_eq!(&row[8], "1/32");
    }
}

#[test]
fn same_seed_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = tf(&[
            "--seed",
            "17",
            "--output",
            path.to_str().unwrap(),
            "triple",
            "--count",
            "3",
        ]);
        assert_eq!(code(&o), 0);
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!x.is_empty());
    assert_eq!(x, y);
    let v: Value = serde_json::from_slice(&x).unwrap();
    let seeds: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["seed"].as_u64().unwrap())
        .collect();
    assert_eq!(seeds, [17, 18, 19]);
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_tripleforge"));
        c.env_remove("TRIPLEFORGE_SEED");
        if let Some(e) = env {
            c.env("TRIPLEFORGE_SEED", e);
        }
        if let Some(f) = flag {
            c.args(["--seed", f]);
        }
        c.arg("triple").output().unwrap().stdout
    };
    assert_eq!(run(Some("9"), None), run(None, Some("9")));
}

#[test]
fn audit_r_distances_are_zero() {
    let o = tf(&["audit", "R"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["role"], "R");
    let d = v["distances"].as_object().unwrap();
    assert!(!d.is_empty());
    assert!(d.values().all(|x| x == "0"), "{d:?}");
}

#[test]
fn ot_returns_the_chosen_message() {
    let o = tf(&["ot", "--a0", "0", "--a1", "1", "--b", "1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["output"], 1);
    assert_eq!(v["triples"], 2);
    assert_eq!(v["rounds"], 2);
}

#[test]
fn ot_over_the_measurement_protocol() {
    for source in ["live", "marginal", "dealer", "qkd"] {
        for (a0, a1, b, want) in [("1", "0", "0", 1), ("1", "0", "1", 0)] {
            let o = tf(&[
                "--seed", "3", "ot", "--a0", a0, "--a1", a1, "--b", b, "--source", source,
            ]);
            assert_eq!(code(&o), 0, "{source}");
            assert_eq!(json(&o)["output"], want, "{source}");
        }
    }
}

#[test]
fn ot_log_hides_inputs() {
    let o = tf(&["ot", "--mode", "enumerate", "--source", "marginal"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["only_through_output"], true);
}

#[test]
fn conj_three_inputs() {
    for (inputs, want) in [("1,1,1", 1), ("1,0,1", 0)] {
        let o = tf(&["conj", "--inputs", inputs]);
        assert_eq!(code(&o), 0);
        let v = json(&o);
        assert_eq!(v["output"], want);
        assert_eq!(v["triples"], 3);
        assert_eq!(v["rounds"], 3);
    }
}

#[test]
fn anf_file_is_evaluated() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(
        &path,
        r#"{"terms": [[[1, "x"], [2, "y"]], [[3, "z"]], []], "inputs": {"x": 1, "y": 1, "z": 0}}"#,
    )
    .unwrap();
    let o = tf(&["anf", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["output"], 0);
}

#[test]
fn malformed_anf_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, r#"{"terms": [[[1, "x"]]], "inputs": {}}"#).unwrap();
    assert_eq!(code(&tf(&["anf", path.to_str().unwrap()])), 65);
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(code(&tf(&["anf", path.to_str().unwrap()])), 65);
}

#[test]
fn baselines_flag_the_uncorrected_key_variant() {
    let o = tf(&["baselines"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let by_name: std::collections::BTreeMap<&str, &Value> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["source"].as_str().unwrap(), s))
        .collect();
    assert_eq!(by_name["qkd-as-stated"]["valid"], false);
    for name in ["ideal", "dealer", "qkd-corrected", "measurement"] {
        assert_eq!(by_name[name]["valid"], true, "{name}");
        assert_eq!(by_name[name]["distance_to_ideal"], "0", "{name}");
    }
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["triple", "--count", "0"][..],
        &["audit", "--format", "csv"],
        &["ot", "--mode", "enumerate", "--source", "live"],
        &["certify", "--mutate", "bend-edge", "1,2"],
        &["certify", "--mutate", "drop-edge", "nine"],
        &["conj", "--inputs", "1,2"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&tf(args)), 64, "{args:?}");
    }
}

#[test]
fn missing_files_exit_74() {
    assert_eq!(code(&tf(&["anf", "/nonexistent/f.json"])), 74);
    assert_eq!(code(&tf(&["--output", "/nonexistent/dir/out.json", "triple"])), 74);
}

#[test]
fn bad_mutation_target_is_a_data_error() {
    assert_eq!(
        code(&tf(&["certify", "--backend", "graph", "--mutate", "drop-edge", "1,12"])),
        65
    );
}
