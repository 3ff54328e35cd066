use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use ybe_core::corpus::fingerprint;
use ybe_core::{catalog, Permutation, Solution};

fn ybe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write_solution(dir: &Path, name: &str, sol: &Solution) -> String {
    let path = dir.join(name);
    fs::write(&path, sol.to_json()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_solution(dir.path(), "good.json", &catalog::transposition_quandle());
    let out = ybe(&["validate", &good]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"n":2,"r":[[[0,0],[0,1]],[[0,0],[0,1]]]}"#).unwrap();
    let out = ybe(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["flags"]["left_nd"], false);

    let malformed = dir.path().join("malformed.json");
    fs::write(&malformed, "{\"n\": 2,\n \"r\": [").unwrap();
    let out = ybe(&["validate", malformed.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out_of_range = dir.path().join("range.json");
    fs::write(&out_of_range, r#"{"n":1,"r":[[[0,3]]]}"#).unwrap();
    assert_ne!(
        ybe(&["validate", out_of_range.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn analyze_transposition_quandle() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_solution(dir.path(), "q.json", &catalog::transposition_quandle());
    let out = ybe(&["analyze", &file, "--max-degree", "6"]);
    assert!(out.status.success());
    let rep = json(&out);
    assert_eq!(rep["spectrum"]["gk_dimension"], 1);
    assert_eq!(rep["spectrum"]["spec_m"].as_array().unwrap().len(), 3);
    assert_eq!(rep["growth"]["a"].as_array().unwrap().len(), 7);
    assert_eq!(rep["discrepancies"][0]["agree"], false);
    assert_eq!(rep["constants"]["d"], 6);
    // byte-stable
    assert_eq!(
        out.stdout,
        ybe(&["analyze", &file, "--max-degree", "6"]).stdout
    );
}

#[test]
fn analyze_flip_has_binomial_growth() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_solution(dir.path(), "flip.json", &catalog::flip(2));
    let rep = json(&ybe(&["analyze", &file, "--max-degree", "6", "--pretty"]));
    let a: Vec<u64> = rep["growth"]["a"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(a, vec![1, 2, 3, 4, 5, 6, 7]);
    assert_eq!(rep["growth"]["m"], rep["growth"]["a"]);
    assert_eq!(rep["spectrum"]["gk_dimension"], 2);
}

#[test]
fn analyze_five_point_rack_identities() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_solution(dir.path(), "five.json", &catalog::five_point_rack());
    let rep = json(&ybe(&[
        "analyze",
        &file,
        "--max-degree",
        "4",
        "--char",
        "0,2,3",
    ]));
    let ids = rep["identities"].as_array().unwrap();
    let catalog_ids: Vec<&Value> = ids
        .iter()
        .filter(|r| r["example"] == "five-point-rack")
        .collect();
    assert_eq!(catalog_ids.len(), 9);
    assert!(ids.iter().all(|r| r["status"] == "pass"), "{ids:?}");
    assert_eq!(rep["spectrum"]["gk_dimension"], 3);
}

#[test]
fn analyze_rejects_invalid_characteristic_and_solution() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_solution(dir.path(), "flip.json", &catalog::flip(2));
    assert!(!ybe(&["analyze", &file, "--char", "4"]).status.success());
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"n":2,"r":[[[0,0],[0,1]],[[0,0],[0,1]]]}"#).unwrap();
    assert!(!ybe(&["analyze", bad.to_str().unwrap()]).status.success());
}

fn ids_of(index: &Value) -> Vec<String> {
    index["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["id"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn enumerate_small_corpora() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one");
    let index = json(&ybe(&[
        "enumerate",
        "--n",
        "1",
        "--out",
        one.to_str().unwrap(),
    ]));
    assert_eq!(index["solutions"].as_array().unwrap().len(), 1);
    assert_eq!(fs::read_dir(&one).unwrap().count(), 2);

    let two = dir.path().join("two");
    let out = ybe(&["enumerate", "--n", "2", "--out", two.to_str().unwrap()]);
    let ids = ids_of(&json(&out));
    let sigma = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
    assert!(ids.contains(&fingerprint(&catalog::flip(2))));
    assert!(ids.contains(&fingerprint(&catalog::permutation_solution(&sigma))));
    let again = ybe(&["enumerate", "--n", "2", "--out", two.to_str().unwrap()]);
    assert_eq!(out.stdout, again.stdout);

    let racks = dir.path().join("racks");
    let ids = ids_of(&json(&ybe(&[
        "enumerate",
        "--n",
        "3",
        "--filter",
        "rack-form",
        "--out",
        racks.to_str().unwrap(),
    ])));
    assert!(ids.contains(&fingerprint(&catalog::transposition_quandle())));
    assert!(!ids.contains(&fingerprint(&catalog::transposition_quandle_dual())));

    let fixed = dir.path().join("all3");
    let ids = ids_of(&json(&ybe(&[
        "enumerate",
        "--n",
        "3",
        "--out",
        fixed.to_str().unwrap(),
    ])));
    assert!(ids.contains(&fingerprint(&catalog::transposition_quandle())));
    assert!(ids.contains(&fingerprint(&catalog::transposition_quandle_dual())));

    assert!(!ybe(&[
        "enumerate",
        "--n",
        "5",
        "--out",
        dir.path().join("x").to_str().unwrap()
    ])
    .status
    .success());
    assert!(!ybe(&[
        "enumerate",
        "--n",
        "2",
        "--filter",
        "bogus",
        "--out",
        dir.path().join("y").to_str().unwrap()
    ])
    .status
    .success());
}

#[test]
fn sweeps_over_small_corpora() {
    let dir = tempfile::tempdir().unwrap();
    for n in 1..=3 {
        let sub = dir.path().join(format!("n{n}"));
        assert!(ybe(&[
            "enumerate",
            "--n",
            &n.to_string(),
            "--out",
            sub.to_str().unwrap()
        ])
        .status
        .success());
        for suite in [
            "involutive-iff-gk-n",
            "spectrum-bijection",
            "spectrum-m",
            "cocycle-roundtrip",
            "rack-solution",
            "sigma-formulas",
        ] {
            let rep = json(&ybe(&["sweep", sub.to_str().unwrap(), "--suite", suite]));
            assert_eq!(
                rep["failures"].as_array().unwrap().len(),
                0,
                "{suite} n={n}: {rep}"
            );
            assert!(rep["solutions"].as_u64().unwrap() > 0);
        }
    }
    let empty = dir.path().join("empty");
    fs::create_dir(&empty).unwrap();
    let rep = json(&ybe(&[
        "sweep",
        empty.to_str().unwrap(),
        "--suite",
        "cocycle-roundtrip",
    ]));
    assert_eq!(rep["solutions"], 0);
    assert_eq!(rep["failures"].as_array().unwrap().len(), 0);
    assert!(
        !ybe(&["sweep", empty.to_str().unwrap(), "--suite", "unknown"])
            .status
            .success()
    );
}
