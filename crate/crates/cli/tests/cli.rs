use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-asep")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn enumerate_two_one_has_one_state() {
    let out = run(&["enumerate", "--L", "2", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"], 1);
}

#[test]
fn verify_four_two_symbolic() {
    let out = run(&["verify", "--L", "4", "--n", "2", "--mode", "symbolic"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["all_hold"], true);
    assert_eq!(doc["checks"]["balance"]["detail"]["restricted_states"], 12);
}

#[test]
fn observables_four_two_numeric() {
    let out = run(&["observables", "--L", "4", "--n", "2", "--rates", "1,2;3,5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["all_equal"], true);
    let edge = doc["rows"].as_array().unwrap().iter().find(|r| r["observable"] == "J_bullet_edge").unwrap().clone();
    assert_eq!(edge["closed_form"], "-11/28");
}

#[test]
fn rates_file_matches_inline() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rates.json");
    fs::write(&path, r#"{"p": [1, "2"], "q": ["3", 5]}"#).unwrap();
    let a = run(&["observables", "--L", "4", "--n", "2", "--rates-file", path.to_str().unwrap()]);
    let b = run(&["observables", "--L", "4", "--n", "2", "--rates", "1,2;3,5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["enumerate", "--L", "2", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["observables", "--L", "4", "--n", "2", "--rates", "1;2"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--L", "4", "--n", "2"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_torus-asep"))
        .args(["enumerate", "--L", "6", "--n", "3"])
        .env("TORUS_ASEP_STATE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn special_and_ta_certificates() {
    let out = run(&["special", "--L", "5", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["all_hold"], true);
    let out = run(&["ta", "--L", "5", "--n", "2", "--I", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["closure"]["closed"], true);
}

#[test]
fn simulate_reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let out = run(&[
            "simulate",
            "--L",
            "4",
            "--n",
            "2",
            "--rates",
            "1,2;3,5",
            "--events",
            "20000",
            "--seed",
            "42",
            "--output",
            d.path().to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    for f in ["manifest.json", "ledger.csv", "estimates.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn generator_triplets_and_manifest() {
    let d = tempfile::tempdir().unwrap();
    let trip = d.path().join("t.csv");
    let man = d.path().join("m.csv");
    let out = run(&[
        "generator",
        "--L",
        "3",
        "--n",
        "2",
        "--output",
        trip.to_str().unwrap(),
        "--manifest",
        man.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let states = fs::read_to_string(&man).unwrap().lines().count() - 1;
    for line in fs::read_to_string(&trip).unwrap().lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert!(f[0].parse::<usize>().unwrap() < states);
        assert!(f[1].parse::<usize>().unwrap() < states);
    }
}

#[test]
fn csv_has_header() {
    let out = run(&["weights", "--L", "4", "--n", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("state,weight\n"));
}
