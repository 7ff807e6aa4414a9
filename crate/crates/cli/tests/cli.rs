use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fs_cmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fs"))
        .args(args)
        .env_remove("FS_MAX_N")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    assert_eq!(code(out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn payload(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn cycle_six_against_k24() {
    let r = json(&fs_cmd(&["components", "--x", "cycle:6", "--y", "kbip:2,4"]));
    assert_eq!(r["component_count"], 12);
    assert_eq!(r["n"], 6);
    assert_eq!(r["sizes"].as_array().unwrap().len(), 12);
    assert!(r["representatives"].as_array().unwrap().iter().all(Value::is_u64));
}

#[test]
fn theta_is_the_star_exception() {
    let r = json(&fs_cmd(&["predict", "--y", "theta", "--k", "1"]));
    assert_eq!(r["verdict"], "Disconnected");
    assert_eq!(r["reasons"], serde_json::json!(["ThetaException"]));
}

#[test]
fn size_cap_exit_codes() {
    let out = fs_cmd(&["components", "--x", "kbip:2,10", "--y", "complete:12"]);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());

    let out = Command::new(env!("CARGO_BIN_EXE_fs"))
        .args(["connected", "--x", "cycle:5", "--y", "complete:5"])
        .env("FS_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);

    let out = fs_cmd(&["connected", "--x", "cycle:5", "--y", "complete:5", "--max-n", "13"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&fs_cmd(&["bogus"])), 2);
    assert_eq!(code(&fs_cmd(&["components", "--x", "cycle:6"])), 2);
    assert_eq!(code(&fs_cmd(&["predict", "--y", "theta", "--k", "1", "--frobnicate"])), 2);
    assert_eq!(code(&fs_cmd(&["predict", "--y", "wheel:5", "--k", "1"])), 2);
    assert_eq!(code(&fs_cmd(&["sweep", "--n", "10", "--k", "2", "--p-grid", "0.5", "--trials", "3"])), 2);
    assert_eq!(code(&fs_cmd(&["verify", "--n", "8", "--k", "2"])), 2);
}

#[test]
fn malformed_files_report_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("loop.txt");
    fs::write(&bad, "3 2\n0 1\n0 0\n").unwrap();
    let out = fs_cmd(&["predict", "--y", bad.to_str().unwrap(), "--k", "1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let c5 = dir.path().join("c5.txt");
    fs::write(&c5, "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    let r = json(&fs_cmd(&["predict", "--y", c5.to_str().unwrap(), "--k", "2"]));
    assert_eq!(r["verdict"], "Disconnected");
    assert_eq!(r["inputs"]["y"]["kind"], "edge-list");
    assert_eq!(r["inputs"]["y"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn certificates_validate_or_exit_five() {
    let r = json(&fs_cmd(&["certify", "--x", "cycle:5", "--k", "2", "--sigma", "0", "--u", "0", "--v", "1"]));
    assert_eq!(r["validated"], true);
    assert_eq!(r["moves"].as_array().unwrap().len(), 15);
    assert_eq!(r["start_rank"], 0);

    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("x.g6");
    fs::write(&g6, "E?~w\n").unwrap();
    let x = g6.to_str().unwrap();
    let out = fs_cmd(&["certify", "--x", x, "--k", "3", "--sigma", "1,5,4,0,3,2", "--u", "0", "--v", "2"]);
    assert_eq!(code(&out), 5);

    let out = fs_cmd(&["certify", "--x", "cycle:6", "--k", "3", "--sigma", "0", "--u", "0", "--v", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn swap_factors_is_explicit() {
    let a = json(&fs_cmd(&["components", "--x", "star:7", "--y", "theta"]));
    let b = json(&fs_cmd(&["components", "--x", "star:7", "--y", "theta", "--swap-factors"]));
    assert_eq!(a["component_count"], 6);
    assert_eq!(a["component_count"], b["component_count"]);
    assert_eq!(b["inputs"]["swap_factors"], true);
    assert_eq!(b["inputs"]["x"]["arg"], "star:7");
}

#[test]
fn reports_replay_from_their_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let first = fs_cmd(&["path", "--x", "cycle:5", "--y", "complete:5", "--from", "0", "--to", "4,3,2,1,0", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&first), 0);
    assert!(first.stdout.is_empty());
    let saved: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(saved["found"], true);
    let argv: Vec<String> = serde_json::from_value(saved["argv"].clone()).unwrap();
    let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
    let again = json(&fs_cmd(&argv));
    assert_eq!(payload(saved), payload(again));
    let leftovers: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 1);
}

#[test]
fn verify_and_conjectures_are_clean_at_small_n() {
    let r = json(&fs_cmd(&["verify", "--n", "5", "--k", "2", "--threads", "2"]));
    assert_eq!((r["checked"].as_u64(), r["mismatches"].as_u64()), (Some(21), Some(0)));
    let r = json(&fs_cmd(&["conjectures", "--n-max", "6", "--k", "3"]));
    assert!(r["findings"].as_array().unwrap().iter().all(|f| f["holds"] == true));
}

#[test]
fn verify_reads_a_graph6_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.g6");
    fs::write(&corpus, "Dhc\nD~{\n").unwrap();
    let r = json(&fs_cmd(&["verify", "--n", "5", "--k", "2", "--corpus", corpus.to_str().unwrap()]));
    assert_eq!(r["checked"], 2);
    fs::write(&corpus, "Dhc\nnot graph6 at all\n").unwrap();
    let out = fs_cmd(&["verify", "--n", "5", "--k", "2", "--corpus", corpus.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

fn sweep_csv(dir: &Path, name: &str, threads: &str) -> String {
    let path = dir.join(name);
    let out = fs_cmd(&[
        "sweep", "--n", "40", "--k", "2", "--p-grid", "0.02,0.1,0.3", "--trials", "50", "--seed", "9",
        "--threads", threads, "--out", path.to_str().unwrap(),
    ]);
    let report = json(&out);
    assert_eq!(report["seed"], 9);
    fs::read_to_string(path).unwrap()
}

#[test]
fn sweep_writes_a_reproducible_grid() {
    let dir = tempfile::tempdir().unwrap();
    let a = sweep_csv(dir.path(), "a.csv", "1");
    let b = sweep_csv(dir.path(), "b.csv", "4");
    assert_eq!(a, b);
    let mut lines = a.lines();
    assert_eq!(lines.next(), Some("p,trials,connected,disconnected,unknown,estimate,stderr"));
    assert_eq!(lines.count(), 3);
}
