use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn sandpile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sandpile"))
        .args(args)
        .env_remove("SANDPILE_BRUTE_CAP")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn factors(v: &Value) -> Vec<&str> {
    v["invariant_factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect()
}

#[test]
fn de_bruijn_four_three() {
    let v = json(&sandpile(&["db", "4", "3"]));
    assert_eq!(factors(&v["sandpile"]), ["4"]);
    assert_eq!(factors(&v["sand_dune"]), ["2", "8"]);
    assert_eq!(v["spanning_trees"], "4");
    assert_eq!(v["family"], "de_bruijn");
    assert_eq!(v["agrees"], true);
}

#[test]
fn kautz_and_consecutive() {
    let v = json(&sandpile(&["kautz", "3", "2", "--root", "2"]));
    assert_eq!(factors(&v["sandpile"]), ["3"]);
    assert_eq!(v["family"], "kautz");
    let c = json(&sandpile(&["consecutive", "2", "4", "2", "0"]));
    assert_eq!(factors(&c["sandpile"]), ["2"]);
    assert_eq!(c["method"], "snf");
}

#[test]
fn snf_of_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "2 2\n2 4\n4 2\n").unwrap();
    let v = json(&sandpile(&["snf", f.path().to_str().unwrap()]));
    assert_eq!(factors(&v), ["2", "6"]);
    assert_eq!(v["rank"], 2);
}

#[test]
fn circulant_methods_agree() {
    let closed = json(&sandpile(&["circulant", "--n", "6", "--q", "4", "--restricted", "--mod-x"]));
    let brute = json(&sandpile(&["circulant", "--n", "6", "--q", "4", "--restricted", "--mod-x", "--brute"]));
    assert_eq!(closed["group"], brute["group"]);
    assert_eq!(closed["method"], "torsion_counts");
    assert_eq!(brute["method"], "brute");
    let full = json(&sandpile(&["circulant", "--n", "5", "--q", "3", "--brute"]));
    let full_closed = json(&sandpile(&["circulant", "--n", "5", "--q", "3"]));
    assert_eq!(full["group"], full_closed["group"]);
    assert_eq!(full_closed["method"], "closed_form");
}

#[test]
fn brute_cap_from_flag_and_environment() {
    let out = sandpile(&["circulant", "--n", "10", "--q", "3", "--brute", "--cap", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap of 1000"));
    let out = Command::new(env!("CARGO_BIN_EXE_sandpile"))
        .args(["circulant", "--n", "10", "--q", "3", "--brute"])
        .env("SANDPILE_BRUTE_CAP", "500")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap of 500"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["db", "4"][..],
        &["nonsense"],
        &["snf", "/nonexistent/matrix.txt"],
        &["circulant", "--n", "4", "--q", "6"],
        &["db", "0", "3"],
        &["consecutive", "2", "4", "8", "0"],
    ] {
        let out = sandpile(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    let mut child = Command::new(env!("CARGO_BIN_EXE_sandpile"))
        .args(["snf", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"2 2\n1 2\n").unwrap();
    assert_eq!(child.wait_with_output().unwrap().status.code(), Some(2));
}

#[test]
fn verify_small_sweep() {
    let out = sandpile(&["verify", "--n-max", "10", "--d-max", "4", "--cap", "4096"]);
    let v = json(&out);
    assert_eq!(v["agrees"], true);
    assert_eq!(v["failure_count"], 0);
    assert!(v["checks"].as_u64().unwrap() > 100);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--n-max", "8", "--d-max", "3", "--cap", "1024"];
    assert_eq!(sandpile(&args).stdout, sandpile(&args).stdout);
    assert_eq!(sandpile(&["db", "12", "4"]).stdout, sandpile(&["db", "12", "4"]).stdout);
}

#[test]
fn timing_is_opt_in() {
    let v = json(&sandpile(&["db", "4", "3"]));
    assert!(v.get("elapsed_ms").is_none());
    let t = json(&sandpile(&["db", "4", "3", "--timing"]));
    assert!(t["elapsed_ms"].is_u64());
}
