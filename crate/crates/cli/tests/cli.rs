use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn quasivar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasivar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

/// Writes a catalog algebra to a file and returns its path.
fn catalog_file(name: &str) -> String {
    let path = scratch(&format!("{name}.json"));
    let o = quasivar(&["catalog", name, "--out", &path]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn psc_of_c4_exits_zero() {
    let c4 = catalog_file("c4");
    let o = quasivar(&["psc", "--gen", &c4]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("psc: yes"));
}

#[test]
fn jep_of_two_and_s3_exits_one_with_a_replayed_witness() {
    let (two, s3) = (catalog_file("two"), catalog_file("s3"));
    let o = quasivar(&["jep", "--gen", &two, "--gen", &s3, "--json"]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["verdict"]["answer"], "No");
    assert_eq!(r["verdict"]["witness"]["kind"], "jep_failure");
    assert_eq!(r["replay"]["replay"], "verified");
}

#[test]
fn reports_carry_version_and_digests() {
    let two = catalog_file("two");
    let o = quasivar(&["valid", "--gen", &two, "x ^ y <= x", "--json"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["schema"], 1);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["command"], "valid");
    let inputs = r["inputs"].as_array().unwrap();
    assert_eq!(inputs.len(), 2);
    let digest = inputs[0]["sha256"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
    // the same bytes under a catalog name digest identically
    let o = quasivar(&["valid", "--gen", "two", "x ^ y <= x", "--json"]);
    let r2: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r2["inputs"][0]["sha256"], digest);
}

#[test]
fn counterexamples_replay() {
    let o = quasivar(&["valid", "--gen", "s3", "x * x = x => x = e", "--json"]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["verdict"]["witness"]["kind"], "counter_assignment");
    assert_eq!(r["replay"]["replay"], "verified");
}

#[test]
fn output_does_not_depend_on_threads() {
    let run = |t: &str| {
        let o = quasivar(&["sc", "--gen", "two", "--gen", "s3", "--threads", t, "--json"]);
        let mut r: Value = serde_json::from_str(&stdout(&o)).unwrap();
        r["elapsed_ms"] = Value::Null;
        (code(&o), r)
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn errors_exit_three() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"size\": 2}").unwrap();
    assert_eq!(code(&quasivar(&["psc", "--gen", &bad])), 3);
    assert_eq!(code(&quasivar(&["psc", "--gen", "no-such-algebra"])), 3);
    assert_eq!(code(&quasivar(&["valid", "--gen", "two", "x = "])), 3);
    assert_eq!(code(&quasivar(&["no-such-verb"])), 3);
    let o = quasivar(&["valid", "--gen", "two", "x = \n y $"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:"));
}

#[test]
fn posets_round_trip_through_up_and_dual() {
    let up = scratch("up-p6.json");
    assert_eq!(code(&quasivar(&["up", "p6", "--out", &up])), 0);
    let o = quasivar(&["dual", &up, "--json"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["result"]["size"], 6);
    let o = quasivar(&["hat", "k3", "--json"]);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r["result"]["size"].as_u64().unwrap() > 8);
}

#[test]
fn structural_incompleteness_of_the_up_set_algebras() {
    let (a, b) = (scratch("up-hat-p6.json"), scratch("up-hat-k3.json"));
    let hp6 = scratch("hat-p6.json");
    let hk3 = scratch("hat-k3.json");
    assert_eq!(code(&quasivar(&["hat", "p6", "--out", &hp6])), 0);
    assert_eq!(code(&quasivar(&["hat", "k3", "--out", &hk3])), 0);
    assert_eq!(code(&quasivar(&["up", &hp6, "--out", &a])), 0);
    assert_eq!(code(&quasivar(&["up", &hk3, "--out", &b])), 0);
    let o = quasivar(&["sc", "--gen", &a, "--gen", &b, "--json"]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["verdict"]["witness"]["kind"], "sc_refutation");
    assert_eq!(r["verdict"]["witness"]["algebra"]["size"], 10);
    assert_eq!(r["replay"]["replay"], "verified");
}

#[test]
fn verify_paper_prints_a_matrix() {
    let o = quasivar(&["verify-paper", "--only", "1", "--only", "6", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("seed 7"));
    assert!(out.contains("[PASS]  1"));
    assert!(out.contains("[PASS]  6"));
    assert!(out.contains("2/2 criteria passed"));
}
