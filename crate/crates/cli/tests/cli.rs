use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const Z2: &str = r#"{"field":"Q","F":["1","0","0"],"G":["0","0","1"]}"#;
const LATTES: &str = r#"{"field":"Q","F":["1","0","0","-8","0"],"G":["0","4","0","0","4"]}"#;
const TATE: &str = r#"{"field":"Q(sqrt:29)",
  "F":[[1,0],[0,0],[-1,-5],[-52,-270],[0,0]],
  "G":[[0,0],[4,0],[1,0],[2,10],[26,135]]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_canheight"))
}

fn file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn height_of_two_under_squaring() {
    let dir = tempfile::tempdir().unwrap();
    let map = file(dir.path(), "z2.json", Z2);
    let v = json_of(&run(&["height", "--map", s(&map), "--point", "2/1"]));
    let h = v["result"]["value"].as_f64().unwrap();
    assert!((h - 2f64.ln()).abs() < 1e-10);
    assert!(v["result"]["error"].as_f64().unwrap() <= 1e-10);
    assert_eq!(v["seed"], 0);
    assert!(v["map_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn tate_resultant_is_unit() {
    let dir = tempfile::tempdir().unwrap();
    let map = file(dir.path(), "tate.json", TATE);
    let v = json_of(&run(&["resultant", "--map", s(&map)]));
    assert_eq!(v["result"]["unit"], true);
    let norm = v["result"]["norm"].as_str().unwrap();
    assert!(norm == "1" || norm == "-1");
    assert!(v["result"]["bad_primes"].as_array().unwrap().is_empty());
}

#[test]
fn lattes_bad_primes() {
    let dir = tempfile::tempdir().unwrap();
    let map = file(dir.path(), "l.json", LATTES);
    let v = json_of(&run(&["resultant", "--map", s(&map)]));
    let primes: Vec<u64> = v["result"]["bad_primes"].as_array().unwrap().iter().map(|p| p.as_u64().unwrap()).collect();
    assert!(primes.iter().all(|p| *p == 2 || *p == 3));
}

#[test]
fn zero_divisor_has_degree_zero() {
    let dir = tempfile::tempdir().unwrap();
    let z = file(dir.path(), "zeta0.json", r#"{"entries": []}"#);
    let v = json_of(&run(&["speck", "degree", "--input", s(&z)]));
    assert_eq!(v["result"]["degree"], "0");
    assert_eq!(v["result"]["value"].as_f64(), Some(0.0));
}

#[test]
fn principalize_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let z = file(
        dir.path(),
        "z.json",
        r#"{"entries": [{"place": "inf", "value": "2*log(3)"}, {"place": 3, "value": "-2*log(3)"}]}"#,
    );
    let v = json_of(&run(&["speck", "principalize", "--input", s(&z)]));
    assert_eq!(v["result"]["verdict"], "principal");
    let z = file(dir.path(), "w.json", r#"{"entries": [{"place": "inf", "value": 1}]}"#);
    let v = json_of(&run(&["speck", "principalize", "--input", s(&z)]));
    assert_eq!(v["result"]["verdict"], "not_principal");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let prop = file(dir.path(), "p.json", r#"{"F":["1","0"],"G":["2","0"]}"#);
    let out = run(&["height", "--map", s(&prop), "--point", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());

    let bad = file(dir.path(), "b.json", "{ not json");
    assert_eq!(run(&["resultant", "--map", s(&bad)]).status.code(), Some(2));

    let z2 = file(dir.path(), "z2.json", Z2);
    assert_eq!(run(&["height", "--map", s(&z2), "--point", "1/0/2"]).status.code(), Some(2));
    assert_eq!(run(&["height", "--map", s(&z2), "--point", "2", "--tol", "-1"]).status.code(), Some(2));
}

#[test]
fn julia_outputs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let map = file(dir.path(), "z2.json", Z2);
    let mut csvs = Vec::new();
    let mut ppms = Vec::new();
    let mut stdouts = Vec::new();
    let csv = dir.path().join("c.csv");
    let ppm = dir.path().join("c.ppm");
    for _ in 0..2 {
        let out = run(&[
            "julia", "--map", s(&map), "--depth", "7", "--per-node", "2", "--seed", "42", "--out", s(&csv), "--ppm",
            s(&ppm), "--res", "64",
        ]);
        assert!(out.status.success());
        stdouts.push(out.stdout);
        csvs.push(fs::read(&csv).unwrap());
        ppms.push(fs::read(&ppm).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    assert_eq!(ppms[0], ppms[1]);
    assert_eq!(stdouts[0], stdouts[1]);

    let text = String::from_utf8(csvs[0].clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,tag,depth"));
    assert_eq!(lines.count(), 2 + 4 + 8 + 16 + 32 + 64 + 128);

    // P6 header, then exactly res * res RGB triples
    let ppm = &ppms[0];
    let header = b"P6\n64 64\n255\n";
    assert!(ppm.starts_with(header));
    assert_eq!(ppm.len(), header.len() + 64 * 64 * 3);
}

#[test]
fn torsion_cloud_feeds_the_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let map = file(dir.path(), "l.json", LATTES);
    let csv = dir.path().join("t.csv");
    let v = json_of(&run(&["torsion", "--a", "0", "--b", "1", "--n", "8", "--out", s(&csv)]));
    assert!(v["result"]["points"].as_u64().unwrap() >= 50);

    let v = json_of(&run(&["sweep", "--map", s(&map), "--cloud", s(&csv)]));
    let r = &v["result"];
    assert!(r["candidates"].as_u64().unwrap() >= 10);
    assert_eq!(r["candidates"], r["rejected"]);
    assert!(r["survivors"].as_array().unwrap().is_empty());
}

#[test]
fn squaring_control_has_no_violation() {
    let dir = tempfile::tempdir().unwrap();
    let map = file(dir.path(), "z2.json", Z2);
    let csv = dir.path().join("c.csv");
    assert!(run(&["julia", "--map", s(&map), "--depth", "9", "--per-node", "2", "--out", s(&csv)]).status.success());
    let sec = file(dir.path(), "s.json", r#"{"factors": [{"form": [1, 0], "exponent": 1}]}"#);
    let v = json_of(&run(&["check-obstruction", "--map", s(&map), "--section", s(&sec), "--cloud", s(&csv)]));
    assert_eq!(v["result"]["verdict"], "no_violation_at_resolution");
    assert!(v["result"]["min_value"].as_f64().unwrap() >= 1.0 - 1e-9);

    let v = json_of(&run(&["equidist", "--cloud", s(&csv), "--reference", "circle", "--bins", "16"]));
    assert!(v["result"]["max_bin_deviation"].as_f64().unwrap() < 0.05);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let map = file(dir.path(), "l.json", LATTES);
    let out_path = dir.path().join("pre.json");
    let out = run(&["preperiodic", "--map", s(&map), "--bound", "3", "--out", s(&out_path), "--json"]);
    assert!(out.status.success());
    assert_eq!(fs::read(&out_path).unwrap(), out.stdout);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for p in v["result"]["points"].as_array().unwrap() {
        assert!(p["height"].as_f64().unwrap().abs() <= 1e-10);
    }
}
