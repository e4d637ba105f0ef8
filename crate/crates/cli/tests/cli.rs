use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasiord"))
        .args(args)
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

/// Compare against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", name));
    assert_eq!(actual, want, "output differs from {}", name);
}

fn strs(v: &Value) -> Vec<Vec<String>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect())
        .collect()
}

fn exps(v: &[&[&str]]) -> Vec<Vec<String>> {
    v.iter().map(|e| e.iter().map(|s| s.to_string()).collect()).collect()
}

#[test]
fn analyze_example_one() {
    let o = run(&["analyze", "example1_f.txt"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["quasi_ordinary"], true);
    assert_eq!(v["irreducible"], true);
    let ch = &v["characteristic"];
    assert_eq!(strs(&ch["h"]), exps(&[&["3/2", "1"], &["7/4", "3/2"]]));
    assert_eq!(ch["n"], serde_json::json!([2, 2]));
    assert_eq!(strs(&ch["q"])[1], vec!["13/2", "5"]);
    golden("analyze_example1.json", &stdout(&o));
}

#[test]
fn analyze_text_and_extra_precision() {
    let o = run(&["analyze", "example1_f.txt", "--format", "text", "--extra-precision", "3/2"]);
    assert_eq!(o.status.code(), Some(0));
    golden("analyze_example1_extra.txt", &stdout(&o));
}

#[test]
fn analyze_y() {
    let o = run(&["analyze", "y.txt"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["degree"], 1);
    assert_eq!(v["irreducible"], true);
    assert_eq!(v["characteristic"]["h"], serde_json::json!([]));
}

#[test]
fn resultant_example_one() {
    let o = run(&["resultant", "example1_f.txt", "example1_g.txt", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "X1^28*X2^24\n");
    // Both polynomials from a single named document.
    let p = run(&["resultant", "example1_pair.txt", "--format", "text"]);
    assert_eq!(stdout(&p), "X1^28*X2^24\n");
}

#[test]
fn check_example_one() {
    let o = run(&["check", "example1_f.txt", "example1_g.txt", "--k", "2", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["threshold"], serde_json::json!(["26", "20"]));
    let c = &v["conclusions"];
    assert_eq!(c["irreducible"], true);
    assert_eq!(c["quasi_ordinary"], true);
    assert_eq!(c["degree"], 4);
    assert_eq!(strs(&c["characteristic"]), exps(&[&["3/2", "1"], &["7/4", "3/2"]]));
    assert_eq!(v["verified"]["irreducible"], true);
    golden("check_example1.json", &stdout(&o));
    let text = run(&["check", "example1_pair.txt", "--format", "text", "--verify"]);
    assert_eq!(text.status.code(), Some(0));
    golden("check_example1.txt", &stdout(&text));
}

#[test]
fn check_log_distance() {
    let o = run(&["check", "example1_pair.txt", "--k", "2", "--test", "log-distance"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["theorem"], "log-distance");
    // deg g = 4 exceeds n_1 = 2.
    let o = run(&["check", "example1_pair.txt", "--k", "1", "--test", "log-distance"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["hypotheses"]["deg_ok"], false);
}

#[test]
fn check_bad_k_is_an_error() {
    let o = run(&["check", "example1_pair.txt", "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn contact_triptych() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("svg");
    let o = run(&[
        "contact",
        "tri1_f.txt",
        "tri1_g.txt",
        "tri1_h.txt",
        "--svg",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["holds"], false);
    assert!(v["witness"].is_array());
    assert_eq!(strs(&v["f_g"]["vertices"]), exps(&[&["0", "2"], &["1", "0"]]));
    assert_eq!(strs(&v["f_h"]["vertices"]), exps(&[&["0", "3/2"], &["3/2", "0"]]));
    assert_eq!(
        strs(&v["h_g"]["vertices"]),
        exps(&[&["0", "2"], &["1/2", "1/2"], &["3/2", "0"]])
    );
    for name in ["f_g.svg", "f_h.svg", "h_g.svg"] {
        let svg = std::fs::read_to_string(out.join(name)).unwrap();
        assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"), "{}", name);
    }
    golden("contact_tri1.json", &stdout(&o));
}

#[test]
fn contact_pair() {
    let o = run(&["contact", "tri1_f.txt", "tri1_g.txt", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    golden("contact_pair.txt", &stdout(&o));
}

#[test]
fn am_cusps() {
    let o = run(&["am", "cusps.txt"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["intersections"]["i0_f_g"], "8");
    assert_eq!(v["intersections"]["bound"], "6");
    let o = run(&["am", "cusp_reducible.txt", "--verify"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["verdict"], "inconclusive");
    assert_eq!(v["intersections"]["i0_f_g"], "6");
    assert_eq!(v["verified"]["irreducible"], false);
}

#[test]
fn gen_round_trip() {
    let o = run(&["gen", "--d", "2", "--s", "2", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    golden("gen_d2_s2_seed7.json", &stdout(&o));
    let spec = json(&o);
    let text = run(&["gen", "--d", "2", "--s", "2", "--seed", "7", "--format", "text"]);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("f.txt");
    std::fs::write(&file, stdout(&text)).unwrap();
    let a = run(&["analyze", file.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    let a = json(&a);
    assert_eq!(a["polynomial"], spec["polynomial"]);
    assert_eq!(a["characteristic"]["h"], spec["characteristic"]["h"]);
    assert_eq!(a["characteristic"]["n"], spec["characteristic"]["n"]);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["analyze", "example1_f.txt"][..],
        &["contact", "tri1_f.txt", "tri1_g.txt", "tri1_h.txt"][..],
        &["gen", "--d", "3", "--s", "2", "--seed", "3"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{:?}", args);
    }
}

#[test]
fn errors_exit_one() {
    let o = run(&["analyze", "bad.txt"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("2:14"), "{}", err);
    assert_eq!(run(&["analyze", "missing.txt"]).status.code(), Some(1));
    assert_eq!(run(&["analyze"]).status.code(), Some(1));
    assert_eq!(run(&["resultant", "example1_f.txt"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "y.txt", "--extra-precision", "x"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
