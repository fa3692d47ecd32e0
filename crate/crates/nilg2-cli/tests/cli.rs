use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nilg2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilg2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = nilg2(&full);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    (code(&o), v)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nilg2-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_12357a() {
    let (c, v) = json(&["verify", "12357A"]);
    assert_eq!(c, 0);
    let cert = &v["entries"][0]["certificate"];
    assert_eq!(cert["verdict"], "valid");
    assert_eq!(cert["purely_coclosed"], true);
    assert_eq!(v["tool"], "nilg2");
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn fourth_obstruction_on_23457b() {
    let (c, v) = json(&["obstruct", "23457B", "--method", "4"]);
    assert_eq!(c, 0);
    let w = &v["entries"][0]["certificate"]["witness"];
    assert_eq!(w["v"], serde_json::json!(["1", "0", "0", "0", "0", "0", "0"]));
}

#[test]
fn second_obstruction_fails_on_12357a() {
    let (c, v) = json(&["obstruct", "12357A", "--method", "2"]);
    assert_eq!(c, 1);
    assert_eq!(v["entries"][0]["verdict"], "not_applicable");
}

#[test]
fn auto_without_a_positive_test_reports_all_four() {
    let (c, v) = json(&["obstruct", "12357A"]);
    assert_eq!(c, 1);
    assert_eq!(v["entries"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_and_data_errors_exit_2() {
    for args in [
        &["verify", "NOPE"][..],
        &["verify", "12457N"],
        &["verify", "12457N2", "--lambda", "-1"],
        &["verify", "12357A", "--lambda", "2"],
        &["verify", "12357A", "--lambda", "x"],
        &["verify", "13457A"],
        &["obstruct", "12357A", "--method", "5"],
        &["frobnicate"],
        &[],
    ] {
        let o = nilg2(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn classify_json_is_byte_stable() {
    let a = nilg2(&["classify", "--format", "json", "--samples", "-1,78/331"]);
    let b = nilg2(&["classify", "--format", "json", "--samples", "-1,78/331"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summary"]["algebras"]["step_6"]["verified"], 9);
    assert_eq!(v["summary"]["algebras"]["step_5"]["verified"], 25);
}

#[test]
fn printed_certificates_replay() {
    let cases: [&[&str]; 6] = [
        &["verify", "12357A"],
        &["verify", "12457N", "--lambda", "78/331"],
        &["obstruct", "13457B"],
        &["obstruct", "23457A", "--method", "2"],
        &["obstruct", "13457G", "--method", "3"],
        &["obstruct", "12457F", "--method", "3"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let path = scratch(&format!("report{i}.json"));
        let mut full = vec!["--format", "json", "--out", path.to_str().unwrap()];
        full.extend_from_slice(args);
        let first = code(&nilg2(&full));
        let (c, v) = json(&["--replay", path.to_str().unwrap()]);
        assert_eq!(c, first, "{args:?}");
        assert!(v["entries"].as_array().unwrap().iter().all(|e| e["matches"] == true), "{args:?}");
    }
}

#[test]
fn tampered_report_does_not_replay() {
    let path = scratch("tampered.json");
    nilg2(&["--format", "json", "--out", path.to_str().unwrap(), "verify", "12457D"]);
    let text = fs::read_to_string(&path).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["entries"][0]["certificate"]["eta"] = Value::String("e3 + e7".into());
    fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let (c, r) = json(&["--replay", path.to_str().unwrap()]);
    assert_eq!(c, 1);
    assert_eq!(r["entries"][0]["matches"], false);
}

#[test]
fn text_is_rendered_from_the_json_payload() {
    let (_, v) = json(&["verify", "12457I"]);
    let text = String::from_utf8(nilg2(&["verify", "12457I"]).stdout).unwrap();
    let cert = &v["entries"][0]["certificate"];
    for key in ["phi", "star_phi", "psi_plus"] {
        assert!(text.contains(cert[key].as_str().unwrap()), "{key}");
    }
    assert!(text.contains(v["input_digest"].as_str().unwrap()));
}

#[test]
fn algebra_and_structure_files() {
    let alg = scratch("alg.kv");
    fs::write(&alg, "name = \"n1\"\ngong = \"(0^3,-12,-14-23,-15+34,-16+35)\"\ncenter = \"e7\"\n").unwrap();
    let data = scratch("structure.kv");
    fs::write(
        &data,
        "algebra = \"n1\"\nomega = \"-e13 + e24 - 2/5e56 + 3/5e45 + 3/5e26\"\n\
         psi_minus = \"e125 + e236 + e146 + e345\"\neta = \"e7\"\n",
    )
    .unwrap();
    let (c, v) = json(&["verify", alg.to_str().unwrap(), "--data", data.to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["entries"][0]["certificate"]["verdict"], "valid");
    let (c, _) = json(&["show", alg.to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(code(&nilg2(&["verify", "12357A", "--data", data.to_str().unwrap()])), 2);
}

#[test]
fn star_phi_is_not_exact() {
    let (c, v) = json(&["is-exact", "12457I"]);
    assert_eq!(c, 0);
    assert_eq!(v["entries"][0]["star_phi_exact"], false);
}

#[test]
fn list_and_show() {
    let (c, v) = json(&["list"]);
    assert_eq!(c, 0);
    assert_eq!(v["entries"].as_array().unwrap().len(), 45);
    let (_, v) = json(&["show", "23457A"]);
    let e = &v["entries"][0];
    assert_eq!(e["step"], 5);
    assert_eq!(e["center"], serde_json::json!(["e6", "e7"]));
    assert_eq!(e["structure_equations"][6], "de7 = -e23");
}
