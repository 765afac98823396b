use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn opde(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opde"))
        .args(args)
        .env_remove("OPDE_MAX_DEGREE")
        .output()
        .unwrap()
}

fn opde_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_opde"))
        .args(args)
        .env_remove("OPDE_MAX_DEGREE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn check_appell() {
    let o = opde(&["check", "--pde", &data("appell-1-1.json")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = stdout_json(&o);
    assert_eq!(v["admissible"], json!(true));
    assert_eq!(v["self_adjoint"], json!(true));
    // x y (1 - x - y)
    assert_eq!(v["discriminant"], json!([[1, 2, "-1"], [2, 1, "-1"], [1, 1, "1"]]));
    assert_eq!(v["varpi"][0], json!("-3"));
}

#[test]
fn check_names_vanishing_index() {
    let o = opde_stdin(&["check", "--pde", "-", "-N", "3"], r#"{"a": "1", "e": "-2", "f1": "1"}"#);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("k = 2"), "{}", stderr(&o));
    assert_eq!(stdout_json(&o)["vanishing_index"], json!(2));
}

#[test]
fn check_not_self_adjoint() {
    let pde = r#"{"b1": "1", "c2": "1", "d3": "1", "e": "-1", "f1": "1"}"#;
    let o = opde_stdin(&["check", "--pde", "-", "-N", "2"], pde);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert_eq!(stdout_json(&o)["self_adjoint"], json!(false));
    let o = opde_stdin(&["build", "--pde", "-", "-N", "2"], pde);
    assert_eq!(code(&o), 3);
}

#[test]
fn malformed_json_reports_position() {
    let o = opde_stdin(&["check", "--pde", "-"], "{\"a\": \"1\",\n \"e\": }");
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("line 2 column"), "{}", stderr(&o));
    let o = opde_stdin(&["check", "--pde", "-"], r#"{"a": "1", "zz": "2"}"#);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("zz"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&opde(&["build", "--alpha", "1"])), 1);
    assert_eq!(code(&opde(&["build"])), 1);
    assert_eq!(code(&opde(&["frobnicate"])), 1);
    assert_eq!(code(&opde(&["build", "--alpha", "0", "--beta", "1"])), 1);
    assert_eq!(code(&opde(&["build", "--family", "koornwinder", "--pde", &data("disk.json")])), 1);
    assert_eq!(code(&opde(&["--help"])), 0);
}

#[test]
fn build_serializes_first_degree() {
    let o = opde(&["build", "--alpha", "1", "--beta", "1", "-N", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = stdout_json(&o);
    let d = &v["degrees"];
    assert_eq!(d.as_array().unwrap().len(), 3);
    assert_eq!(d[1]["P"], json!([[[1, 0, "1"], [0, 0, "-1/3"]], [[0, 1, "1"], [0, 0, "-1/3"]]]));
    assert_eq!(d[0]["B"]["x"], json!([["1/3"]]));
    assert_eq!(d[1]["C"]["x"], json!([["1/18"], ["-1/36"]]));
    for key in ["A", "B", "C", "W", "S", "T", "V", "Y", "Z"] {
        assert!(d[2][key]["x"].is_array() && d[2][key]["y"].is_array(), "{key}");
    }
    // same output from the equation file
    let o2 = opde(&["build", "--pde", &data("appell-1-1.json"), "-N", "2"]);
    assert_eq!(stdout_json(&o2), v);
}

#[test]
fn build_degree_zero() {
    let v = stdout_json(&opde(&["build", "--alpha", "2", "--beta", "3", "-N", "0"]));
    let d = v["degrees"].as_array().unwrap();
    assert_eq!(d.len(), 1);
    let keys: Vec<&str> = d[0].as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["B", "P", "n"]);
    assert_eq!(d[0]["B"]["x"], json!([["1/3"]]));
    assert_eq!(d[0]["B"]["y"], json!([["1/2"]]));
}

#[test]
fn build_other_families_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.json");
    let o = opde(&["build", "--family", "koornwinder", "--alpha", "1", "--beta", "1", "-N", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["degrees"][1]["P"][0], json!([[1, 0, "3"], [0, 0, "-1"]]));
    assert_eq!(v["degrees"][1]["connection"], json!([["3", "0"], ["1", "2"]]));
    let v = stdout_json(&opde(&["build", "--family", "appell-F", "--alpha", "1", "--beta", "1", "-N", "1"]));
    assert_eq!(v["degrees"][1]["P"][0], json!([[0, 1, "-1"], [1, 0, "-2"], [0, 0, "1"]]));
}

#[test]
fn latex_and_pretty() {
    let o = opde(&["build", "--alpha", "1", "--beta", "1", "-N", "1", "--format", "latex"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("\\begin{pmatrix} x - \\frac{1}{3} \\\\ y - \\frac{1}{3} \\end{pmatrix}"));
    assert!(s.contains("\\begin{pmatrix} \\frac{1}{18} \\\\ -\\frac{1}{36} \\end{pmatrix}"), "{s}");
    let b = s.as_bytes();
    assert!(!b.windows(3).any(|w| w[0].is_ascii_digit() && w[1] == b'.' && w[2].is_ascii_digit()), "no decimals");
    let o = opde(&["classify", "--alpha", "2", "--beta", "3", "--format", "pretty"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("case: vi") && s.contains("case: ix") && s.contains("case: x"));
}

#[test]
fn classify_cases() {
    let v = stdout_json(&opde(&["classify", "--pde", &data("appell-2-3.json")]));
    let ids: Vec<&str> = v["cases"].as_array().unwrap().iter().map(|c| c["case"].as_str().unwrap()).collect();
    assert_eq!(ids, ["vi", "ix", "x"]);
}

#[test]
fn rodrigues_routes_agree() {
    let f = stdout_json(&opde(&["rodrigues", "--family", "appell-F", "--alpha", "1", "--beta", "1", "-N", "2"]));
    assert_eq!(f["degrees"][1]["F"][0], json!([[0, 1, "-1"], [1, 0, "-2"], [0, 0, "1"]]));
    let o = opde(&["rodrigues", "--pde", &data("appell-1-1.json"), "--weight", &data("weight-1-1.json"), "-N", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = stdout_json(&o);
    // weight x^0 y^0 for alpha = beta = 1; the Pochhammer normalizations are 1 at degree 1
    assert_eq!(r["degrees"][1]["R"], f["degrees"][1]["F"]);
    assert_eq!(code(&opde(&["rodrigues", "--pde", &data("appell-1-1.json")])), 1);
}

#[test]
fn verify_lines_and_fault() {
    let o = opde(&["verify", "--alpha", "1", "--beta", "1", "-N", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.lines().count() >= 10);
    assert!(s.lines().all(|l| l.contains("checks, ok")), "{s}");

    let o = opde(&["verify", "--alpha", "1", "--beta", "1", "-N", "3", "--inject-fault"]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("TTRR identity, n=1, axis 1"), "{}", stderr(&o));

    let o = opde(&["verify", "--pde", &data("disk.json"), "-N", "0", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["passed"], json!(true));
}

#[test]
fn degree_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_opde"))
        .args(["build", "--alpha", "1", "--beta", "1", "-N", "9"])
        .env("OPDE_MAX_DEGREE", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["degrees"].as_array().unwrap().len(), 3);
    assert!(stderr(&o).contains("capped"));
}

#[test]
fn json_output_parses_back() {
    use opde::algebra::{PolyVector, RationalMatrix};
    let v = stdout_json(&opde(&["build", "--alpha", "2", "--beta", "3", "-N", "3"]));
    for d in v["degrees"].as_array().unwrap() {
        let p: PolyVector = serde_json::from_value(d["P"].clone()).unwrap();
        assert_eq!(serde_json::to_value(&p).unwrap(), d["P"]);
        let b: RationalMatrix = serde_json::from_value(d["B"]["y"].clone()).unwrap();
        assert_eq!(serde_json::to_value(&b).unwrap(), d["B"]["y"]);
    }
}
