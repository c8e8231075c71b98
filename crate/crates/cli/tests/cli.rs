use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hessrank::polyring::{format_polynomial, parse_polynomial, parse_rational_function, VarNames};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hessrank"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn analyze_quadratic() {
    let f = file("x1^2+5*x2^2\n");
    let out = run(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rank"]["r"], 2);
    assert_eq!(v["apex"]["s"], 2);
    assert_eq!(v["decomposition"]["form"], "i");
    assert_eq!(v["decomposition"]["verified"], true);
    assert_eq!(v["timing_ms"], Value::Null);
}

#[test]
fn decompose_shifted_fixture() {
    let path = fixtures().join("shifted_form.txt");
    let out = run(&["decompose", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let d = &v["decomposition"];
    assert_eq!(d["form"], "iv");
    assert_eq!(d["g"], "t^2");
    let rf = |s: &Value| parse_rational_function(s.as_str().unwrap(), Some(5)).unwrap();
    assert_eq!(rf(&d["gamma"]), parse_rational_function("(x4*x5 + 1)/x5", Some(5)).unwrap());
    assert_eq!(rf(&d["lambda"]), parse_rational_function("x4^2/(x4*x5 + 1)", Some(5)).unwrap());
    assert_eq!(v["verification"]["relations"], true);
}

#[test]
fn gordan_noether_cubic() {
    let path = fixtures().join("gordan_noether.txt");
    let v = json(&run(&["analyze", path.to_str().unwrap()]));
    assert_eq!(v["rank"]["r"], 4);
    assert_eq!(v["apex"]["s"], 2);
    assert_eq!(v["decomposition"]["form"], "iii");
}

#[test]
fn smith_polyt_pencil() {
    let path = fixtures().join("pencil_polyt.txt");
    for variant in ["plain", "upper", "leading", "debondt"] {
        let out = run(&["smith", path.to_str().unwrap(), "--domain", "polyt", "--variant", variant]);
        assert_eq!(out.status.code(), Some(0), "{variant}");
        let v = json(&out);
        assert_eq!(v["normal_form"]["r"], 1);
        assert!(v["verification"].as_object().unwrap().values().all(|x| x == true));
    }
}

#[test]
fn reports_are_deterministic() {
    let f = file("vars 5\n(x1+x2)^2 + (x3+x4+x5)^2\n(x1 - x3 + 2*x5)^3 + x2^2\n");
    let p = f.path().to_str().unwrap();
    for args in [vec!["reduce", p, "--main-vars", "3", "--seed", "11"], vec!["analyze", p], vec!["apex", p]] {
        let a = run(&args);
        let b = run(&args);
        let c = run(&[args.as_slice(), &["--sequential"]].concat());
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stdout, c.stdout);
    }
}

#[test]
fn multiple_inputs_keep_order() {
    let a = file("x1^2\n");
    let b = file("x1*x2\nx1^3\n");
    let v = json(&run(&["analyze", a.path().to_str().unwrap(), b.path().to_str().unwrap()]));
    let polys: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["request"]["polynomial"].as_str().unwrap()).collect();
    assert_eq!(polys, ["x1^2", "x1*x2", "x1^3"]);
}

#[test]
fn polynomial_strings_round_trip() {
    let path = fixtures().join("gordan_noether.txt");
    let v = json(&run(&["analyze", path.to_str().unwrap()]));
    let d = &v["decomposition"];
    let transformed = d["transformed"].as_str().unwrap();
    let back = parse_polynomial(transformed, Some(5)).unwrap();
    assert_eq!(format_polynomial(&back, VarNames::all_x()), transformed);
    for s in strings(&d["p"]).iter().chain(&strings(&d["a"])) {
        let q = parse_polynomial(s, Some(5)).unwrap();
        assert_eq!(&format_polynomial(&q, VarNames::all_x()), s);
    }
}

#[test]
fn exit_codes() {
    let bad = file("x1 +\n");
    let out = run(&["analyze", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert_eq!(run(&["analyze", "/no/such/file"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let m = file("1 2 int\n2 4\n");
    assert_eq!(run(&["smith", m.path().to_str().unwrap(), "--domain", "polyt"]).status.code(), Some(1));
    let f = file("x1^2\n");
    assert_eq!(run(&["analyze", f.path().to_str().unwrap(), "--main-vars", "3"]).status.code(), Some(1));
}

#[test]
fn text_format_and_timing() {
    let f = file("x1^2 + 5*x2^2\n");
    let out = run(&["analyze", f.path().to_str().unwrap(), "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("form: i\n"));
    let v = json(&run(&["analyze", f.path().to_str().unwrap(), "--timing"]));
    assert!(v["timing_ms"].is_u64());
}
