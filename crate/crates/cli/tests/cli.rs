use std::io::Write;
use std::process::{Command, Output};

fn twistor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn entry(doc: &serde_json::Value, quantity: &str, index: &[usize]) -> Option<f64> {
    doc["entries"].as_array().unwrap().iter().find_map(|e| {
        let idx: Vec<usize> = e["index"]
            .as_array()
            .unwrap()
            .iter()
            .map(|i| i.as_u64().unwrap() as usize)
            .collect();
        (e["quantity"] == quantity && idx == index).then(|| e["value"].as_f64().unwrap())
    })
}

#[test]
fn decompose_product_spheres() {
    let out = twistor(&["decompose", "--zoo", "product-spheres-1-1"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(entry(&doc, "A", &[1, 1]), Some(1.0));
    assert_eq!(entry(&doc, "A", &[2, 2]), None);
    assert_eq!(doc["predicates"]["einstein"], true);
}

#[test]
fn decompose_flat_is_empty() {
    let doc = json(&twistor(&["decompose", "--zoo", "flat"]));
    let non_scalar = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| !e["index"].as_array().unwrap().is_empty())
        .count();
    assert_eq!(non_scalar, 0);
    assert_eq!(entry(&doc, "S", &[]), Some(0.0));
}

#[test]
fn malformed_input_exits_2() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"components": [[1,2,1,2,1.0],[2,1,1,2,0.5]]}}"#).unwrap();
    let out = twistor(&["decompose", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "not json").unwrap();
    assert_eq!(
        twistor(&["decompose", "--input", f.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(twistor(&["decompose", "--zoo", "nope"]).status.code(), Some(2));
    assert_eq!(twistor(&["decompose"]).status.code(), Some(2));
    assert_eq!(twistor(&["twistor", "--zoo", "s4", "--t", "0"]).status.code(), Some(2));
}

#[test]
fn zoo_dump_round_trips_through_input() {
    let out = twistor(&["zoo", "dump", "pure-ricci"]);
    assert!(out.status.success());
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(&out.stdout).unwrap();
    let via_file = json(&twistor(&["decompose", "--input", f.path().to_str().unwrap()]));
    let via_zoo = json(&twistor(&["decompose", "--zoo", "pure-ricci"]));
    assert_eq!(via_file["entries"], via_zoo["entries"]);
    let list = String::from_utf8(twistor(&["zoo", "list"]).stdout).unwrap();
    assert!(list.lines().any(|l| l == "s4"));
}

#[test]
fn twistor_examples() {
    let s4 = json(&twistor(&["twistor", "--zoo", "s4", "--t", "1"]));
    assert_eq!(entry(&s4, "sbar", &[]), Some(12.0));
    assert_eq!(entry(&s4, "norm2_nabla_j", &[]), Some(0.0));
    assert!(entry(&s4, "sj", &[]).unwrap().abs() < 1e-12);

    let flat = json(&twistor(&["twistor", "--zoo", "flat", "--t", "1"]));
    assert_eq!(entry(&flat, "rbar", &[5, 6, 5, 6]), Some(1.0));

    let ps = json(&twistor(&["twistor", "--zoo", "product-spheres-1-1", "--t", "1"]));
    assert!((entry(&ps, "norm2_nabla_j", &[]).unwrap() - 8.0).abs() < 1e-12);
    // q̃³ = q̃⁴ = 0 here, so the printed expansion reduces to 8/t² and agrees
    let norm_diff = |doc: &serde_json::Value| {
        let d = doc["closed_form_diff"]
            .as_array()
            .unwrap()
            .iter()
            .find(|d| d["eq"] == "eq:squarejplus")
            .unwrap()
            .clone();
        d["delta"].as_f64().unwrap()
    };
    assert_eq!(norm_diff(&ps), 0.0);
    assert_eq!(norm_diff(&s4), -13.0);
}

#[test]
fn csv_and_text_formats() {
    let csv = String::from_utf8(twistor(&["twistor", "--zoo", "flat", "--format", "csv"]).stdout).unwrap();
    assert!(csv.starts_with("quantity,index,value,paper_ref\n"));
    assert!(csv.contains("rbar,5-6-5-6,1e0,eq:riemtwist"));
    assert!(csv.lines().skip(1).all(|l| l.split(',').count() == 4));
    let text =
        String::from_utf8(twistor(&["verify", "T5.4", "--zoo", "s4", "--format", "text", "--n", "20"]).stdout).unwrap();
    assert!(text.starts_with("T5.4-muskarov-J PASS"));
    let csv =
        String::from_utf8(twistor(&["verify", "T5.4", "--zoo", "s4", "--format", "csv", "--n", "20"]).stdout).unwrap();
    assert!(csv.trim_end().ends_with("verdict,,PASS,eq:muskar1"));
}

#[test]
fn verify_examples_and_exit_codes() {
    let out = twistor(&["verify", "T5.4", "--zoo", "s4", "--t", "1", "--n", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["record"]["verdict"], "PASS");

    let out = twistor(&[
        "verify",
        "T1.2",
        "--zoo",
        "product-spheres-1-1",
        "--t",
        "1",
        "--n",
        "1000",
    ]);
    assert_eq!(json(&out)["record"]["verdict"], "PASS");

    let out = twistor(&["verify", "T1.4", "--zoo", "product-spheres-1-1", "--n", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["record"]["verdict"], "FLAGGED");
    assert!((doc["record"]["residuals"]["gap_low"].as_f64().unwrap() + 20.0 / 3.0).abs() < 1e-9);
    assert!((doc["record"]["residuals"]["gap_high"].as_f64().unwrap() - 32.0 / 3.0).abs() < 1e-9);

    assert_eq!(twistor(&["verify", "T9.9", "--zoo", "s4"]).status.code(), Some(2));
}

#[test]
fn scan_exit_code_follows_tolerance() {
    let ok = twistor(&[
        "scan",
        "--zoo",
        "product-spheres-1-1",
        "--check",
        "quadratic_einstein",
        "--n",
        "100",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = twistor(&[
        "scan",
        "--zoo",
        "pure-ricci",
        "--check",
        "quadratic_einstein",
        "--n",
        "100",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(json(&bad)["report"]["worst_residual"].as_f64().unwrap() >= 0.5 - 1e-9);
    assert_eq!(
        twistor(&["scan", "--zoo", "s4", "--check", "bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn classify_reports_class() {
    let doc = json(&twistor(&["classify", "--zoo", "space-form-half", "--structure", "es"]));
    assert_eq!(doc["strongest"], "NK");
    assert_eq!(doc["inclusion_consistent"], true);
}

#[test]
fn orientation_override() {
    let pos = json(&twistor(&["decompose", "--zoo", "complex-space-form"]));
    let neg = json(&twistor(&[
        "decompose",
        "--zoo",
        "complex-space-form",
        "--orientation",
        "negative",
    ]));
    assert_eq!(pos["predicates"]["self_dual"], true);
    assert_eq!(neg["predicates"]["self_dual"], false);
}
