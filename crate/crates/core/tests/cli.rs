use std::process::{Command, Output};

use serde_json::Value;

fn lieper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieper"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = lieper(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn vform_from_file_and_preset() {
    let r = report(&["vform", "examples/su2.json"]);
    assert_eq!(r["subcommand"], "vform");
    assert_eq!(r["outputs"]["quotient_dim"], 1);
    assert_eq!(r["inputs_digest"].as_str().unwrap().len(), 64);
    assert_eq!(report(&["vform", "sl2c"])["outputs"]["quotient_dim"], 2);
}

#[test]
fn exact_reports_are_reproducible() {
    let a = report(&["coker", "examples/cycle3.json"]);
    let b = report(&["coker", "examples/cycle3.json"]);
    assert_eq!(a["outputs"], b["outputs"]);
    assert_eq!(a["inputs_digest"], b["inputs_digest"]);
    assert_eq!(a["outputs"]["dim"], 1);
    assert_eq!(a["outputs"]["finite_order"]["holds"], true);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = std::env::temp_dir().join(format!("lieper-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"constants\": [").unwrap();
    let out = lieper(&["discrete", "--generators", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["error"]["code"], "parse");
    assert_eq!(lieper(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(lieper(&["period-s3", "--res", "many"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one_with_code() {
    let out = lieper(&["period-loop", "--twist", "examples/order6.json"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(err["error"]["code"].is_string());
}

#[test]
fn torus_and_discrete_verdicts() {
    assert_eq!(report(&["torus-example", "3/7"])["outputs"]["verdict"], "discrete");
    assert_eq!(report(&["torus-example", "alpha"])["outputs"]["verdict"], "not_discrete");
    let numeric = report(&["discrete", "--generators", "examples/generators_alpha.json", "--constants", "alpha=0.75", "--numeric"]);
    assert_eq!(numeric["outputs"]["verdict"], "likely_discrete");
}

#[test]
fn cocycle_check_and_holonomy() {
    let r = report(&["cocycle-check", "su2", "--form", "normalized", "--derivation", "examples/ad_I.json"]);
    assert_eq!(r["outputs"]["cartan"]["entries"][0][1][0], "4");
    assert_eq!(r["outputs"]["eta_coboundary"]["exact"], true);
    let h = report(&["holonomy", "--patch", "u1"]);
    assert_eq!(h["outputs"]["matching_sign"], -1);
}

#[test]
fn reproduce_filters_and_formats() {
    let out = lieper(&["reproduce", "--only", "cartan"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("[PASS]"));
    let out = lieper(&["reproduce", "--only", "vform-dims,torus", "--json"]);
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
    assert_eq!(rows[1]["name"], "torus");
    assert_eq!(lieper(&["reproduce", "--only", "bogus"]).status.code(), Some(2));
}
