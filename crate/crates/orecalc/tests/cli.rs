//! End-to-end tests of the command-line binary: exit codes, JSON schema and
//! determinism, and custom presentation files.

use std::io::Write;
use std::process::{Command, Output};

fn orecalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orecalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn normalize_jordanian() {
    let out = orecalc(&["normalize", "-p", "jordanian", "y*x"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("x*y + y^2"));
}

#[test]
fn normalize_uq_relation() {
    let out = orecalc(&["normalize", "-p", "uq_sl2", "-q", "3/5+4/5i", "E*F"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("F*E"), "{text}");
    assert!(text.contains("K^-1"), "{text}");
    assert!(text.contains("monomials: 3"), "{text}");
}

#[test]
fn mul_matches_normalize() {
    let a = orecalc(&["mul", "-p", "jordanian", "y", "x"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).contains("x*y + y^2"));
}

#[test]
fn seminorm_values() {
    let out = orecalc(&[
        "seminorm",
        "-p",
        "jordanian",
        "--family",
        "jordanian_full",
        "--rho",
        "1",
        "y^3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("0.1666666666666666"));

    let zero = orecalc(&[
        "seminorm",
        "-p",
        "jordanian",
        "--family",
        "jordanian_full",
        "--rho",
        "1",
        "0",
    ]);
    assert_eq!(stdout(&zero).trim(), "0");

    let uq = orecalc(&[
        "seminorm", "-p", "uq_sl2", "-q", "3/5+4/5i", "--family", "uq_full", "--rho", "3",
        "K^-2*F*E",
    ]);
    assert_eq!(stdout(&uq).trim(), "1");
}

#[test]
fn parse_errors_exit_3() {
    let out = orecalc(&["normalize", "-p", "jordanian", "y*("]);
    assert_eq!(out.status.code(), Some(3));
    let out = orecalc(&["normalize", "-p", "jordanian", "x^-1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(orecalc(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        orecalc(&["normalize", "-p", "no_such_thing", "x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        orecalc(&["normalize", "-p", "uq_sl2", "E"]).status.code(),
        Some(2)
    );
    assert_eq!(orecalc(&["--bogus-flag"]).status.code(), Some(2));
}

#[test]
fn fuel_exhaustion_exits_1() {
    let out = orecalc(&["normalize", "-p", "jordanian", "--fuel", "3", "y^5*x^5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_passes_and_emits_schema() {
    let out = orecalc(&["verify", "pq_equivalence", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
    assert_eq!(v["command"], "verify");
    assert!(v["timestamp"].is_u64());
}

#[test]
fn verify_json_is_deterministic_modulo_timestamp() {
    let run = || {
        let out = orecalc(&["verify", "uq_qpower", "--seed", "7", "--output", "json"]);
        assert_eq!(out.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        v.as_object_mut().unwrap().remove("timestamp");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn commute_with_rewriter_check() {
    let out = orecalc(&[
        "commute",
        "-p",
        "jordanian",
        "-n",
        "2",
        "-r",
        "y",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("rewriter check: ok"), "{text}");
    assert!(text.contains("y^3"), "{text}");
}

#[test]
fn snk_enumerate_reports_summands() {
    let out = orecalc(&[
        "snk",
        "-p",
        "jordanian",
        "-n",
        "4",
        "-k",
        "2",
        "-r",
        "y",
        "--method",
        "enumerate",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("summands before collection: 6"));
}

#[test]
fn irrep_json_entries_are_exact_strings() {
    let out = orecalc(&["irrep", "-d", "2", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["E"][0][1], "1");
    assert_eq!(v["H"][1][1], "-1");
}

#[test]
fn envelope_with_k_poly() {
    let out = orecalc(&[
        "envelope",
        "H",
        "--lambda-max",
        "2",
        "--k-poly",
        "0,1",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["k_component"][0], "1");
    assert_eq!(v["k_component"][1], "-1");
    assert_eq!(v["blocks"][1][0][0], "1");
}

#[test]
fn custom_presentation_from_json_file() {
    let doc = r#"{
        "name": "jordanian_clone",
        "generators": [{"symbol": "x"}, {"symbol": "y"}],
        "rules": [{
            "lhs": ["y", "x"],
            "rhs": [
                {"coeff": "1", "word": [["x", 1], ["y", 1]]},
                {"coeff": "1", "word": [["y", 2]]}
            ]
        }],
        "grading": {"x": 1, "y": 1}
    }"#;
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(doc.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let out = orecalc(&["normalize", "-p", path, "y*x"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("x*y + y^2"));

    // bad documents are usage errors
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    bad.write_all(b"{\"name\": \"broken\"").unwrap();
    let out = orecalc(&["normalize", "-p", bad.path().to_str().unwrap(), "x"]);
    assert_eq!(out.status.code(), Some(2));
}
