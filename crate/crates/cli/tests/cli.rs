use std::process::{Command, Output};

use serde_json::Value;

fn freenorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freenorm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = freenorm(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn homogeneous_norm_is_exact() {
    let r = report(&[
        "norm", "--mode", "monoid", "--k", "2", "--radius", "4", "--expr", "g1+g2",
    ]);
    let est = &r["outputs"]["estimate"];
    assert!((est["value"].as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-8);
    assert_eq!(est["kind"], "exact");
    assert_eq!(r["schema_version"], "1.0.0");
    assert_eq!(r["inputs"]["radius"], 4);
}

#[test]
fn group_norm_of_a_generator_sum() {
    // ‖g1 + g1^-1‖ = 2 is approached from below.
    let r = report(&[
        "norm",
        "--mode",
        "group",
        "--k",
        "1",
        "--radius",
        "6",
        "--expr",
        "g1 + g1^-1",
    ]);
    let v = r["outputs"]["estimate"]["value"].as_f64().unwrap();
    assert!(v <= 2.0 + 1e-9 && v > 1.8, "{v}");
    assert_eq!(r["outputs"]["triangle_bound"], 2.0);
}

#[test]
fn von_neumann_for_circle_polynomial() {
    let r = report(&[
        "vn",
        "--expr",
        "(1+g1)*g2",
        "--k",
        "2",
        "--dim",
        "4",
        "--trials",
        "100",
        "--seed",
        "7",
    ]);
    let rep = &r["outputs"]["report"];
    assert_eq!(rep["bound_kind"], "circle-l2");
    assert!((rep["bound"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-15);
    assert_eq!(rep["violations"], 0);
    assert!(rep["trials"]
        .as_array()
        .unwrap()
        .iter()
        .all(|t| t["slack"].as_f64().unwrap() >= 0.0));
    assert_eq!(rep["trials"].as_array().unwrap().len(), 100);
}

#[test]
fn verify_prop17_passes() {
    let r = report(&["verify", "--suite", "prop17", "--seed", "1"]);
    assert_eq!(r["passed"], true);
    assert_eq!(r["inputs"]["suite"], "prop17");
    assert!(r["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .all(|a| a["tag"] == "Prop 17"));
}

#[test]
fn verify_output_is_byte_identical() {
    let a = freenorm(&["verify", "--suite", "prop8", "--seed", "3"]);
    let b = freenorm(&["verify", "--suite", "prop8", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn compare_remark_separates_the_norms() {
    let r = report(&["compare-remark", "--expr", "(1+g1)*g2", "--radius", "8"]);
    let disk = r["outputs"]["disk_norm"]["value"].as_f64().unwrap();
    let group = r["outputs"]["group_estimate"]["value"].as_f64().unwrap();
    assert!((disk - 2f64.sqrt()).abs() < 1e-8);
    assert!(group > 1.9 && group <= 2.0 + 1e-9);
    let trace: Vec<f64> = r["outputs"]["group_trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(trace.len(), 9);
    assert!(trace.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn matrix_coefficients_from_file() {
    let dir = std::env::temp_dir().join(format!("freenorm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("coeffs.json");
    // T = E_11 ⊗ g1 + E_12 ⊗ g2 is homogeneous; its norm is ‖Σ A*A‖^1/2 = 1.
    std::fs::write(
        &path,
        r#"{"g1": [[[1,0],[0,0]],[[0,0],[0,0]]], "g2": [[[0,0],[1,0]],[[0,0],[0,0]]]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let r = report(&[
        "norm",
        "--mode",
        "monoid",
        "--k",
        "2",
        "--radius",
        "3",
        "--level",
        "2",
        "--matrix-coeffs",
        p,
    ]);
    assert!((r["outputs"]["estimate"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    let out = freenorm(&[
        "norm",
        "--mode",
        "monoid",
        "--k",
        "2",
        "--radius",
        "3",
        "--level",
        "3",
        "--matrix-coeffs",
        p,
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(
        freenorm(&["norm", "--mode", "monoid", "--k", "2", "--radius", "3", "--expr", "g1^-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        freenorm(&["norm", "--mode", "monoid", "--k", "2", "--radius", "3", "--expr", "1 + "])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        freenorm(&["verify", "--suite", "prop2"]).status.code(),
        Some(2)
    );
    assert_eq!(freenorm(&["vn", "--bogus"]).status.code(), Some(2));
    let cap = freenorm(&[
        "norm", "--mode", "group", "--k", "3", "--radius", "30", "--expr", "g1",
    ]);
    assert_eq!(cap.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&cap.stderr).contains("cap"));
}

#[test]
fn parse_errors_report_the_offset() {
    let out = freenorm(&[
        "norm", "--mode", "group", "--k", "2", "--radius", "2", "--expr", "g1 + g3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("byte 5"),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
