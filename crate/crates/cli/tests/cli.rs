use std::process::{Command, Output};

fn grassqh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grassqh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn product_over_finite_field_reduces_coefficients() {
    // σ_1 ∗ σ_1 = σ_2 + σ_{1,1} in Gr(2,4); over GF(2) nothing cancels
    let o = grassqh(&["product", "2", "4", "GF(2)", "σ[1]", "σ[1]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "σ[2] + σ[1,1]");
    let o = grassqh(&["product", "2", "4", "GF(2)", "σ[1]+σ[1]", "σ[1]"]);
    assert_eq!(stdout(&o), "0");
}

#[test]
fn pieri_quantum_term() {
    let o = grassqh(&["pieri", "2", "5", "Q", "1", "σ[3,1]"]);
    assert_eq!(stdout(&o), "σ[3,2] + q*σ[-]");
}

#[test]
fn exit_codes() {
    assert_eq!(grassqh(&["--help"]).status.code(), Some(0));
    assert_eq!(grassqh(&["--version"]).status.code(), Some(0));
    assert_eq!(grassqh(&[]).status.code(), Some(1));
    assert_eq!(grassqh(&["product", "2", "5", "Q", "σ[9]", "σ[1]"]).status.code(), Some(1));
    assert_eq!(grassqh(&["product", "2", "5", "GF(6)", "σ[1]", "σ[1]"]).status.code(), Some(1));
    assert_eq!(grassqh(&["classify", "2", "5", "4"]).status.code(), Some(1));
    assert_eq!(grassqh(&["orbits", "10", "5"]).status.code(), Some(1));
    // the splitting field of x^59 − 1 over GF(2) has 2^58 elements
    let o = grassqh(&["evcheck", "2", "59", "GF(2)", "--samples", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("too large"));
}

#[test]
fn classify_json_fields() {
    let v = json(&grassqh(&["classify", "2", "7", "3"]));
    assert_eq!(v["isGradedField"], true);
    assert_eq!(v["diameter"]["kind"], "FiniteWithBound");
    assert_eq!(v["diameter"]["bound"], 2);
    assert_eq!(v["orbitCount"], 1);
    let v = json(&grassqh(&["classify", "4", "8", "0"]));
    assert_eq!(v["isGradedField"], false);
    assert_eq!(v["diameter"]["kind"], "Infinite");
}

#[test]
fn orbits_text_and_json() {
    let o = grassqh(&["orbits", "10", "7"]);
    assert!(stdout(&o).starts_with("3 orbits"));
    let v = json(&grassqh(&["--json", "orbits", "10", "7"]));
    assert_eq!(v["sizes"], serde_json::json!([1, 2, 2]));
}

#[test]
fn matrix_reports_identities() {
    for field in ["Q", "GF(3)", "GF(2^2)"] {
        let v = json(&grassqh(&["--json", "matrix", "9", field]));
        assert_eq!(v["matrixMatchesClosedForm"], true, "{field}");
        assert_eq!(v["charPolyMatchesClosedForm"], true, "{field}");
        assert_eq!(v["laurentIdentityHolds"], true, "{field}");
    }
    let v = json(&grassqh(&["--json", "matrix", "8", "Q", "--variant", "shifted"]));
    assert_eq!(v["matrixMatchesClosedForm"], true);
    assert_eq!(v["matrix"][0][0], "0");
}

#[test]
fn evcheck_passes_over_rationals_and_extensions() {
    for (k, n, field) in [("2", "5", "Q"), ("2", "6", "Q"), ("3", "6", "GF(3)"), ("2", "7", "GF(2)")] {
        let v = json(&grassqh(&["evcheck", k, n, field, "--samples", "20"]));
        assert_eq!(v["passed"], true, "Gr({k},{n}) over {field}");
        assert_eq!(v["multiplicativeFailures"], 0);
    }
}

#[test]
fn gc_map_csv_has_header_and_rows() {
    let o = grassqh(&["gc", "map", "2", "5", "--seed", "3", "--count", "4", "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "seed,z_1_1,z_1_2,z_1_3,z_2_1,z_2_2,z_2_3,max_violation");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("3,"));
    let o = grassqh(&["gc", "map", "3", "6", "--quaternionic"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn gc_critical_json() {
    let v = json(&grassqh(&["gc", "critical", "1", "2", "--tol", "1e-12"]));
    assert!((v["W"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!(v["gradInf"].as_f64().unwrap() < 1e-12);
    assert_eq!(grassqh(&["gc", "critical", "2", "4", "--tol", "-1"]).status.code(), Some(1));
}

#[test]
fn selftest_fast_tier_passes() {
    let o = grassqh(&["selftest"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11);
}
