//! End-to-end runs of the binary: exit codes, text output, and the JSON
//! reports it writes.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn mlca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlca"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_rule(dir: &Path, name: &str, body: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(body).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_reports_the_full_invariant_set() {
    let dir = tempfile::tempdir().unwrap();
    let rule = write_rule(
        dir.path(),
        "gauss.json",
        &json!({"p": 2, "r": 1, "entries": [["1 + Z"]]}),
    );
    let out_path = dir.path().join("report.json");
    let out = mlca(&[
        "analyze",
        "--rule",
        &rule,
        "--json-out",
        out_path.to_str().unwrap(),
    ]);
    let text = stdout_of(&out);
    assert!(text.contains("a = 1"), "{text}");

    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["confined"], json!(true));
    assert_eq!(report["invariants"]["a"], json!(1));
    assert_eq!(report["invariants"]["varpi"], json!(1));
    assert_eq!(report["invariants"]["t"]["1"], json!(1));
    for row in report["counts"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap();
        let log = row["log"].as_u64().unwrap();
        assert_eq!(log, n - (1 << n.trailing_zeros()), "n = {n}");
    }
    assert_eq!(report["zeta"]["kind"], json!("natural-boundary-candidate"));
    let orbit_counts = report["orbits"]["counts"].as_array().unwrap();
    assert_eq!(orbit_counts[..3], [json!("1"), json!("0"), json!("1")]);
    assert_eq!(report["oracle"]["agree"], json!(true));
}

#[test]
fn orbit_counts_match_the_irreducible_polynomial_table() {
    let dir = tempfile::tempdir().unwrap();
    let rule = write_rule(
        dir.path(),
        "shift.json",
        &json!({"p": 2, "r": 1, "entries": [["Z"]]}),
    );
    let out_path = dir.path().join("orbits.json");
    let out = mlca(&[
        "orbits",
        "--rule",
        &rule,
        "--lmax",
        "6",
        "--json-out",
        out_path.to_str().unwrap(),
    ]);
    let text = stdout_of(&out);
    assert!(text.contains("2, 1, 2, 3, 6, 9"), "{text}");

    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["counts"], json!(["2", "1", "2", "3", "6", "9"]));
    assert!(report["max_residual"].is_string());
}

#[test]
fn zeta_classification_distinguishes_the_two_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let shift = write_rule(
        dir.path(),
        "shift.json",
        &json!({"p": 2, "r": 1, "entries": [["Z"]]}),
    );
    let gauss = write_rule(
        dir.path(),
        "gauss.json",
        &json!({"p": 2, "r": 1, "entries": [["1 + Z"]]}),
    );
    let text = stdout_of(&mlca(&["zeta", "--rule", &shift, "--order", "8"]));
    assert!(text.contains("zeta: rational"), "{text}");
    assert!(text.contains("1, 2, 4, 8, 16"), "{text}");
    let text = stdout_of(&mlca(&["zeta", "--rule", &gauss]));
    assert!(text.contains("zeta: natural-boundary-candidate"), "{text}");
}

#[test]
fn singular_instances_exit_with_an_analysis_error() {
    let dir = tempfile::tempdir().unwrap();
    let identity = write_rule(
        dir.path(),
        "identity.json",
        &json!({"p": 2, "r": 1, "entries": [["1"]]}),
    );
    let out = mlca(&["fixcount", "--rule", &identity, "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        String::from_utf8_lossy(&out.stderr).starts_with("error:"),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn parse_errors_exit_with_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write_rule(
        dir.path(),
        "broken.json",
        &json!({"p": 2, "r": 1, "entries": [["Z^"]]}),
    );
    let out = mlca(&["analyze", "--rule", &broken]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("entry (1,1)"), "{stderr}");
    assert!(stderr.contains("line 1, column 3"), "{stderr}");
}

#[test]
fn non_prime_moduli_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let composite = write_rule(
        dir.path(),
        "composite.json",
        &json!({"p": 4, "r": 1, "entries": [["Z"]]}),
    );
    let out = mlca(&["analyze", "--rule", &composite]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_arguments_exit_with_a_usage_error() {
    let out = mlca(&[]);
    assert_eq!(out.status.code(), Some(2));
    let out = mlca(&["fixcount", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let dir = tempfile::tempdir().unwrap();
    let rule = write_rule(
        dir.path(),
        "fib.json",
        &json!({"p": 3, "r": 2, "entries": [["Z", "1"], ["1", "0"]]}),
    );
    let mut runs = Vec::new();
    for name in ["first.json", "second.json"] {
        let out_path = dir.path().join(name);
        let out = mlca(&[
            "analyze",
            "--rule",
            &rule,
            "--seed",
            "7",
            "--json-out",
            out_path.to_str().unwrap(),
        ]);
        let text = stdout_of(&out);
        let mut report: Value =
            serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
        report["timing_ms"] = json!(0);
        runs.push((text, report));
    }
    assert_eq!(runs[0].0, runs[1].0);
    assert_eq!(runs[0].1, runs[1].1);
}

#[test]
fn companion_output_feeds_back_as_a_rule_file() {
    let dir = tempfile::tempdir().unwrap();
    let recursion = write_rule(
        dir.path(),
        "recursion.json",
        &json!({
            "p": 2,
            "r": 1,
            "entries": [["1 + Z"]],
            "blocks": [[["1 + Z"]], [["Z^-1"]]]
        }),
    );
    let out = mlca(&["companion", "--rule", &recursion]);
    let text = stdout_of(&out);

    let emitted: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(emitted["p"], json!(2));
    assert_eq!(emitted["r"], json!(2));
    assert_eq!(emitted["entries"][0], json!(["1 + Z", "Z^-1"]));
    assert_eq!(emitted["entries"][1], json!(["1", "0"]));

    let companion_path = dir.path().join("companion.json");
    std::fs::write(&companion_path, &text).unwrap();
    let out = mlca(&["analyze", "--rule", companion_path.to_str().unwrap()]);
    stdout_of(&out);
}

#[test]
fn simulation_traces_the_shift() {
    let dir = tempfile::tempdir().unwrap();
    let shift = write_rule(
        dir.path(),
        "shift.json",
        &json!({"p": 2, "r": 1, "entries": [["Z"]]}),
    );
    let text = stdout_of(&mlca(&[
        "simulate", "--rule", &shift, "--config", "1,0,0", "--steps", "2",
    ]));
    assert!(text.contains("t = 0: 1,0,0"), "{text}");
    assert!(text.contains("t = 1: 0,0,1"), "{text}");
    assert!(text.contains("t = 2: 0,1,0"), "{text}");

    let out = mlca(&["simulate", "--rule", &shift, "--config", "1,x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verification_passes_on_a_one_band_rule() {
    let dir = tempfile::tempdir().unwrap();
    let gauss = write_rule(
        dir.path(),
        "gauss.json",
        &json!({"p": 2, "r": 1, "entries": [["1 + Z"]]}),
    );
    let out_path = dir.path().join("verify.json");
    let out = mlca(&[
        "verify",
        "--rule",
        &gauss,
        "--nmax",
        "6",
        "--json-out",
        out_path.to_str().unwrap(),
    ]);
    let text = stdout_of(&out);
    assert!(text.contains("all checks pass"), "{text}");

    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["all_passed"], json!(true));
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3 * 4);
    assert!(rows.iter().all(|row| row["exhaustive"] == json!(true)));
}
