//! End-to-end tests of the command-line surface.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spheroidal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gen_basis_x_symbolic_json() {
    let out = run(&["gen-basis", "--family", "X", "--nmax", "2", "--shape", "sym"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // 3 + 5 + 7 elements up to degree 2
    assert_eq!(v.as_array().unwrap().len(), 15);
    assert_eq!(v[0]["family"], "X");
    assert_eq!(v[0]["qpoly"]["e0"][0]["tau"][0][0], "1");
}

#[test]
fn gen_basis_z_needs_a_shape() {
    let out = run(&["gen-basis", "--family", "Z", "--nmax", "3", "--shape", "sym"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gen-basis", "--family", "Z", "--nmax", "3", "--shape", "1/4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9); // n² at degree 3
}

#[test]
fn gen_basis_pretty_reads_like_a_table() {
    let out = run(&[
        "gen-basis", "--family", "X", "--nmax", "2", "--shape", "sym", "--format", "pretty",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("X[2,0,+] = (3*x0^2 - 3/2*x1^2 - 3/2*x2^2 - 3/5*mu^2)"));
    assert!(text.contains("(3*x0*x1)*e1"));
}

#[test]
fn gen_basis_rejects_unknown_family_and_csv() {
    assert_eq!(run(&["gen-basis", "--family", "Q", "--nmax", "1"]).status.code(), Some(2));
    let out = run(&[
        "gen-basis", "--family", "V", "--nmax", "1", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_dims_and_tables_pass() {
    let out = run(&["verify", "dims", "--nmax", "3", "--shapes", "0,1/4"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS"));
    let out = run(&["verify", "tables"]);
    assert!(out.status.success());
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    assert_eq!(run(&["verify", "bogus"]).status.code(), Some(2));
}

#[test]
fn verify_json_format_is_machine_readable() {
    let out = run(&["verify", "recurrence", "--nmax", "4", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn decompose_round_trips_a_basis_element() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("x21m.json");
    let output = dir.path().join("out.json");

    // write X[2,1,-] at tau = 1/4 as the input
    let gen = run(&[
        "gen-basis", "--family", "X", "--nmax", "2", "--shape", "1/4",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&gen)).unwrap();
    let x21m = v
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["n"] == 2 && e["m"] == 1 && e["parity"] == "-")
        .unwrap();
    std::fs::write(&input, serde_json::to_string(&x21m["qpoly"]).unwrap()).unwrap();

    let out = run(&[
        "decompose",
        "--input",
        input.to_str().unwrap(),
        "--nmax",
        "3",
        "--shape",
        "1/4",
        "--out",
        output.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let result: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(result["monogenic"], x21m["qpoly"]);
    assert_eq!(result["residual"]["e0"].as_array().unwrap().len(), 0);
    assert_eq!(result["antimonogenic"]["e1"].as_array().unwrap().len(), 0);
    let coeffs = result["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 1);
    assert_eq!(coeffs[0][0], "Y:-+:2,1");
    assert_eq!(coeffs[0][1], "1");
}

#[test]
fn decompose_rejects_non_harmonic_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.json");
    // e0 = x0² is not harmonic
    let bad = serde_json::json!({
        "e0": [{"a": 2, "b": 0, "c": 0, "tau": [["1", "1"]]}],
        "e1": [], "e2": [], "e3": []
    });
    std::fs::write(&input, bad.to_string()).unwrap();
    let out = run(&[
        "decompose", "--input", input.to_str().unwrap(), "--nmax", "2", "--shape", "1/4",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("e0"), "stderr: {err}");
    assert!(err.contains("Laplacian") || err.contains("harmonic"), "stderr: {err}");
}

#[test]
fn eval_emits_csv() {
    let out = run(&[
        "eval", "--element", "V:2,0,+", "--shape", "1/4", "--points", "5", "--seed", "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x0,x1,x2,e0,e1,e2,e3");
    assert_eq!(lines.count(), 5);
}

#[test]
fn mc_emits_json_and_is_deterministic() {
    let args = [
        "mc", "--f", "X:1,0,+", "--g", "X:1,0,+", "--shape", "1/4", "--samples", "20000",
        "--seed", "9",
    ];
    let a = run(&args);
    assert!(a.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert!(v["estimate"].as_f64().unwrap() > 0.0);
    assert!(v["stderr"].as_f64().unwrap() > 0.0);
    assert_eq!(v["n"], 20000);
    assert_eq!(v["seed"], 9);
    let b = run(&args);
    assert_eq!(stdout(&a), stdout(&b), "same seed must give identical output");
}

#[test]
fn dims_prints_the_table() {
    let out = run(&["dims", "--nmax", "2", "--shape", "-1/2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("27/27"));
    assert!(text.contains("ok"));
}

#[test]
fn gen_basis_output_is_byte_identical_across_runs() {
    let args = ["gen-basis", "--family", "V", "--nmax", "3", "--shape", "-1"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}
