//! End-to-end tests against the built binary: exit codes, wire formats,
//! byte determinism, and the verify command.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sidelnikov"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn field_json_is_deterministic() {
    let a = stdout(&["field", "--p", "3", "--m", "4", "--format", "json"]);
    let b = stdout(&["field", "--p", "3", "--m", "4", "--format", "json"]);
    assert_eq!(a, b);
    assert_eq!(a.trim(), r#"{"p":3,"m":4,"modulus":[1,0,1,1,1],"alpha":[1,0,1,0]}"#);
}

#[test]
fn field_errors_use_domain_exit_code() {
    let out = run(&["field", "--p", "4", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error[NotPrime]:"), "stderr: {err}");

    let out = run(&["field", "--p", "2", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error[EvenPrime]:"));
}

#[test]
fn usage_errors_exit_one() {
    let out = run(&["correlate", "--p", "3", "--m", "4", "--M", "4", "--c1", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sequence_text_format() {
    let text = stdout(&["sequence", "--p", "7", "--m", "1", "--M", "2"]);
    assert_eq!(text, "7 1 2 3\n0,0,1,0,1,1\n");
    let json = stdout(&["sequence", "--p", "7", "--m", "1", "--M", "2", "--format", "json"]);
    assert_eq!(json.trim(), r#"{"M":2,"v":6,"digits":[0,0,1,0,1,1]}"#);
}

#[test]
fn sequence_multiplier_zero_warns() {
    let out = run(&["sequence", "--p", "7", "--m", "1", "--M", "2", "--multiplier", "0"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "7 1 2 3\n0,0,0,0,0,0\n");
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning"));
}

#[test]
fn sequence_modulus_must_divide() {
    let out = run(&["sequence", "--p", "7", "--m", "1", "--M", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .starts_with("error[ModulusDoesNotDivide]:"));
}

#[test]
fn correlate_tau_zero_and_method_agreement() {
    let c0 = stdout(&[
        "correlate", "--p", "3", "--m", "4", "--M", "4", "--c1", "1", "--c2", "2", "--tau", "0",
    ]);
    assert!(c0.starts_with("C(0) = 0"), "got: {c0}");
    for tau in ["1", "17", "40", "79"] {
        let brute = stdout(&[
            "correlate", "--p", "3", "--m", "4", "--M", "4", "--c1", "1", "--c2", "2", "--tau",
            tau, "--method", "brute",
        ]);
        for method in ["closed", "pure"] {
            let other = stdout(&[
                "correlate", "--p", "3", "--m", "4", "--M", "4", "--c1", "1", "--c2", "2",
                "--tau", tau, "--method", method,
            ]);
            assert_eq!(brute, other, "tau={tau} method={method}");
        }
    }
}

#[test]
fn correlate_full_vector_csv() {
    let csv = stdout(&[
        "correlate", "--p", "7", "--m", "1", "--M", "3", "--c1", "1", "--c2", "2", "--format",
        "csv",
    ]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "tau,c0,c1,re,im"); // phi(3) = 2 coefficient columns
    assert_eq!(lines.len(), 7); // header + 6 shifts
    assert_eq!(lines[1], "0,0,0,0.000000,0.000000"); // C(0) = 0
}

#[test]
fn distribution_methods_agree_and_json_shape() {
    let mut outputs = Vec::new();
    for method in ["per-tau", "counting", "brute"] {
        let json = stdout(&[
            "distribution", "--p", "3", "--m", "4", "--M", "4", "--c1", "1", "--c2", "2",
            "--format", "json", "--method", method,
        ]);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["c1"], 1);
        assert_eq!(v["q"], 81);
        let total: u64 =
            v["entries"].as_array().unwrap().iter().map(|e| e["count"].as_u64().unwrap()).sum();
        assert_eq!(total, 79);
        assert_eq!(v["tau0"]["coeffs"], serde_json::json!([0, 0]));
        outputs.push((v["entries"].clone(), v["tau0"].clone()));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn jacobi_pure_formula() {
    let json = stdout(&[
        "jacobi", "--p", "3", "--m", "4", "--k", "4", "--a", "1", "--b", "2", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["method"], "pure_formula");
    assert_eq!(v["value"]["coeffs"], serde_json::json!([-9, 0]));
}

#[test]
fn gauss_trivial_conventions() {
    let json =
        stdout(&["gauss", "--p", "7", "--m", "1", "--k", "2", "--a", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    // the literal sum is −1, expressed at level lcm(2, 7) = 14
    assert_eq!(v["value"]["level"], 14);
    assert_eq!(v["value"]["coeffs"][0], -1);
    assert_eq!(v["value"]["re"], -1.0);
    assert_eq!(v["trivial_conventional"]["coeffs"], serde_json::json!([6]));
}

#[test]
fn cyclotomic_matrix_csv() {
    let csv =
        stdout(&["cyclotomic", "--p", "3", "--m", "4", "--k", "4", "--format", "csv"]);
    let expect = "u,v0,v1,v2,v3\n0,1,6,6,6\n1,6,6,4,4\n2,6,4,6,4\n3,6,4,4,6\n";
    assert_eq!(csv, expect);
    // brute force and the closed form give identical tables
    let brute = stdout(&[
        "cyclotomic", "--p", "3", "--m", "4", "--k", "4", "--format", "csv", "--method", "brute",
    ]);
    assert_eq!(csv, brute);
}

#[test]
fn report_gf81() {
    let json = stdout(&["report", "--p", "3", "--m", "4", "--M", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["family_size"], 3);
    assert_eq!(v["c_max"], 12.0);
    assert_eq!(v["shift_inequivalent"], true);
    assert_eq!(v["welch_le_c_max"], true);
    assert_eq!(v["c_max_le_upper"], true);
}

#[test]
fn verify_small_sweep_passes() {
    let out = run(&["verify", "--max-q", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("all checks passed"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn field_file_round_trip() {
    let dir = std::env::temp_dir();
    let spec_path: PathBuf = dir.join("sidelnikov_cli_test_field.json");
    let out_path: PathBuf = dir.join("sidelnikov_cli_test_seq.txt");
    let json = stdout(&["field", "--p", "3", "--m", "2", "--format", "json"]);
    std::fs::write(&spec_path, &json).unwrap();
    let via_file = stdout(&[
        "sequence",
        "--p",
        "999", // ignored: the field file wins
        "--m",
        "1",
        "--M",
        "4",
        "--field-file",
        spec_path.to_str().unwrap(),
    ]);
    let direct = stdout(&["sequence", "--p", "3", "--m", "2", "--M", "4"]);
    assert_eq!(via_file, direct);

    // --output writes the same bytes to a file, stdout stays empty
    let out = run(&[
        "sequence", "--p", "3", "--m", "2", "--M", "4", "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), direct);
    let _ = std::fs::remove_file(spec_path);
    let _ = std::fs::remove_file(out_path);
}

#[test]
fn explicit_modulus_and_alpha_are_validated() {
    // (x+1)^2 = x^2+2x+1 is reducible over F_3
    let out = run(&["field", "--p", "3", "--m", "2", "--modulus", "1,2,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error[ReducibleModulus]"));
    // constant 2 has order 2 in GF(9)
    let out = run(&[
        "field", "--p", "3", "--m", "2", "--modulus", "1,0,1", "--alpha", "2,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error[NotPrimitive]"));
    // alpha alone is rejected
    let out = run(&["field", "--p", "3", "--m", "2", "--alpha", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}
