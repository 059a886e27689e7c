//! End-to-end checks of the binary: output schemas, exit-status contract,
//! and CSV/JSON value agreement.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptspectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn spectrum_csv_reproduces_pt_levels() {
    let out = run(&[
        "spectrum",
        "--preset",
        "pt-inverted",
        "--g",
        "1",
        "--levels",
        "2",
        "--r0",
        "5",
        "--step",
        "0.001",
        "--format",
        "csv",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "potential,a,level,energy,residual,iterations,converged"
    );
    let energies: Vec<f64> = lines
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(energies.len(), 2);
    assert!((energies[0] - 1.47714975).abs() < 1e-5);
    assert!((energies[1] - 6.00338608).abs() < 1e-5);
}

#[test]
fn csv_and_json_encode_identical_values() {
    let args = [
        "spectrum", "--preset", "massless-quartic", "--g", "1", "--levels", "2", "--r0", "5",
        "--step", "0.002",
    ];
    let csv_out = run(&[&args[..], &["--format", "csv"]].concat());
    let json_out = run(&[&args[..], &["--format", "json"]].concat());
    assert!(csv_out.status.success() && json_out.status.success());

    let csv_text = stdout(&csv_out);
    let csv_energies: Vec<f64> = csv_text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let json_energies: Vec<f64> = parsed
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["energy"].as_f64().unwrap())
        .collect();
    assert_eq!(csv_energies.len(), json_energies.len());
    for (a, b) in csv_energies.iter().zip(&json_energies) {
        assert!(
            (a - b).abs() <= 1e-15 * a.abs().max(1.0),
            "csv {a} vs json {b}"
        );
    }
}

#[test]
fn partition_closed_form_and_quadrature() {
    let out = run(&["partition", "--case", "Z3", "--g", "1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = &v.as_array().unwrap()[0];
    assert!((row["value_re"].as_f64().unwrap() - 2.5636933520408476).abs() < 1e-8);
    assert_eq!(row["method"], "closed-form");
    assert!(row["est_error"].as_f64().unwrap() < 1e-10);

    let out = run(&["partition", "--case", "Z8", "--g", "1", "--quadrature", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = &v.as_array().unwrap()[0];
    assert!((row["value_re"].as_f64().unwrap() + 1.2254167024651776).abs() < 1e-8);
    assert_eq!(row["method"], "composite-simpson");

    let out = run(&["partition", "--case", "Z2N6", "--N", "1", "--g", "1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = &v.as_array().unwrap()[0];
    assert_eq!(row["case"], "Z2N6[N=1]");
    assert!((row["value_re"].as_f64().unwrap() + 0.08988678906355653).abs() < 1e-10);
}

#[test]
fn partition_z1_requires_quadrature() {
    let out = run(&["partition", "--case", "Z1", "--g", "1", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("quadrature"), "stderr: {err}");

    let out = run(&["partition", "--case", "Z1", "--g", "1", "--m", "1", "--quadrature"]);
    assert!(out.status.success());
}

#[test]
fn mk_series_row() {
    let out = run(&[
        "mk", "--k", "0", "--m", "1.4142135623730951", "--g", "4", "--imag", "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = &v.as_array().unwrap()[0];
    assert!((row["energy_real"].as_f64().unwrap() + 3.875).abs() < 1e-12);
    assert!((row["imag_magnitude"].as_f64().unwrap() - 1.1586583622931476).abs() < 1e-10);
    assert_eq!(row["q0"], 1);
}

#[test]
fn contour_json_shape() {
    let out = run(&["contour", "--delta", "2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["theta_l"].as_f64().unwrap() + 5.0 * std::f64::consts::PI / 6.0).abs() < 1e-14);
    assert!((v["theta_r"].as_f64().unwrap() + std::f64::consts::PI / 6.0).abs() < 1e-14);
    assert_eq!(v["h"].as_f64().unwrap(), 5e-4);
    let left = v["polyline_left"].as_array().unwrap();
    assert_eq!(left.len(), 65);
    // rays end at the origin
    let last = left.last().unwrap().as_array().unwrap();
    assert_eq!((last[0].as_f64().unwrap(), last[1].as_f64().unwrap()), (0.0, 0.0));
}

#[test]
fn conjecture_multicomponent_schema() {
    let out = run(&["conjecture", "--suite", "multicomponent", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert_eq!(row["quantity"], "partition");
        assert!(row["lhs"]["re"].is_number() && row["rhs"]["im"].is_number());
        assert!(row["log_form_gap"].as_f64().unwrap() > 0.0);
        // the branch average reproduces the PT value here
        assert_eq!(row["verdict"], "holds");
    }
}

#[test]
fn reproduce_table1_is_clean() {
    let out = run(&["reproduce", "--table", "1", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 21); // header + 20 cells
    for line in text.lines().skip(1) {
        assert!(line.contains("true"), "cell not within printed digits: {line}");
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    // unknown preset: configuration error
    let out = run(&["spectrum", "--preset", "nonesuch", "--g", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // domain error: negative coupling
    let out = run(&["partition", "--case", "Z3", "--g", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    // injected numerical failure: a single secant iteration cannot converge
    let out = run(&[
        "spectrum",
        "--preset",
        "massless-quartic",
        "--g",
        "1",
        "--levels",
        "1",
        "--r0",
        "4",
        "--step",
        "0.002",
        "--max-iter",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // unknown flags are rejected by the parser
    let out = run(&["spectrum", "--preset", "v3", "--g", "1", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_potential() {
    let dir = std::env::temp_dir().join("ptspectra-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("well.cfg");
    std::fs::write(&path, "a = 1\nc2 = 1.0 # harmonic well\nc4 = 0\ndelta = 0\n").unwrap();
    let out = run(&[
        "spectrum",
        "--config",
        path.to_str().unwrap(),
        "--levels",
        "2",
        "--e-hi",
        "4.5",
        "--r0",
        "8",
        "--step",
        "0.002",
        "--format",
        "csv",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let energies: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert!((energies[0] - 1.0).abs() < 1e-8);
    assert!((energies[1] - 3.0).abs() < 1e-8);
}
