use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graph-amplitude"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn verify_passes_and_lists_checks() {
    let o = run(&["verify", "--N", "6"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = stdout(&o);
    assert!(text.contains("boundary_of_boundary: pass"));
    assert!(text.contains("eq11_regression: pass"));
    assert!(text.contains("seed: 42"));
    assert!(text.contains("resolved sum limits"));
}

#[test]
fn verify_rejects_odd_size() {
    assert_eq!(run(&["verify", "--N", "7"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--N", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "--N", "12", "--seed", "42", "--format", "json"]);
    let b = run(&["verify", "--N", "12", "--seed", "42", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report = json(&a);
    assert_eq!(report["config"]["seed"], 42);
    assert_eq!(report["all_pass"], true);
    assert_eq!(report["resolved_sum_limits"]["spatial_terms"], 6);
}

#[test]
fn twinslit_sweep_row_count() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pattern.csv");
    let o = run(&[
        "twinslit",
        "--N",
        "8",
        "--e-T",
        "1",
        "--e-x",
        "1.5",
        "--sweep",
        "0:2:0.01",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "e_x_tilde,delta_phi,intensity,n_value,is_maximum");
    assert_eq!(lines.len(), 202);
    let summary = stdout(&o);
    assert!(summary.contains("maxima: 2"));
    assert!(summary.contains("first n values: [4, 0]"));
}

#[test]
fn twinslit_degenerate_sweep() {
    let o = run(&[
        "twinslit",
        "--N",
        "8",
        "--e-T",
        "1",
        "--e-x",
        "1.5",
        "--sweep",
        "1.5:1.5:0.1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows, vec!["1.5,0,4,0,true"]);
}

#[test]
fn twinslit_json_echoes_config() {
    let o = run(&[
        "twinslit", "--N", "8", "--e-T", "1", "--e-x", "1.5", "--sweep", "0:1:0.5", "--format",
        "json", "--lambda", "2", "--h", "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["config"]["command"], "twinslit");
    assert_eq!(v["config"]["lambda"], 2.0);
    assert_eq!(v["config"]["alpha"], 1.5);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    // pattern does not depend on λ or h
    let plain = json(&run(&[
        "twinslit", "--N", "8", "--e-T", "1", "--e-x", "1.5", "--sweep", "0:1:0.5", "--format",
        "json",
    ]));
    for (a, b) in v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .zip(plain["rows"].as_array().unwrap())
    {
        let (x, y) = (
            a["delta_phi"].as_f64().unwrap(),
            b["delta_phi"].as_f64().unwrap(),
        );
        assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0));
    }
}

#[test]
fn twinslit_rejects_raw_scaling_and_bad_sweep() {
    let base = ["twinslit", "--N", "8", "--e-T", "1", "--e-x", "1.5"];
    let with = |extra: &[&str]| {
        let mut a: Vec<&str> = base.to_vec();
        a.extend_from_slice(extra);
        run(&a).status.code()
    };
    assert_eq!(with(&["--sweep", "0:1:0.1", "--alpha", "1"]), Some(2));
    assert_eq!(with(&["--sweep", "1:0:0.1"]), Some(2));
    assert_eq!(with(&["--sweep", "0:1"]), Some(2));
    assert_eq!(with(&["--sweep", "0:1:0.1", "--lambda", "-1"]), Some(2));
}

#[test]
fn amplitude_zero_links() {
    let o = run(&["amplitude", "--N", "6", "--links", "0,0,0,0,0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["phase_total"], 0.0);
    assert_eq!(v["N"], 6);
    assert_eq!(v["config"]["command"], "amplitude");
    for key in [
        "phi_s",
        "phi_t",
        "phi_st",
        "prefactor_magnitude",
        "prefactor_phase",
        "resolved_sum_limits",
        "residuals",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn amplitude_uniform_links() {
    let o = run(&[
        "amplitude",
        "--N",
        "6",
        "--e-T",
        "1",
        "--e-x",
        "1.5",
        "--alpha",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    // α²((N/2) e_x² + (N-2) e_T²) = 4 (6.75 + 4)
    let inner = v["phi_s"].as_f64().unwrap() + v["phi_t"].as_f64().unwrap();
    assert!((inner - 43.0).abs() < 1e-12);
    assert!(v["phi_st"].as_f64().unwrap().abs() < 1e-12);
    assert!((v["phase_total"].as_f64().unwrap() + 21.5).abs() < 1e-12);
}

#[test]
fn amplitude_link_count_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("links.txt");
    fs::write(&path, "1 2 3\n4 5 6\n").unwrap();
    let o = run(&[
        "amplitude",
        "--N",
        "6",
        "--links-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("needs 7"));

    fs::write(&path, "1 2 3\n4 5 6\n7\n").unwrap();
    assert_eq!(
        run(&[
            "amplitude",
            "--N",
            "6",
            "--links-file",
            path.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
}

#[test]
fn amplitude_scaling_groups_are_exclusive() {
    let o = run(&[
        "amplitude",
        "--N",
        "6",
        "--e-T",
        "1",
        "--e-x",
        "1",
        "--beta",
        "2",
        "--lambda",
        "1",
        "--h",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "amplitude",
        "--N",
        "6",
        "--e-T",
        "1",
        "--e-x",
        "1",
        "--lambda",
        "2",
        "--h",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["config"]["scaling"]["beta"], 0.25);
}

#[test]
fn amplitude_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "amplitude",
        "--N",
        "6",
        "--links",
        "1,-1,2,0.5,0,1,-2",
        "--dump-dir",
        dir.path().to_str().unwrap(),
        "--eigenvectors",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let a = fs::read_to_string(dir.path().join("kernel_A.csv")).unwrap();
    assert_eq!(a.lines().count(), 6);
    assert_eq!(
        fs::read_to_string(dir.path().join("kernel_J.csv"))
            .unwrap()
            .lines()
            .count(),
        6
    );
    assert_eq!(
        fs::read_to_string(dir.path().join("eigenvalues.csv"))
            .unwrap()
            .lines()
            .count(),
        6
    );
    assert!(dir.path().join("eigenvectors.csv").exists());
    let side: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("kernel.json")).unwrap()).unwrap();
    assert_eq!(side["N"], 6);
    assert_eq!(side["edge_count"], 7);
}

#[test]
fn ladder_dump_operators() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "ladder",
        "--fixture",
        "--dump-operators",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        fs::read_to_string(dir.path().join("boundary1.csv")).unwrap(),
        "-1,0,0,-1,0,0,0\n1,-1,-1,0,0,0,0\n0,0,1,0,0,0,-1\n0,0,0,1,-1,0,0\n0,1,0,0,1,-1,0\n0,0,0,0,0,1,1\n"
    );
    assert_eq!(
        fs::read_to_string(dir.path().join("boundary2.csv")).unwrap(),
        "-1,0\n-1,1\n0,-1\n1,0\n1,0\n0,1\n0,-1\n"
    );
    let v = json(&o);
    assert_eq!(v["graph"]["edges"][1], serde_json::json!([2, 5]));

    let o = run(&["ladder", "--N", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["graph"]["edges"].as_array().unwrap().len(), 13);
    assert_eq!(run(&["ladder", "--N", "5"]).status.code(), Some(2));
}

#[test]
fn sweep_csv_is_seeded() {
    let args = ["sweep", "--n-list", "4,8", "--samples", "3", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 7);
    assert!(String::from_utf8_lossy(&a.stderr).contains("seed: 11"));
    let c = run(&["sweep", "--n-list", "4,8", "--samples", "3", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}
