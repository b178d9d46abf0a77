use std::path::Path;
use std::process::{Command, Output};

use curvature_cli::tensor_file::{Tensor, TensorFile};
use tempfile::TempDir;

fn curvature(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvature"))
        .args(args)
        .env_remove("CURVATURE_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn generate(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let path = dir.path().join(name).to_string_lossy().into_owned();
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let o = curvature(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn generate_then_check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let cc = generate(
        &dir,
        "cc.json",
        &["constant-curvature", "--signature", "1,3", "--c", "2.0"],
    );
    assert_eq!(curvature(&["validate", &cc]).status.code(), Some(0));
    let o = curvature(&["check", "osserman", &cc, "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not a proof"));

    let pe = generate(&dir, "pe.json", &["paper-example", "--signature", "2,2"]);
    let o = curvature(&["check", "szabo", &pe]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("nonzero but squares to zero"));

    let pert = generate(
        &dir,
        "pert.json",
        &[
            "constant-curvature",
            "--signature",
            "1,3",
            "--c",
            "2.0",
            "--perturb",
            "0.1",
            "--seed",
            "9",
        ],
    );
    let o = curvature(&["check", "null-trace2", &pert]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witnesses:") && stdout(&o).contains("vector ("));
}

#[test]
fn preconditions_exit_two() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.json");
    let o = curvature(&[
        "generate",
        "nilpotent-szabo",
        "--signature",
        "1,3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p >= 2 and q >= 2"));

    let cc = generate(&dir, "cc.json", &["constant-curvature", "--signature", "1,3"]);
    assert_eq!(curvature(&["check", "szabo", &cc]).status.code(), Some(2));
    assert_eq!(
        curvature(&["check", "osserman", &cc, "--k", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(curvature(&["check", "nonsense", &cc]).status.code(), Some(2));
    let o = curvature(&["demo", "null-limit", &cc, "--x1", "1,0.5,0,0", "--x2", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_file_reports_field() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"format_version":1,"signature":{"p":0,"q":3},"kind":"curv4","storage":"sparse","entries":[[0,1,1,7,1.0]]}"#,
    )
    .unwrap();
    let o = curvature(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("entries[0][3]"));

    std::fs::write(&path, "{\n  \"format_version\": 1,\n  \"kind\": curv4\n}").unwrap();
    let o = curvature(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn round_trip_is_bit_exact() {
    let dir = TempDir::new().unwrap();
    for (kind, storage) in [
        ("random-curv4", "dense"),
        ("random-curv5", "dense"),
        ("random-curv4", "sparse"),
    ] {
        let path = generate(
            &dir,
            &format!("{kind}-{storage}.json"),
            &[kind, "--signature", "1,2", "--seed", "4", "--storage", storage],
        );
        let first = TensorFile::read(Path::new(&path)).unwrap();
        let again = dir.path().join("again.json");
        first.write(&again).unwrap();
        let second = TensorFile::read(&again).unwrap();
        let bits = |t: &Tensor| t.components().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&first.tensor), bits(&second.tensor));
        assert_eq!(
            std::fs::read_to_string(&path).unwrap(),
            std::fs::read_to_string(&again).unwrap()
        );
        assert_eq!(
            stdout(&curvature(&["validate", &path])),
            stdout(&curvature(&["validate", again.to_str().unwrap()]))
        );
    }
}

#[test]
fn structured_reports_and_env_tolerance() {
    let dir = TempDir::new().unwrap();
    let pert = generate(
        &dir,
        "pert.json",
        &[
            "constant-curvature",
            "--signature",
            "1,3",
            "--perturb",
            "1e-6",
            "--seed",
            "2",
        ],
    );
    let o = curvature(&["check", "einstein", &pert, "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["report"]["verdict"], "fail");
    assert_eq!(o.status.code(), Some(1));

    let o = Command::new(env!("CARGO_BIN_EXE_curvature"))
        .args(["check", "einstein", &pert, "--format", "structured"])
        .env("CURVATURE_TOL", "1e-4")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["tolerance"], 1e-4);
    assert_eq!(o.status.code(), Some(0));

    let out = dir.path().join("report.json");
    let o = curvature(&[
        "check",
        "einstein",
        &pert,
        "--format",
        "structured",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(stdout(&o).starts_with("check: einstein"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["command"], "check");
}

#[test]
fn spectrum_and_demos() {
    let dir = TempDir::new().unwrap();
    let sphere = generate(&dir, "s.json", &["constant-curvature", "--signature", "0,3"]);
    let o = curvature(&["spectrum", &sphere, "--at", "1,0,0", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let charpoly: Vec<f64> = v["report"]["charpoly"]
        .as_array()
        .unwrap()
        .iter()
        .map(|z| z[0].as_f64().unwrap())
        .collect();
    assert_eq!(charpoly, vec![1.0, -2.0, 1.0, 0.0]);
    assert_eq!(
        curvature(&["spectrum", &sphere, "--kplane", "2", "--seed", "1"])
            .status
            .code(),
        Some(0)
    );

    let r5 = generate(&dir, "r5.json", &["random-curv5", "--signature", "1,3", "--seed", "8"]);
    assert_eq!(
        curvature(&["demo", "boost-coefficients", &r5, "--i", "2", "--j", "2"])
            .status
            .code(),
        Some(0)
    );
    let cc = generate(&dir, "cc.json", &["constant-curvature", "--signature", "1,3"]);
    let o = curvature(&[
        "demo",
        "null-limit",
        &cc,
        "--x1",
        "1,1,0,0",
        "--x2",
        "-0.5,0.5,0,0",
        "--k",
        "2",
        "--power",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        curvature(&["demo", "vanishing-order", &cc, "--k", "3", "--seed", "4"])
            .status
            .code(),
        Some(0)
    );
    let pe = generate(&dir, "pe.json", &["nilpotent-szabo", "--signature", "2,2"]);
    assert_eq!(
        curvature(&["demo", "vanishing-order", &pe, "--k", "2"]).status.code(),
        Some(0)
    );
}
