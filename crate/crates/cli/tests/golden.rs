mod common;

use common::*;

#[test]
fn golden_outputs() {
    let failures = check_all();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("traj.csv");
    let base: Vec<String> = ["--model", "tests/fixtures/dephasing_z.json", "evolve", "--t-max", "1", "--dt", "0.5", "--method", "expm"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let piped = run(&base);
    let mut args = base.clone();
    args.extend(["--out".to_string(), csv.display().to_string()]);
    let written = run(&args);
    assert_eq!(written.code, 0);
    assert_eq!(std::fs::read(&csv).unwrap(), piped.stdout);
    let summary = String::from_utf8(written.stdout).unwrap();
    assert!(summary.starts_with("samples: 3\n"), "{summary}");
}

#[test]
fn tolerance_from_environment() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_lindblad2"))
        .args(["--model", "tests/fixtures/dephasing_z.json", "check"])
        .current_dir(manifest_dir())
        .env("LINDBLAD2_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("tolerance: 1.000e-6\n"));

    let out = std::process::Command::new(env!("CARGO_BIN_EXE_lindblad2"))
        .args(["--model", "tests/fixtures/dephasing_z.json", "check"])
        .current_dir(manifest_dir())
        .env("LINDBLAD2_TOL", "abc")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
