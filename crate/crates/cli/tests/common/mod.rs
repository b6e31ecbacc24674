#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub const MODELS: [&str; 6] =
    ["dephasing_z", "isotropic_e", "not_cp_c", "redundant_b", "single_a", "precession_c"];

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
}

fn case(name: impl Into<String>, args: &[&str]) -> Case {
    Case { name: name.into(), args: args.iter().map(|s| s.to_string()).collect() }
}

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture(model: &str) -> String {
    format!("tests/fixtures/{model}.json")
}

/// Every golden case: each subcommand on each fixture plus error paths.
pub fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    let commands: [(&str, &[&str]); 9] = [
        ("check", &["check"]),
        ("convert_a", &["convert", "--to", "A"]),
        ("convert_b", &["convert", "--to", "B"]),
        ("convert_e", &["convert", "--to", "E"]),
        ("convert_gks", &["convert", "--to", "GKS"]),
        ("reduce", &["reduce"]),
        ("asymptote", &["asymptote"]),
        ("evolve_expm", &["evolve", "--t-max", "1", "--dt", "0.5", "--method", "expm"]),
        ("evolve_rk4", &["evolve", "--t-max", "2", "--dt", "0.25", "--method", "rk4"]),
    ];
    for model in MODELS.iter().chain(&["malformed"]) {
        let path = fixture(model);
        for (name, args) in commands {
            let mut a = vec!["--model", path.as_str()];
            a.extend_from_slice(args);
            out.push(case(format!("{model}.{name}"), &a));
        }
    }
    out.push(case("usage.no_model", &["check"]));
    out.push(case("usage.no_command", &["--model", "tests/fixtures/dephasing_z.json"]));
    out.push(case("usage.bad_target", &["--model", "tests/fixtures/dephasing_z.json", "convert", "--to", "D"]));
    out.push(case("usage.missing_file", &["--model", "tests/fixtures/absent.json", "check"]));
    out.push(case(
        "usage.zero_step",
        &["--model", "tests/fixtures/dephasing_z.json", "evolve", "--t-max", "1", "--dt", "0"],
    ));
    out.push(case(
        "usage.negative_time",
        &["--model", "tests/fixtures/dephasing_z.json", "evolve", "--t-max", "-1"],
    ));
    out
}

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

impl Run {
    /// Golden-file text: exit code, stdout, stderr.
    pub fn render(&self) -> String {
        format!(
            "exit: {}\n--- stdout\n{}--- stderr\n{}",
            self.code,
            String::from_utf8_lossy(&self.stdout),
            String::from_utf8_lossy(&self.stderr)
        )
    }
}

pub fn run(args: &[String]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_lindblad2"))
        .args(args)
        .current_dir(manifest_dir())
        .env_remove("LINDBLAD2_TOL")
        .output()
        .expect("binary runs");
    Run { code: out.status.code().expect("exit code"), stdout: out.stdout, stderr: out.stderr }
}

pub fn golden_path(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(format!("{name}.txt"))
}

/// Exit code implied by the case name: 1 for the NotCP model, 2 for usage
/// and parse errors and for commands that need a non-zero dissipator.
pub fn expected_code(name: &str) -> i32 {
    let (model, cmd) = name.split_once('.').unwrap();
    match model {
        "malformed" | "usage" => 2,
        "not_cp_c" => 1,
        "precession_c" if !matches!(cmd, "check" | "evolve_expm" | "evolve_rk4") => 2,
        _ => 0,
    }
}

/// Compares one case against its golden file and checks a repeat run is
/// byte-identical. Returns a description of the first problem.
pub fn check_case(c: &Case, bless: bool) -> Result<(), String> {
    let first = run(&c.args);
    let second = run(&c.args);
    if first.stdout != second.stdout || first.stderr != second.stderr || first.code != second.code {
        return Err(format!("{}: repeat run differs", c.name));
    }
    let want = expected_code(&c.name);
    if first.code != want {
        return Err(format!("{}: exit {} (want {want})\n{}", c.name, first.code, first.render()));
    }
    let path = golden_path(&c.name);
    let text = first.render();
    if bless {
        std::fs::write(&path, &text).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let golden = std::fs::read_to_string(&path)
        .map_err(|e| format!("{}: {e} (set LINDBLAD2_BLESS=1 to create)", path.display()))?;
    if golden != text {
        return Err(format!("{}: output differs from {}\n{text}", c.name, path.display()));
    }
    Ok(())
}

pub fn bless() -> bool {
    std::env::var_os("LINDBLAD2_BLESS").is_some()
}

pub fn check_all() -> Vec<String> {
    cases().iter().filter_map(|c| check_case(c, bless()).err()).collect()
}

