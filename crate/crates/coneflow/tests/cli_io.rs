//! End-to-end runs of the installed binary: configuration files in, CSV
//! snapshots out, snapshots back in through verification and classification,
//! and the documented exit codes on the failure paths.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coneflow"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("coneflow_it_{}_{name}", std::process::id()))
}

const MODE_CONFIG: &str = "\
family = powermode
lambda = 1.5
c1 = 0.9
c2 = -0.4
domain = sector
alpha = 0
beta = 3.141592653589793
rmin = 0.5
rmax = 2.0
nr = 12
ntheta = 32
";

const SWIRL_CONFIG: &str = "\
family = rotlog
c1 = 0.8
c2 = 1.3
domain = sector
alpha = 0
beta = 3.141592653589793
";

#[test]
fn list_names_every_family() {
    let out = run(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["constant", "linear", "quadratic", "powermode", "rotlog", "shearx", "sheary"] {
        assert!(text.contains(name), "family listing misses {name}:\n{text}");
    }
}

#[test]
fn sample_verify_classify_round_trip() {
    let cfg = temp_path("mode.cfg");
    let csv = temp_path("mode.csv");
    std::fs::write(&cfg, MODE_CONFIG).unwrap();

    let out = run(&["sample", "--config", cfg.to_str().unwrap(), "--output", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "sample failed: {}", stdout(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("x,y,u1,u2,p,w"));
    assert_eq!(text.lines().count(), 1 + 12 * 32);

    let sector = ["--domain", "sector", "--alpha", "0", "--beta", "3.141592653589793"];
    let mut verify = vec!["verify", "--input", csv.to_str().unwrap()];
    verify.extend_from_slice(&sector);
    let out = run(&verify);
    assert_eq!(out.status.code(), Some(0), "verify failed: {}", stdout(&out));

    let mut classify = vec!["classify", "--input", csv.to_str().unwrap()];
    classify.extend_from_slice(&sector);
    let out = run(&classify);
    assert_eq!(out.status.code(), Some(0), "classify failed: {}", stdout(&out));
    let text = stdout(&out).to_lowercase();
    assert!(text.contains("powermode"), "classification output:\n{text}");
    assert!(text.contains("1.5"), "exponent missing from output:\n{text}");
}

#[test]
fn json_report_lines_are_machine_readable() {
    let cfg = temp_path("report.cfg");
    std::fs::write(&cfg, MODE_CONFIG).unwrap();
    let out = run(&["--report", "verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut seen = 0;
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let v: serde_json::Value = serde_json::from_str(line)
            .unwrap_or_else(|e| panic!("line is not JSON ({e}): {line}"));
        assert_eq!(v["pass"], serde_json::json!(true), "failed check in {line}");
        assert!(v["check"].is_string());
        seen += 1;
    }
    assert!(seen >= 3, "expected several checks, saw {seen}:\n{text}");
}

#[test]
fn tampering_is_detected_end_to_end() {
    let cfg = temp_path("tamper.cfg");
    let csv = temp_path("tamper.csv");
    std::fs::write(&cfg, MODE_CONFIG).unwrap();
    let out = run(&["sample", "--config", cfg.to_str().unwrap(), "--output", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
    let mut fields: Vec<String> = lines[40].split(',').map(str::to_owned).collect();
    let bumped: f64 = fields[2].parse::<f64>().unwrap() + 1e-3;
    fields[2] = format!("{bumped:.16e}");
    lines[40] = fields.join(",");
    std::fs::write(&csv, lines.join("\n") + "\n").unwrap();

    let sector = ["--domain", "sector", "--alpha", "0", "--beta", "3.141592653589793"];
    let mut verify = vec!["verify", "--input", csv.to_str().unwrap()];
    verify.extend_from_slice(&sector);
    let out = run(&verify);
    assert_eq!(out.status.code(), Some(2), "tampered verify: {}", stdout(&out));

    let mut classify = vec!["classify", "--input", csv.to_str().unwrap()];
    classify.extend_from_slice(&sector);
    let out = run(&classify);
    assert_eq!(out.status.code(), Some(3), "tampered classify: {}", stdout(&out));
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["verify"]).status.code(), Some(1));
    assert_eq!(run(&["holder", "--config", "/nonexistent.cfg", "--gamma", "1.5"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--help"]).status.code(), Some(0));
}

#[test]
fn negative_numeric_flags_parse() {
    let out = run(&[
        "euler-solve", "--a", "-0.75", "--b", "-0.3", "--c", "0.4", "--d", "-1.25",
        "--c1", "-1.0", "--c2", "0.5", "--radii", "0.5,1,2",
    ]);
    assert_eq!(out.status.code(), Some(0), "euler-solve: {}", stdout(&out));
    assert!(stdout(&out).contains("ok"), "{}", stdout(&out));
}

#[test]
fn swirl_reports_blowup_holder_and_rigidity() {
    let cfg = temp_path("swirl.cfg");
    std::fs::write(&cfg, SWIRL_CONFIG).unwrap();
    let path = cfg.to_str().unwrap();
    assert_eq!(run(&["blowup", "--config", path]).status.code(), Some(0));
    let out = run(&["holder", "--config", path, "--gamma", "0.9"]);
    assert_eq!(out.status.code(), Some(0), "holder: {}", stdout(&out));
    assert_eq!(run(&["liouville", "--config", path]).status.code(), Some(0));
    let out = run(&["pressure-recover", "--config", path]);
    assert_eq!(out.status.code(), Some(0), "pressure: {}", stdout(&out));
}
