use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.dga"))
}

fn hss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hss")).args(args).output().expect("binary runs")
}

fn hss_on(command: &str, file: &Path, extra: &[&str]) -> Output {
    let mut args = vec![command, file.to_str().unwrap()];
    args.extend_from_slice(extra);
    hss(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_input(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn validate_e3_succeeds() {
    let o = hss_on("validate", &fixture("e3_q"), &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("== validation =="), "{out}");
    assert!(out.trim_end().ends_with("PASS"));
}

#[test]
fn invalid_dga_is_a_check_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_input(&dir, "bad.dga", "[field]\ncharacteristic = 0\n[basis]\n1 0\nx 2\ny 3\n[d]\nx = y\n[mul]\nx*x = y\n");
    let o = hss_on("validate", &path, &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
    assert!(stderr(&o).contains("check failed"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_input(&dir, "c4.dga", "[field]\ncharacteristic = 4\n[basis]\n1 0\n");
    let o = hss_on("validate", &path, &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("characteristic must be 0 or prime"), "{err}");
    assert!(err.contains("c4.dga:line 2"), "{err}");

    let o = hss_on("hh", &dir.path().join("missing.dga"), &[]);
    assert_eq!(o.status.code(), Some(2));

    let o = hss_on("hh", &fixture("e1_q"), &["--window", "-1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = hss(&["frobnicate", fixture("e1_q").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = hss_on("hh", &fixture("e1_q"), &["--format", "svg"]);
    assert_eq!(o.status.code(), Some(2), "svg without pages");

    let o = hss_on("hh", &fixture("e3_q"), &["--window", "30", "--budget", "100"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn ss_on_exterior_notes_collapse_at_two() {
    let o = hss_on("ss", &fixture("e1_q"), &["--pages", "4", "--window", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("collapsed at page 2"), "{out}");
    assert!(out.contains("E^4"), "{out}");
}

#[test]
fn check_all_on_ground_field_passes() {
    for name in ["e0_q", "e0_f2"] {
        let o = hss_on("check-all", &fixture(name), &[]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        assert!(stdout(&o).trim_end().ends_with("PASS"));
    }
}

#[test]
fn every_command_runs_on_every_fixture() {
    for name in ["e0_q", "e1_f2", "e2_q", "e3_f2"] {
        for cmd in ["validate", "homology", "hh", "ext", "shear", "ss"] {
            let o = hss_on(cmd, &fixture(name), &["--window", "6"]);
            assert_eq!(o.status.code(), Some(0), "{cmd} {name}: {}", stderr(&o));
        }
    }
}

#[test]
fn output_is_deterministic() {
    for format in ["text", "data", "svg"] {
        let a = hss_on("ss", &fixture("e3_f2"), &["--format", format]);
        let b = hss_on("ss", &fixture("e3_f2"), &["--format", format]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn data_output_is_json() {
    let o = hss_on("check-all", &fixture("e2_f2"), &["--format", "data", "--window", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "check-all");
    assert_eq!(v["window"], 6);
    assert_eq!(v["passed"], true);
    assert!(v["input"].as_str().unwrap().starts_with("sha256:"));
    let kinds: Vec<&str> = v["sections"].as_array().unwrap().iter().map(|s| s["kind"].as_str().unwrap()).collect();
    assert!(kinds.contains(&"pages") && kinds.contains(&"checks"), "{kinds:?}");
}

#[test]
fn svg_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e3.svg");
    let o = hss_on("ss", &fixture("e3_q"), &["--format", "svg", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"id="page-1""#));
    assert!(svg.contains("marker-end"), "E3 has arrows");
}

#[test]
fn help_exits_zero() {
    let o = hss(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("check-all"));
}
