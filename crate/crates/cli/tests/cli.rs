use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../examples").join(name)
}

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fefferman-lab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn pw_extend_prints_metric_and_euler_field() {
    let f = example("g122.struct");
    let o = lab(&["pw-extend", path(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("g[x1,p1] = 1"), "{text}");
    assert!(text.contains("k[p1] = 2*p1"), "{text}");

    let o = lab(&["pw-extend", path(&f), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "pw-extend");
    assert_eq!(v["sections"].as_array().unwrap().len(), 2);
}

#[test]
fn curvature_of_flat_input_is_zero() {
    let o = lab(&["curvature", path(&example("flat2.struct"))]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("(identically zero)").count(), 6, "{text}");
}

#[test]
fn curvature_json_lists_projective_and_conformal_sections() {
    let o = lab(&["curvature", path(&example("curved3.struct")), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let titles: Vec<&str> = v["sections"].as_array().unwrap().iter().map(|s| s["title"].as_str().unwrap()).collect();
    assert!(titles.iter().any(|t| t.starts_with("projective Weyl")));
    assert!(titles.iter().any(|t| t.starts_with("conformal Cotton")));
}

#[test]
fn verify_flat_file_passes() {
    let o = lab(&["verify", path(&example("flat2.struct"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("37 passed, 0 failed"));
}

#[test]
fn fibre_scale_fails_the_reduced_scale_checks() {
    let o = lab(&["verify", path(&example("scaled.struct"))]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let failing = text.lines().find(|l| l.starts_with("failing checks:")).unwrap();
    assert!(failing.contains("chi_vol parallel"), "{failing}");
    assert!(failing.contains("Schouten strictly horizontal"), "{failing}");
}

#[test]
fn saved_reports_render_identically() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.json");
    let o = lab(&["verify", "--n", "2", "--seed", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let table = stdout(&o);
    assert!(table.contains("seed 4"));

    let saved = std::fs::read_to_string(&out).unwrap();
    let o = lab(&["report", out.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), saved);
    let o = lab(&["report", out.to_str().unwrap()]);
    assert_eq!(stdout(&o), table);
}

#[test]
fn kostant_reports_the_worked_example() {
    let o = lab(&["kostant", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS  worked example codifferential"), "{text}");
    assert!(text.contains("10 passed, 0 failed"));
}

#[test]
fn usage_errors_exit_with_two() {
    let flat = example("flat2.struct");
    for args in [
        vec!["verify", path(&flat), "--max-degree", "1"],
        vec!["verify", path(&flat), "--n", "3"],
        vec!["verify"],
        vec!["pw-extend", "/nonexistent/file.struct"],
        vec!["kostant", "--n", "1"],
    ] {
        let o = lab(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("error"), "{args:?}");
    }
}

#[test]
fn malformed_structure_points_at_the_expression() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.struct");
    std::fs::write(&f, "n = 2\n[christoffel]\n\"1,1,2\" = \"x1 + * x2\"\n").unwrap();
    let o = lab(&["verify", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("3:17:"), "{err}");
}

#[test]
fn unsupported_report_version_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("old.json");
    std::fs::write(&f, "{\"format_version\": 0, \"command\": \"verify\", \"subject\": \"x\", \"reports\": []}").unwrap();
    let o = lab(&["report", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("format_version 0"));
}
