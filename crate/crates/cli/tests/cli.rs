use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn write_tmp(name: &str, body: &str) -> PathBuf {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn swan(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_swan"));
    cmd.args(args).env_remove("SWAN_MAX_RANK");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

#[test]
fn explain_reports_bar_ranks() {
    let out = swan(&["explain", scenario("z3_point_bar.toml").to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    let s = text(&out.stdout);
    assert!(s.contains("bar resolution RG-ranks (p = 0..=4): [1, 2, 4, 8, 16]"), "{s}");
    assert!(s.contains("Borel level sizes (n = 0..=4): [1, 3, 9, 27, 81]"), "{s}");
}

#[test]
fn json_report_for_point() {
    let out = swan(&["run", scenario("z3_point_bar.toml").to_str().unwrap(), "--json"], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], true);
    let gc = &v["tasks"][0]["output"]["group_cohomology"]["values"];
    let got: Vec<&str> = gc.as_array().unwrap().iter().map(|m| m["text"].as_str().unwrap()).collect();
    assert_eq!(got, ["Z", "0", "Z/3", "0"]);
}

#[test]
fn empty_task_list_echoes_scenario() {
    let out = swan(&["run", scenario("empty_tasks.toml").to_str().unwrap(), "--json"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tasks"].as_array().unwrap().len(), 0);
    assert_eq!(v["scenario"]["group_order"], 3);
}

#[test]
fn max_page_limits_reported_pages() {
    let out = swan(&["run", scenario("z2_antipodal_hexagon.toml").to_str().unwrap(), "--json", "--max-page", "3"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let pages = v["tasks"][1]["output"]["swan_pages"]["pages"].as_array().unwrap();
    assert_eq!(pages.iter().map(|p| p["r"].as_u64().unwrap()).collect::<Vec<_>>(), [2, 3]);
}

#[test]
fn parse_error_exit_code() {
    let path = write_tmp("broken.toml", "name = \"x\"\n[group]\ncyclic = = 2\n");
    let out = swan(&["run", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(text(&out.stderr).contains("broken.toml:3:"), "{}", text(&out.stderr));
}

#[test]
fn missing_file_exit_code() {
    let out = swan(&["run", "/nonexistent/scenario.toml"], &[]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn validation_error_exit_code() {
    let path = write_tmp("bad_table.toml", "[group]\ntable = [[0, 1], [0, 1]]\n");
    let out = swan(&["run", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(4), "{}", text(&out.stderr));
}

#[test]
fn resource_limit_exit_code() {
    let out = swan(&["run", scenario("z3_point_bar.toml").to_str().unwrap()], &[("SWAN_MAX_RANK", "10")]);
    assert_eq!(out.status.code(), Some(5), "{}", text(&out.stderr));
    assert!(text(&out.stderr).contains("resource limit"));
}

#[test]
fn usage_error_exit_code() {
    let out = swan(&["frobnicate"], &[]);
    assert_eq!(out.status.code(), Some(2));
}
