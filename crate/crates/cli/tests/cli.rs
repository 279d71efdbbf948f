use std::io::Write;
use std::process::{Command, Output};

fn nilmetric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilmetric"))
        .args(args)
        .env_remove("NILMETRIC_SEED")
        .env_remove("NILMETRIC_OUTPUT")
        .output()
        .expect("binary runs")
}

fn file_with(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn triangle_graph_admits_with_witness() {
    let g = file_with("a b\nb c\nc a\n");
    let out = nilmetric(&["--output", "json", "graph", g.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["analysis"]["verdict"]["kind"], "admits");
    assert_eq!(
        r["analysis"]["verdict"]["witness"]
            .as_array()
            .unwrap()
            .len(),
        6
    );
    assert_eq!(r["agrees_with_prediction"], true);
}

#[test]
fn free_2_2_is_refuted_at_j1() {
    let out = nilmetric(&["--output", "json", "free", "2", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    let cert = &r["analysis"]["verdict"]["certificate"];
    assert_eq!(cert["kind"], "dim_series");
    assert_eq!(cert["j"], 1);
}

#[test]
fn e6_g3_obstructions_only() {
    let out = nilmetric(&[
        "--output",
        "json",
        "parabolic",
        "E6:g3",
        "--obstructions-only",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["analysis"]["verdict"]["kind"], "refuted");
    assert_eq!(r["details"]["top_layer_dim"], 5);
    assert!(r["analysis"]["solver"].is_null());
}

#[test]
fn reports_are_byte_identical_and_verify() {
    let a = nilmetric(&["--output", "json", "parabolic", "B3:g3"]);
    let b = nilmetric(&["--output", "json", "parabolic", "B3:g3"]);
    assert_eq!(a.stdout, b.stdout);
    let report = file_with(std::str::from_utf8(&a.stdout).unwrap());
    let v = nilmetric(&["--verify", report.path().to_str().unwrap()]);
    assert_eq!(
        v.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&v.stderr)
    );
    assert!(String::from_utf8_lossy(&v.stdout).contains("verified admits"));
}

#[test]
fn tampered_report_fails_verification() {
    let out = nilmetric(&["--output", "json", "free", "4", "2"]);
    let mut r = stdout_json(&out);
    r["analysis"]["verdict"]["certificate"]["j"] = serde_json::json!(2);
    r["analysis"]["obstruction"]["j"] = serde_json::json!(2);
    let f = file_with(&r.to_string());
    let v = nilmetric(&["--verify", f.path().to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn malformed_inputs_exit_2() {
    let bad = file_with(r#"{"dim":2,"brackets":[{"i":1,"j":2,"terms":[{"k":1,"c":"1/0"}]}]}"#);
    let out = nilmetric(&["analyze", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1/0"));
    assert_eq!(nilmetric(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nilmetric(&["parabolic", "Q7:g1"]).status.code(), Some(2));
    assert_eq!(
        nilmetric(&["--mc-trials", "0", "free", "3", "2"])
            .status
            .code(),
        Some(2)
    );
    let looped = file_with("a a\n");
    assert_eq!(
        nilmetric(&["graph", looped.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn seed_override_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_nilmetric"))
        .args(["--output", "json", "free", "3", "2"])
        .env("NILMETRIC_SEED", "77")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["config"]["seed"], 77);
}

#[test]
fn series_of_the_eight_dimensional_example() {
    let sc = file_with(
        r#"{"dim":8,"brackets":[
            {"i":1,"j":2,"terms":[{"k":7,"c":"1"}]},
            {"i":2,"j":3,"terms":[{"k":8,"c":"1"}]},
            {"i":3,"j":4,"terms":[{"k":5,"c":"1"}]},
            {"i":1,"j":4,"terms":[{"k":6,"c":"1"}]}]}"#,
    );
    let v = file_with(
        r#"{"ambient_dim":8,"basis":[["1","0","0","0","0","0","0","0"],["0","1","0","0","0","0","0","0"]]}"#,
    );
    let out = nilmetric(&[
        "--output",
        "json",
        "series",
        sc.path().to_str().unwrap(),
        "--subspace",
        v.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["rows"][0]["lower"], 3);
    assert_eq!(r["rows"][0]["upper"], 4);
    assert_eq!(r["rows"][0]["holds"], false);
}

#[test]
fn small_scans_agree() {
    let g = nilmetric(&[
        "scan-graphs",
        "--max-vertices",
        "4",
        "--union-max-vertices",
        "5",
    ]);
    assert_eq!(g.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&g.stdout).contains("0 disagreements"));
    let p = nilmetric(&["scan-parabolics", "--types", "A,B,G2", "--max-rank", "3"]);
    assert_eq!(p.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&p.stdout).contains("G2:g1"));
}
