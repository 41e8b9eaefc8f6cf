use std::io::Write;
use std::process::{Command, Output};

fn obstructor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obstructor"))
        .args(args)
        .env_remove("OBSTRUCTOR_WINDOW")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn analyze_exit_codes() {
    assert_eq!(obstructor(&["analyze", "--degrees=-1,-1,-1"]).status.code(), Some(10));
    assert_eq!(obstructor(&["analyze", "--degrees", "2", "3", "4"]).status.code(), Some(0));
    assert_eq!(obstructor(&["analyze", "--genus", "1", "--degrees", "0,0,0"]).status.code(), Some(20));
    assert_eq!(obstructor(&["analyze"]).status.code(), Some(2));
    assert_eq!(obstructor(&["analyze", "--degrees", "x"]).status.code(), Some(2));
}

#[test]
fn analyze_json_has_witness() {
    let o = obstructor(&["analyze", "--json", "--degrees=-1,-1,-1"]);
    let v = json(&o);
    assert_eq!(v["verdict"]["status"], "SupportsExotic");
    assert_eq!(v["verdict"]["rule"], "rank3-p1");
    assert_eq!(v["witness"]["verified"], true);
    assert_eq!(v["alpha"]["rank"], 3);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["analyze", "--json", "--balanced", "4", "-1"][..],
        &["analyze", "--genus", "2", "--degrees", "0,0,1"][..],
        &["sweep", "--json", "--rank", "3", "--range", "-1", "0", "--check-alpha"][..],
    ] {
        assert_eq!(obstructor(args).stdout, obstructor(args).stdout);
    }
}

#[test]
fn spec_file_input() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"genus": 2, "degrees": [0, 1, 0], "triviality_flags": ["trivial", "nontrivial", "trivial"]}}"#).unwrap();
    let o = obstructor(&["analyze", "--json", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"]["rule"], "nonneg-low-degree");
    assert_eq!(v["spec"]["degrees"], serde_json::json!([0, 1, 0]));
}

#[test]
fn bad_spec_file_reports_field_path() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"genus": 1, "degrees": [0, 2], "triviality_flags": ["unknown", "trivial"]}}"#).unwrap();
    let o = obstructor(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("triviality_flags[1]"), "{err}");
}

#[test]
fn sweep_cube_and_balanced() {
    let v = json(&obstructor(&["sweep", "--json", "--rank", "3", "--range", "-2", "0"]));
    assert_eq!(v["summary"]["rows"], 27);
    assert_eq!(v["summary"]["supports_exotic"], 1);

    let v = json(&obstructor(&["sweep", "--json", "--balanced-rank", "4", "--range", "-3", "-1"]));
    let statuses: Vec<_> = v["rows"].as_array().unwrap().iter().map(|r| r["status"].clone()).collect();
    assert_eq!(statuses, vec!["Good", "Good", "SupportsExotic"]);

    let v = json(&obstructor(&["sweep", "--json", "--box=0:1,3:2"]));
    assert_eq!(v["rows"], serde_json::json!([]));

    let o = obstructor(&["sweep", "--rank", "8", "--range", "-20", "20"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_listing() {
    let o = obstructor(&["oracle", "-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("h1 = 1  basis [z^-1]"));
    let v = json(&obstructor(&["oracle", "5", "--json"]));
    assert_eq!((v["h0"].as_u64(), v["h1"].as_u64()), (Some(6), Some(0)));
}

#[test]
fn window_flag_and_env() {
    assert_eq!(obstructor(&["oracle", "5", "--window", "3"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_obstructor"))
        .args(["oracle", "5", "--json"])
        .env("OBSTRUCTOR_WINDOW", "9")
        .output()
        .unwrap();
    assert_eq!(json(&o)["window"], 9);
    let o = Command::new(env!("CARGO_BIN_EXE_obstructor"))
        .args(["oracle", "5"])
        .env("OBSTRUCTOR_WINDOW", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exotic_subcommand() {
    let o = obstructor(&["exotic", "--json", "--degrees=-1,-1,-1"]);
    assert_eq!(o.status.code(), Some(10));
    let v = json(&o);
    assert_eq!(v["alpha_rank"], 3);
    assert_eq!(v["split_image_zero"], true);

    let o = obstructor(&["exotic", "--degrees=0,-1,-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rank 0"));

    assert_eq!(obstructor(&["exotic", "--genus", "1", "--degrees=-1,-1,-1"]).status.code(), Some(2));
}
