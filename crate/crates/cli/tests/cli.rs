use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pibcomp"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let f = fixture("example1.json");
    let one = run(&["--jobs", "1", "cubic", path(&f)]);
    let two = run(&["--jobs", "2", "cubic", path(&f)]);
    assert!(one.status.success(), "{}", stderr(&one));
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn out_flag_writes_the_same_document() {
    let f = fixture("example1.json");
    let dest = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("example1-result.json");
    let o = run(&["cubic", path(&f), "--out", path(&dest)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read(&dest).unwrap(),
        run(&["cubic", path(&f)]).stdout
    );
}

#[test]
fn pipeline_and_degree_must_match() {
    let o = run(&["cubic", path(&fixture("example2.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`cubic-degree`"), "{}", stderr(&o));

    let o = run(&["quartic-tc", path(&fixture("example1.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`quartic-degree`"), "{}", stderr(&o));
}

#[test]
fn quartic_needs_its_aux_field() {
    let mut v: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("example2.json")).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("aux_field");
    let dest = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("example2-no-aux.json");
    std::fs::write(&dest, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&["quartic-tc", path(&dest)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`aux-field-present`"), "{}", stderr(&o));
}

#[test]
fn index_command() {
    let f = fixture("example1.json");
    let o = run(&["index", path(&f), "--element", "0,0,0,2,1,-1,19"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["certification"][0]["abs_index"], 1);
    assert_eq!(doc["certification"][0]["power_basis"], true);

    for bad in ["1,2", "0,0,0,2,1,-1,0", "a,b,c,d,e,f,g"] {
        let o = run(&["index", path(&f), "--element", bad]);
        assert_eq!(o.status.code(), Some(2), "{bad}");
        assert!(stderr(&o).contains("`element-shape`"), "{}", stderr(&o));
    }
}

#[test]
fn verify_command() {
    for name in ["example1.json", "example2.json"] {
        let o = run(&["verify", path(&fixture(name))]);
        assert!(o.status.success(), "{name}: {}", stderr(&o));
        let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(doc["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["passed"] == true));
    }
}

#[test]
fn invalid_files_exit_with_2() {
    let o = run(&["cubic", path(&fixture("invalid/target-norm-matches.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let o = run(&["cubic", "/nonexistent/field.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--precision", "2", "cubic", path(&fixture("example1.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn precision_and_bound_flags() {
    let f = fixture("example1.json");
    let o = run(&["--precision", "1/1000", "--bound", "3", "cubic", path(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["completeness"]["exponent_bound"], 3);
}
