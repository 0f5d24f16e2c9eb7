use std::path::PathBuf;
use std::process::{Command, Output};

fn dgpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgpair"))
        .args(args)
        .current_dir(workspace())
        .output()
        .expect("binary runs")
}

fn workspace() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("dgpair-exit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn parse_error_reports_position_and_exits_2() {
    let path = scratch("bad-key.dgp", "dgla L\nbasis: a:1\nfoo: a -> a\n");
    let out = dgpair(&["validate", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3, column 1"), "{err}");
}

#[test]
fn missing_file_exits_2() {
    let out = dgpair(&["validate", "/nonexistent/pair.dgp"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_catalog_entry_exits_2() {
    let out = dgpair(&["validate", "--catalog", "no-such-entry"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn valid_fixture_passes() {
    let out = dgpair(&["validate", "fixtures/gl2-wedge.dgp"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn lift_of_obstructed_witness_exits_1() {
    let out = dgpair(&["lift", "fixtures/obstructed-pair-dual.dgp"]);
    assert_eq!(out.status.code(), Some(1));
    let out = dgpair(&["obstruct", "fixtures/obstructed-pair-dual.dgp"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "transfer",
        "--catalog",
        "gl2-wedge",
        "--arity",
        "3",
        "--seed",
        "11",
    ];
    let a = dgpair(&args);
    let b = dgpair(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn catalog_emit_matches_pinned_fixtures() {
    for name in ["abelian-line", "gl2-wedge", "obstructed-pair", "heisenberg-acyclic"] {
        let out = dgpair(&["catalog", "emit", name]);
        assert_eq!(out.status.code(), Some(0));
        let pinned = std::fs::read(workspace().join(format!("fixtures/{name}.dgp"))).unwrap();
        assert_eq!(out.stdout, pinned, "{name}");
    }
}
