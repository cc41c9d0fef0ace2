use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_signforge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn frustration_of_k4() {
    let o = run(&["frustration", path(&data("k4-minus-all.sg"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ell=2\n"), "{}", stdout(&o));
}

#[test]
fn frustration_json() {
    let o = run(&["--json", "frustration", path(&data("c-minus-1.sg"))]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ell"], 1);
    assert_eq!(v["schema"], 1);
}

#[test]
fn catalog_verifies() {
    let o = run(&["catalog", "verify", "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn unknown_catalog_entry_is_a_usage_error() {
    let o = run(&["catalog", "show", "petersen"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&o.stderr).contains("candidates"));
}

#[test]
fn certify_exit_codes() {
    let k4 = data("k4-minus-all.sg");
    assert_eq!(run(&["certify", path(&k4), "--k", "2"]).status.code(), Some(0));
    assert_eq!(run(&["certify", path(&k4), "--k", "3"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("two.sg");
    // a negative loop plus a pendant positive edge is not critical
    std::fs::write(&f, "a a -\na b +\n").unwrap();
    assert_eq!(run(&["certify", f.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(run(&["bogus"]).status.code(), Some(64));
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.sg");
    std::fs::write(&f, "a b x\n").unwrap();
    assert_eq!(run(&["frustration", f.to_str().unwrap()]).status.code(), Some(64));
    assert_eq!(run(&["frustration", "/nonexistent/file.sg"]).status.code(), Some(64));
}

#[test]
fn guard_refusal() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e");
    let o = run(&["enumerate", "--k", "2", "--max-n", "12", "--max-edges", "30", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists());
}

#[test]
fn enumerate_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k2");
    let o = run(&[
        "enumerate", "--k", "2", "--max-n", "4", "--max-edges", "8", "--irreducible", "--out", path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert!(manifest.is_object());
    for i in 0..3 {
        assert!(out.join(format!("k2-{i:03}.sg")).exists());
    }
    assert!(!out.join("k2-003.sg").exists());
}

#[test]
fn construct_ladder_and_join() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("lad");
    let o = run(&["construct", "ladder", "2", "--planar", "-o", path(&stem)]);
    assert_eq!(o.status.code(), Some(0));
    let sg = dir.path().join("lad.sg");
    let rot = dir.path().join("lad.rot");
    assert!(sg.exists() && rot.exists());
    let o = run(&["certify", path(&sg), "--k", "3", "--method", "deletion"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let k4 = data("k4-minus-all.sg");
    let joined = dir.path().join("join.sg");
    let o = run(&["construct", "hjoin", path(&k4), "0", path(&k4), "0", "-o", path(&joined)]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["frustration", path(&joined)]);
    assert!(stdout(&o).starts_with("ell=3\n"), "{}", stdout(&o));
}

#[test]
fn faces_of_k4() {
    let o = run(&["faces", path(&data("k4-minus-all.sg")), path(&data("k4-minus-all.rot"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("faces=4"), "{}", stdout(&o));
}

#[test]
fn reduce_suppresses_degree_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("tri.sg");
    std::fs::write(&f, "a b +\nb c -\nc a +\n").unwrap();
    let o = run(&["reduce", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "c c -\n");
}
