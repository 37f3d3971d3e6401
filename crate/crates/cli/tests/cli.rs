use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/corpus").join(name)
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(name)
}

fn ogcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ogcat")).args(args).output().unwrap()
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn valid_files_exit_zero() {
    for f in ["three.cat", "pairs.dom", "proj.map", "set_rules.size", "three_skel.wit"] {
        let o = ogcat(&["validate", path(&corpus(f))]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stderr(&o));
        assert!(stdout(&o).starts_with("valid: "));
    }
}

#[test]
fn axiom_violation_exits_one_and_names_the_witness() {
    let o = ogcat(&["validate", path(&corpus("broken_assoc.cat"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("(x * x) * x != x * (x * x)"));
}

#[test]
fn parse_error_exits_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cat");
    std::fs::write(&bad, "category c\nobjects: a\nmorph f : a -> b\n").unwrap();
    let o = ogcat(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.cat:3:"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(ogcat(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(ogcat(&["validate", "/no/such/file.cat"]).status.code(), Some(3));
    let o = ogcat(&["skeleton", path(&corpus("pairs.dom"))]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(ogcat(&["skeleton", path(&corpus("three.cat")), "--tie-break", "dice"]).status.code(), Some(3));
}

#[test]
fn seeded_skeleton_is_reproducible() {
    let three = corpus("three.cat");
    let args = ["skeleton", path(&three), "--tie-break", "seed:7"];
    let (a, b) = (ogcat(&args), ogcat(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn skeleton_outputs_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let skel = dir.path().join("s.cat");
    let wit = dir.path().join("s.wit");
    let o = ogcat(&[
        "skeleton",
        path(&corpus("z2_groupoid.cat")),
        "--tie-break",
        "seed:7",
        "--output",
        skel.to_str().unwrap(),
        "--emit-witnesses",
        wit.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for f in [&skel, &wit] {
        let v = ogcat(&["validate", f.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
    }
    let expected = std::fs::read_to_string(corpus("z2_groupoid_skel.wit")).unwrap();
    assert_eq!(std::fs::read_to_string(&wit).unwrap(), expected);
}

#[test]
fn functor_category_file_validates() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.cat");
    let arrow = corpus("walking_arrow.cat");
    let o = ogcat(&["functor-cat", path(&arrow), path(&arrow), "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = ogcat(&["validate", out.to_str().unwrap()]);
    assert!(stdout(&v).contains("(3 objects"), "{}", stdout(&v));
}

#[test]
fn counts_on_small_inputs() {
    let arrow = corpus("walking_arrow.cat");
    let o = ogcat(&["functors", path(&arrow), path(&arrow)]);
    assert!(stdout(&o).starts_with("functors: 3\n"));
    let o = ogcat(&["nat-classes", path(&arrow), path(&arrow)]);
    assert!(stdout(&o).starts_with("classes: 3\n"));
    let o = ogcat(&["functions", path(&corpus("index.dom")), path(&corpus("letters.dom"))]);
    assert_eq!(o.status.code(), Some(0));
    let o = ogcat(&["sections", path(&corpus("proj.map")), path(&corpus("fibers.dom")), path(&corpus("index.dom"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("sections: "));
}

#[test]
fn size_trace_matches_golden() {
    let o = ogcat(&["size", "--trace", path(&golden("size_rules.size"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(golden("size_rules.trace")).unwrap());
    let o = ogcat(&["size", path(&golden("contradiction.size"))]);
    assert_eq!(o.status.code(), Some(1));
    let expected = std::fs::read_to_string(golden("contradiction.trace")).unwrap();
    assert_eq!(stderr(&o), format!("error: {expected}"));
}
