use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn iquo(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iquo"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn setup() -> TempDir {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    assert!(
        iquo(p, &["make", "example", "--index", "2", "-o", "s1.sgp"])
            .status
            .success()
    );
    assert!(iquo(p, &["make", "brandt", "--index", "2", "-o", "b2.sgp"])
        .status
        .success());
    fs::write(p.join("null2.sgp"), "2 0\n0 0\n0 0\n# 1 a\n").unwrap();
    dir
}

#[test]
fn check_exit_codes() {
    let dir = setup();
    let o = iquo(dir.path(), &["check", "s1.sgp"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in ["A PASS", "B PASS", "C PASS", "D PASS", "D_dual FAIL"] {
        assert!(text.contains(line), "{text}");
    }
    let o = iquo(dir.path(), &["check", "null2.sgp"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("D FAIL witness a\n"));
    let o = iquo(dir.path(), &["check", "s1.sgp", "--where", "A,D_dual"]);
    assert_eq!(o.status.code(), Some(1));
    let o = iquo(dir.path(), &["check", "s1.sgp", "--where", "A,!D_dual"]);
    assert_eq!(o.status.code(), Some(0));
    let o = iquo(dir.path(), &["check", "s1.sgp", "--where", "A,Q"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quotient_then_iso() {
    let dir = setup();
    let p = dir.path();
    let o = iquo(p, &["quotient", "s1.sgp", "-o", "q.sgp"]);
    assert_eq!(o.status.code(), Some(0));
    let map = fs::read_to_string(p.join("q.sgp.map")).unwrap();
    assert!(map.starts_with("Q 0 (0,0)\n"));
    assert!(map.contains("theta (1,e,2) 2\n"));
    let o = iquo(p, &["iso", "q.sgp", "b2.sgp"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);

    fs::write(p.join("pins.txt"), "1 4\n").unwrap();
    let o = iquo(p, &["iso", "q.sgp", "b2.sgp", "--pin", "pins.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 4\n"));

    let o = iquo(p, &["quotient", "null2.sgp"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn not_isomorphic() {
    let dir = setup();
    let p = dir.path();
    assert!(iquo(p, &["make", "g0", "--group", "2", "-o", "c2z.sgp"])
        .status
        .success());
    assert!(
        iquo(p, &["make", "union", "c2z.sgp", "c2z.sgp", "-o", "u.sgp"])
            .status
            .success()
    );
    let o = iquo(p, &["iso", "b2.sgp", "u.sgp"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NOT-ISOMORPHIC\n");
}

#[test]
fn validate_reports() {
    let dir = setup();
    let p = dir.path();
    fs::write(p.join("bad.sgp"), "3 0\n0 0 0\n0 0 1\n0 2 0\n").unwrap();
    let o = iquo(p, &["validate", "bad.sgp", "--max-witnesses", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "INVALID\nASSOCIATIVITY 1 2 1\n...\n");
    fs::write(p.join("broken.sgp"), "2 0\n0 x\n").unwrap();
    let o = iquo(p, &["validate", "broken.sgp"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:3"));
    assert_eq!(iquo(p, &["validate", "missing.sgp"]).status.code(), Some(2));
    assert_eq!(stdout(&iquo(p, &["validate", "b2.sgp"])), "VALID 5\n");
}

#[test]
fn decompose_writes_components() {
    let dir = setup();
    let p = dir.path();
    assert!(iquo(p, &["make", "g0", "--group", "2", "-o", "c2z.sgp"])
        .status
        .success());
    assert!(
        iquo(p, &["make", "union", "b2.sgp", "c2z.sgp", "-o", "u.sgp"])
            .status
            .success()
    );
    let o = iquo(p, &["decompose", "u.sgp", "-o", "parts"]);
    assert_eq!(o.status.code(), Some(0));
    let manifest = fs::read_to_string(p.join("parts/manifest.txt")).unwrap();
    assert_eq!(
        manifest,
        "component_1.sgp 0 1 2 3 4\ncomponent_2.sgp 0 5 6\n"
    );
    let o = iquo(p, &["iso", "parts/component_1.sgp", "b2.sgp"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(iquo(p, &["decompose", "s1.sgp"]).status.code(), Some(1));
}

#[test]
fn enumerate_and_selftest() {
    let dir = setup();
    let p = dir.path();
    let o = iquo(p, &["enumerate", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("3 0\n").count(), 20);
    let o = iquo(p, &["enumerate", "--order", "4", "--where", "A B C D"]);
    assert_eq!(stdout(&o).matches("4 0\n").count(), 25);
    assert_eq!(
        iquo(p, &["enumerate", "--order", "5"]).status.code(),
        Some(2)
    );
    let o = iquo(p, &["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn reports_are_deterministic() {
    let dir = setup();
    let p = dir.path();
    for args in [
        &["relations", "s1.sgp"][..],
        &["analyze", "b2.sgp"],
        &["abundance", "s1.sgp"],
        &["check", "b2.sgp"],
    ] {
        let a = iquo(p, args);
        let b = iquo(p, args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
    }
    let o = iquo(p, &["relations", "s1.sgp"]);
    assert!(stdout(&o).contains("R* {0} {(1,e,1) (1,e,2)}\n"));
}
