use std::path::Path;
use std::process::{Command, Output};

fn frobkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobkit"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn algebra_commands() {
    let out = frobkit(&["gb", "--ideal", "data/xy.txt"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "x\ny\n");
    let out = frobkit(&["colon", "--ideal", "data/xy_product.txt", "--by", "data/x.txt"]);
    assert_eq!(stdout(&out), "y\n");
    assert_eq!(stdout(&frobkit(&["dim", "--ideal", "data/xy.txt"])), "0\n");
    let out = frobkit(&["height", "--ideal", "data/cusp.txt"]);
    assert_eq!(stdout(&out), "1\n");
    assert!(stderr(&out).contains("equidimensional"));
}

#[test]
fn threshold_commands() {
    let out = frobkit(&["fpt", "--ideal", "data/cusp.txt", "--p", "7", "--emax", "1"]);
    assert_eq!(
        stdout(&out),
        "ideal_id,kind,p,e,q,nu,lower,upper,certified\ncusp,fpt,7,1,7,5,5/7,6/7,true\n"
    );
    let out = frobkit(&["lce", "--ideal", "data/x.txt", "--p", "2", "--emax", "2"]);
    let nus: Vec<String> = stdout(&out).lines().skip(1).map(|l| l.split(',').nth(5).unwrap().to_string()).collect();
    assert_eq!(nus, ["1", "3"]);
    let out = frobkit(&["tau", "--ideal", "data/x.txt", "--p", "2", "--t", "1"]);
    assert_eq!(stdout(&out), "t,e,certified,generator\n1,1,true,x\n");
    let out = frobkit(&["fpure", "--ideal", "data/x.txt", "--p", "3", "--t", "1"]);
    assert_eq!(stdout(&out), "true\n");
}

#[test]
fn link_command() {
    let out = frobkit(&["link", "--ideal", "data/x.txt"]);
    assert!(stdout(&out).ends_with("J:\n  u11\n"));
    let out = frobkit(&["link", "--ideal", "data/xy.txt"]);
    assert!(stdout(&out).contains("u12*u21 + 32002*u11*u22"));
    assert_eq!(frobkit(&["link", "--ideal", "data/unit.txt"]).status.code(), Some(2));
}

#[test]
fn sweep_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = frobkit(&[
        "sweep", "--ideal", "data/xy.txt", "--primes", "2,3", "--emax", "2", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true,true")));
    let md = std::fs::read_to_string(dir.path().join("report.md")).unwrap();
    assert!(md.starts_with("# Generic linkage comparison: maximal ideal\n"));
    assert!(md.contains("| 3 | 2 | 9 |"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    for args in [
        &["sweep", "--ideal", "data/twox.txt", "--primes", "2", "--out", path][..],
        &["sweep", "--ideal", "data/xy.txt", "--primes", "2", "--emax", "0", "--out", path],
        &["fpt", "--ideal", "data/cusp.txt", "--p", "4"],
        &["gb", "--ideal", "missing.txt"],
        &["no-such-command"],
    ] {
        let out = frobkit(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&out).is_empty());
    }
    assert!(!Path::new(path).join("report.csv").exists());
}

#[test]
fn budget_errors_exit_with_three() {
    let out = frobkit(&["--max-basis", "1", "gb", "--ideal", "data/m2.txt", "--order", "lex"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("budget"));
}
