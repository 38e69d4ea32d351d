use std::path::PathBuf;
use std::process::Command;

use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn relcirc(args: &[&str], dir: &TempDir) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_relcirc"))
        .args(args)
        .current_dir(dir.path())
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn files(entries: &[(&str, &str)]) -> TempDir {
    let dir = TempDir::new().unwrap();
    for (name, body) in entries {
        let path: PathBuf = dir.path().join(name);
        std::fs::write(path, body).unwrap();
    }
    dir
}

const LOOP: &str = "V b 1 0 10\nR r 1 2 5\nAM a 2 0\n";

#[test]
fn eq_and_leq_verdicts() {
    let dir = files(&[
        ("a.ckt", "R(2) ; R(3)"),
        ("b.ckt", "R(5)"),
        ("c.ckt", "R(6)"),
        ("zero.ckt", "zero"),
        ("free.ckt", "codiscard"),
    ]);
    let r = relcirc(&["eq", "a.ckt", "b.ckt"], &dir);
    assert_eq!((r.code, r.stdout.trim()), (0, "equal"));
    let r = relcirc(&["eq", "a.ckt", "c.ckt"], &dir);
    assert_eq!((r.code, r.stdout.trim()), (1, "not equal"));
    let r = relcirc(&["leq", "zero.ckt", "free.ckt", "--json"], &dir);
    assert_eq!((r.code, r.stdout.trim()), (0, r#"{"included":true}"#));
    let r = relcirc(&["leq", "free.ckt", "zero.ckt"], &dir);
    assert_eq!(r.code, 1);
    let r = relcirc(&["eq", "b.ckt", "zero.ckt"], &dir);
    assert_eq!(r.code, 3, "{}", r.stderr);
}

#[test]
fn thevenin_json() {
    let dir = files(&[("one.ckt", "V(10) ; R(5)"), ("ind.ckt", "L(1)")]);
    let r = relcirc(&["thevenin", "one.ckt", "--json"], &dir);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), r#"{"case":"series_vr","V0":"10","R":"5"}"#);
    let r = relcirc(&["thevenin", "ind.ckt"], &dir);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("L(1)"));
}

#[test]
fn measure_netlist() {
    let dir = files(&[("loop.net", LOOP)]);
    let r = relcirc(&["measure", "loop.net", "--json"], &dir);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout.trim(),
        r#"{"classification":"unique_point","values":["2"]}"#
    );
    let r = relcirc(&["measure", "loop.net"], &dir);
    assert_eq!(r.stdout.trim(), "unique_point: 2");
}

#[test]
fn parse_and_sort_errors_exit_2() {
    let dir = files(&[
        ("bad.ckt", "R(2) ;"),
        ("ill.ckt", "R(2) ; copy"),
        ("bad.net", "R r 1 0 -3"),
        ("x.txt", "R(1)"),
    ]);
    for f in ["bad.ckt", "ill.ckt", "bad.net", "x.txt", "missing.ckt"] {
        let r = relcirc(&["denote", f], &dir);
        assert_eq!(r.code, 2, "{f}: {}", r.stderr);
        assert!(r.stderr.starts_with("error:"));
    }
}

#[test]
fn checks() {
    let dir = files(&[
        ("short.net", "I s 1 0 3\nAM a 1 0\nAM b 1 0\n"),
        ("loop.net", LOOP),
        ("r.ckt", "R(4)"),
        ("src.ckt", "one ; scalar(2)"),
    ]);
    let r = relcirc(
        &["check", "short.net", "--independent-measurement", "--json"],
        &dir,
    );
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["strict"], true);
    assert_eq!(v["equality_holds"], false);
    let r = relcirc(&["check", "r.ckt", "--invariants"], &dir);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("relativity: true"));
    let r = relcirc(&["check", "src.ckt", "--superposition"], &dir);
    assert_eq!(r.code, 3);
    let r = relcirc(&["check", "r.ckt"], &dir);
    assert_ne!(r.code, 0);
}

#[test]
fn netlist_outputs() {
    let dir = files(&[
        ("loop.net", LOOP),
        ("port.net", "PORT p 1 0\nR r 1 0 4\n"),
        ("r.ckt", "R(4)"),
    ]);
    let r = relcirc(&["netlist", "loop.net", "--to-term"], &dir);
    assert_eq!(r.code, 0);
    // The printed term parses back and denotes the reading.
    std::fs::write(dir.path().join("printed.ckt"), &r.stdout).unwrap();
    let m = relcirc(&["measure", "printed.ckt"], &dir);
    assert_eq!(m.stdout.trim(), "unique_point: 2");
    let r = relcirc(&["netlist", "port.net", "--denote", "--json"], &dir);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(
        (v["dom_width"].as_u64(), v["cod_width"].as_u64()),
        (Some(2), Some(2))
    );
    let eq = relcirc(&["eq", "port.net", "r.ckt"], &dir);
    assert_eq!(eq.stdout.trim(), "equal");
    assert_eq!(relcirc(&["netlist", "r.ckt", "--to-term"], &dir).code, 2);
}

#[test]
fn axioms_are_deterministic() {
    let dir = files(&[]);
    let a = relcirc(&["axioms", "--seed", "7", "--json"], &dir);
    let b = relcirc(&["axioms", "--seed", "7", "--json"], &dir);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let text = relcirc(&["axioms"], &dir);
    assert!(text
        .stdout
        .trim_end()
        .ends_with("axiom instances hold (seed 0)"));
    assert!(!text.stdout.contains("FAIL"));
}
