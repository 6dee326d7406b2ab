use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn qlang(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qlang"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn exit_codes() {
    assert_eq!(qlang(&["check", "--lang", "qasm", "-"], "OPENQASM 2.0;\nqreg q[1];\nh q[0];\n").status.code(), Some(0));
    let syntax = qlang(&["check", "--lang", "qasm", "-"], "OPENQASM 2.0;\nqreg q[1];\nh q[0]\n");
    assert_eq!(syntax.status.code(), Some(1));
    assert_eq!(qlang(&["solve", "-"], "a a 1\n").status.code(), Some(2));
    assert_eq!(qlang(&["check", "--lang", "qmasm", "-"], "!assert 1 > 2\n").status.code(), Some(2));
    assert_eq!(qlang(&["parse", "-"], "").status.code(), Some(3));
    assert_eq!(qlang(&["frobnicate"], "").status.code(), Some(3));
    assert_eq!(qlang(&["parse", "/nonexistent/x.qasm"], "").status.code(), Some(4));
    assert_eq!(qlang(&["--help"], "").status.code(), Some(0));
}

#[test]
fn stdin_matches_file() {
    let dir = tempfile::tempdir().unwrap();
    let src = "a b -1\nb 0.5\n";
    let path = write(dir.path(), "m.qmasm", src);
    for cmd in ["parse", "ising", "solve"] {
        let a = qlang(&[cmd, &path], "");
        let b = qlang(&[cmd, "--lang", "qmasm", "-"], src);
        assert_eq!(a.status.code(), Some(0), "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn output_is_deterministic() {
    let src: String = (0..12).map(|i| format!("s{i} s{} {}\ns{i} 0.25\n", (i + 1) % 12, if i % 2 == 0 { -1 } else { 1 })).collect();
    let first = qlang(&["solve", "-"], &src);
    assert_eq!(first.status.code(), Some(0));
    for _ in 0..3 {
        assert_eq!(qlang(&["solve", "-"], &src).stdout, first.stdout);
    }
}

#[test]
fn include_search_order() {
    let main_dir = tempfile::tempdir().unwrap();
    let extra = tempfile::tempdir().unwrap();
    write(extra.path(), "lib.qmasm", "x 1\n");
    let main = write(main_dir.path(), "main.qmasm", "!include \"lib.qmasm\"\n");
    let missing = qlang(&["ising", &main], "");
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("SEM301"));

    let out = qlang(&["ising", &main, "--include-dir", extra.path().to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"x\":1"));

    write(main_dir.path(), "lib.qmasm", "y 1\n");
    let out = qlang(&["ising", &main, "--include-dir", extra.path().to_str().unwrap()], "");
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"y\":1"));
}

#[test]
fn pretty_output_keeps_field_order() {
    let out = qlang(&["ising", "--format", "pretty", "-"], "b 1\na b -1\n");
    let text = String::from_utf8(out.stdout).unwrap();
    let keys: Vec<usize> = ["\"h\"", "\"J\"", "\"pins\"", "\"chains\"", "\"antichains\"", "\"equiv\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "{text}");
}

#[test]
fn diagnostics_point_at_source() {
    let out = qlang(&["check", "--lang", "qasm", "-"], "OPENQASM 2.0;\nqreg q[2];\ncx q[0];\n");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("PAR103"), "{err}");
    assert!(err.contains("<stdin>"), "{err}");
    assert!(err.contains('^'), "{err}");
}
