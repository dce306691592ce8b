//! Black-box tests of the command-line interface: exit codes, output
//! placement, determinism and the JSON dump/reload path.

mod support;

use std::path::Path;
use std::process::{Command, Output};

const MINI: &str = "\
Configuration Mini
Component X
Port p = a -> §
Computation = p.a -> computation
Connector Y
Role r = b -> §
Role s = b -> §
Glue = r.b -> s.b -> glue
Instances
x: Component X
y: Connector Y
Attachments
x-p As y-r
End Configuration
";

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wright2ada"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run binary")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn compiles_to_default_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "mini.wright", MINI);
    let out = run(&[&input], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let generated = std::fs::read_to_string(dir.path().join("mini.adb")).unwrap();
    assert!(generated.starts_with("procedure Mini is"));
    assert!(generated.contains("task Component_x is"));
}

#[test]
fn output_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "mini.wright", MINI);
    run(&[&input, "-o", "a.adb"], dir.path());
    run(&[&input, "-o", "b.adb"], dir.path());
    let a = std::fs::read(dir.path().join("a.adb")).unwrap();
    let b = std::fs::read(dir.path().join("b.adb")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn stdout_output_with_dash() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "mini.wright", MINI);
    let out = run(&[&input, "-o", "-"], dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("procedure Mini is"));
}

#[test]
fn missing_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["no_such_file.wright"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn syntax_error_exits_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "broken.wright", "Configuration ???\n");
    let out = run(&[&input, "-o", "broken.adb"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("broken.adb").exists());
    assert!(String::from_utf8_lossy(&out.stderr).contains("E-SYNTAX"));
}

#[test]
fn semantic_error_exits_1_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let bad = MINI.replace("x-p As y-r", "x-q As y-r");
    let input = write(dir.path(), "bad.wright", &bad);
    let out = run(&[&input, "-o", "bad.adb"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(!dir.path().join("bad.adb").exists());
    assert!(String::from_utf8_lossy(&out.stderr).contains("E-ATT-PORT"));
}

#[test]
fn check_only_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "mini.wright", MINI);
    let out = run(&[&input, "--check-only"], dir.path());
    assert!(out.status.success());
    assert!(!dir.path().join("mini.adb").exists());
}

#[test]
fn werror_promotes_warnings() {
    let dir = tempfile::tempdir().unwrap();
    // Single-role connector: legal but warned about.
    let warned = MINI.replace("Role s = b -> §\n", "").replace("r.b -> s.b -> glue", "r.b -> glue");
    let input = write(dir.path(), "warned.wright", &warned);
    let ok = run(&[&input, "-o", "warned.adb"], dir.path());
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(String::from_utf8_lossy(&ok.stderr).contains("W-CONN-ARITY"));

    let strict = run(&[&input, "-o", "strict.adb", "--werror"], dir.path());
    assert_eq!(strict.status.code(), Some(1));
    assert!(!dir.path().join("strict.adb").exists());
}

#[test]
fn dump_wright_reloads_to_same_program() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "mini.wright", MINI);
    let out = run(
        &[&input, "-o", "direct.adb", "--dump-wright", "mini.json", "--dump-ada", "ada.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let model_json = std::fs::read_to_string(dir.path().join("mini.json")).unwrap();
    let config = wright2ada::model::from_json(&model_json).unwrap();
    let transformed = wright2ada::transform::transform(&config).unwrap();
    let emitted = wright2ada::emit::emit(&transformed.program, Default::default());
    let direct = std::fs::read_to_string(dir.path().join("direct.adb")).unwrap();
    assert_eq!(emitted, direct);

    let ada_json = std::fs::read_to_string(dir.path().join("ada.json")).unwrap();
    let program = wright2ada::ada::from_json(&ada_json).unwrap();
    assert_eq!(program, transformed.program);
}
