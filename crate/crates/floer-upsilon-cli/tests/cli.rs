//! End-to-end checks of the binary: example invocations, exit codes and
//! re-ingestion of emitted JSON.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floer-upsilon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn upsilon_at_examples() {
    let out = run(&["upsilon", "--knot", "torus:3,4", "--at", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "-2");

    let out = run(&["upsilon", "--knot", "unknot"]);
    assert!(out.status.success());
    let doc: floer_upsilon_cli::PLFunctionDoc =
        serde_json::from_str(&stdout(&out)).unwrap();
    let f = doc.to_function().unwrap();
    assert_eq!(f, floer_upsilon::exact::PLFunction::zero());
}

#[test]
fn emitted_complex_reingests() {
    let out = run(&["mirror", "--knot", "trefoil"]);
    assert!(out.status.success());
    let doc: floer_upsilon_cli::ComplexDoc = serde_json::from_str(&stdout(&out)).unwrap();
    let c = doc.to_complex().unwrap();
    assert_eq!(floer_upsilon::upsilon::tau(&c).unwrap(), -1);
}

#[test]
fn csv_and_svg_shapes() {
    let out = run(&["upsilon", "--knot", "trefoil", "--format", "csv", "--samples", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,upsilon"));
    assert!(text.lines().count() >= 5);

    let out = run(&["upsilon", "--knot", "trefoil", "--format", "svg"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("<svg"));
    assert!(text.contains("polyline"));
}

#[test]
fn exit_codes() {
    // Usage problems exit 2.
    let out = run(&["upsilon"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["upsilon", "--knot", "trefoil", "--badflag"]);
    assert_eq!(out.status.code(), Some(2));
    // Computation failures exit 1 with a structured message.
    let out = run(&["upsilon", "--knot", "no_such_knot"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert!(err["error"].is_string());
}

#[test]
fn independence_certificate_output() {
    let out = run(&["independence", "--family", "Tnn1", "--n", "2..4"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["certified"], true);
    assert_eq!(value["matrix"][0][0][0], "1");
}

#[test]
fn link_input_upsilon_set() {
    let doc = floer_upsilon_cli::LinkDoc::from_link(
        &floer_upsilon::links::builtin_link("unlink:2").unwrap(),
    );
    let dir = std::env::temp_dir().join("floer-upsilon-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("unlink2.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["upsilon", "--in", path.to_str().unwrap(), "--at", "0"]);
    assert!(out.status.success());
    let set: Vec<floer_upsilon_cli::RationalDoc> =
        serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(set.len(), 2);
    // Without --at a link input is a usage error.
    let out = run(&["upsilon", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_succeeds() {
    let out = run(&["verify"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 10);
    assert_eq!(text.lines().filter(|l| l.starts_with("FAIL")).count(), 0);
}
