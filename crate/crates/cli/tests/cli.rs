use std::process::{Command, Output};

use serde_json::Value;

fn rbident(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbident")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn identity_that_holds_exits_zero() {
    let o = rbident(&["check", "--identity", "f4", "--model", "seq:N=6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = rbident(&["--format", "json", "check", "--identity", "f4", "--model", "seq:N=6"]);
    let v = json(&o);
    assert_eq!(v["status"], "holds");
    assert_eq!(v["samples"], 200);
}

#[test]
fn failing_identity_reports_witness() {
    let o = rbident(&["check", "--identity", "f5plus", "--words", "jordan", "--model", "poly:mul=star,k=2,n=0", "--grid", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("a = 1, b = x, c = x^2, d = x^3, e = x^4"), "{text}");
    assert!(text.contains("-4537/6107270400*x^18"), "{text}");
}

#[test]
fn solve_reports_kernel_parameters() {
    let o = rbident(&["solve", "--degree", "4", "--symmetry", "anticomm", "--model", "seq:N=6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("rank 12, kernel dimension 3"), "{text}");
    assert!(text.contains("free: l1, l2, l4"), "{text}");
}

#[test]
fn table_report_matches_in_json() {
    let o = rbident(&["--format", "json", "repro", "table1"]);
    assert_eq!(o.status.code(), Some(0));
    let items = json(&o);
    let items = items.as_array().unwrap();
    assert_eq!(items.len(), 12);
    assert!(items.iter().all(|i| i["status"] == "match"));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let o = rbident(&["check", "--expr", "a*b*c", "--model", "seq:N=4"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("error:"), "{err}");
    assert!(err.contains("line 1, column"), "{err}");
}

#[test]
fn unknown_model_is_an_error() {
    let o = rbident(&["check", "--identity", "f4", "--model", "poly:mul=nothing"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn models_lists_every_selector() {
    let o = rbident(&["models"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for s in ["seq:N=", "mul=circ", "mul=star", "mul=bracket", "mul=diamond", "mul=novsub"] {
        assert!(text.contains(s), "{s}");
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = rbident(&["--format", "json", "--output", path.to_str().unwrap(), "check", "--identity", "rcom", "--model", "poly:mul=circ"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["status"], "holds");
}

#[test]
fn json_output_is_reproducible() {
    let args = ["--format", "json", "--seed", "7", "check", "--identity", "f4p", "--model", "seq:N=6", "--samples", "50"];
    let (a, b) = (rbident(&args), rbident(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn exit_code_follows_json_status() {
    for (ident, model) in [("rcom", "poly:mul=circ"), ("f4p", "poly:mul=star,k=2,n=0"), ("f4", "poly:mul=diamond")] {
        let o = rbident(&["--format", "json", "check", "--identity", ident, "--model", model]);
        let holds = json(&o)["status"] == "holds";
        assert_eq!(o.status.code(), Some(if holds { 0 } else { 1 }), "{ident} on {model}");
    }
}

#[test]
fn definitions_file_uses_last_definition() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("defs.id");
    std::fs::write(&path, "# rcom and a symmetrization\nswap(a,b,c) := (a*b)*c - (a*c)*b\ntwice(a,b,c) := swap(a,b,c) + swap(b,a,c)\n").unwrap();
    let o = rbident(&["check", "--file", path.to_str().unwrap(), "--model", "poly:mul=circ"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn decompose_expresses_a_permuted_generator() {
    let o = rbident(&["decompose", "--identity", "g_jor5_16", "--generators", "f5", "--symmetry", "comm"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("f5(a,d,c,b,e)"), "{}", stdout(&o));
}
