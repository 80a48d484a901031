use std::path::PathBuf;

use mincol::cli::{run, strip_timing};

fn manifest(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(args.iter().copied(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn five_two_pd() -> PathBuf {
    let path = std::env::temp_dir().join(format!("mincol-cli-{}-5_2.pd", std::process::id()));
    std::fs::write(&path, "X 1 4 2 5\nX 3 8 4 9\nX 5 10 6 1\nX 9 6 10 7\nX 7 2 8 3\n").unwrap();
    path
}

#[test]
fn invariant_from_pd_file() {
    let path = five_two_pd();
    let (text_code, text, _) = call(&["invariant", "--pd", path.to_str().unwrap(), "-p", "7"]);
    let (named_code, named, _) = call(&["invariant", "--name", "5_2", "-p", "7"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text_code, 0);
    assert_eq!(named_code, 0);
    assert_eq!(named.trim(), "total 343, zeros 49, nonzero support [1, 2, 4]");
    assert!(text.contains("total 343, zeros 49"), "{text}");
}

#[test]
fn bound_prints_the_nonsplit_bound() {
    let (code, out, _) = call(&["bound", "--name", "5_2", "-p", "11", "--assert-nonsplit"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "mincol_q >= 5 for all primes q > 7");
}

#[test]
fn stored_witnesses_verify() {
    for f in [
        "data/witnesses/torus2_5_p5_four.json",
        "data/witnesses/5_2_p7_four.json",
    ] {
        let (code, out, err) = call(&["verify-witness", "--witness", &manifest(f), "--json"]);
        assert_eq!(code, 0, "{f}: {err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["ok"], true);
        assert_eq!(v["results"]["palette_size"], 4);
    }
}

#[test]
fn tampered_witness_fails() {
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(manifest("data/witnesses/5_2_p7_four.json")).unwrap()).unwrap();
    v["palette"] = serde_json::json!([0, 1, 2, 3]);
    let path = std::env::temp_dir().join(format!("mincol-cli-{}-tampered.json", std::process::id()));
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, _, _) = call(&["verify-witness", "--witness", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 1);
}

#[test]
fn json_reports_repeat_exactly() {
    for args in [
        &["invariant", "--name", "5_2", "-p", "7", "--json"][..],
        &["colorings", "--name", "4_1", "-p", "5", "--json"],
        &["mincol", "--name", "3_1", "-p", "3", "--json"],
    ] {
        let (a, b) = (call(args), call(args));
        assert_eq!(a.0, b.0);
        assert_eq!(strip_timing(&a.1), strip_timing(&b.1));
    }
}

#[test]
fn unknown_knot_is_a_usage_error() {
    let (code, _, err) = call(&["parse", "--name", "no_such_knot"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}
