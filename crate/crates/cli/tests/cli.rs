use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};
use wittstab_cli::run;

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn call(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["wittstab"];
    all.extend_from_slice(args);
    let (code, out) = run(all);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("not JSON ({e}): {out}"));
    (code, v)
}

#[test]
fn witt_class_dyadic() {
    assert_eq!(
        call(&["witt", "class", "--ring", "dyadic", "--diag", "1,2"]),
        (0, json!({"signature": 2, "parity": 1}))
    );
    let (code, v) = call(&["witt", "class", "--file", &example("form_hyperbolic.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["signature"], 0);
    let (code, v) = call(&["witt", "class", "--ring", "fp:7", "--diag", "1,1"]);
    assert_eq!((code, v), (0, json!({"dim_mod2": 0, "disc": 3})));
}

#[test]
fn witt_equiv_and_ring() {
    let (code, v) = call(&["witt", "equiv", "--ring", "q", "--left", "1,1", "--right", "2,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["equivalent"], true);
    let (_, v) = call(&["witt", "equiv", "--ring", "dyadic", "--left", "1", "--right", "-2"]);
    assert_eq!(v["equivalent"], false);
    let (code, v) = call(&["witt", "ring", "--ring", "fp:7"]);
    assert_eq!(code, 0);
    assert_eq!(v["group"], "Z/4");
    let (code, v) = call(&["witt", "ring", "--ring", "dyadic", "--gen", "1", "--gen", "1,-2"]);
    assert_eq!(code, 0);
    assert_eq!(v["group"], "Z+Z/2");
}

#[test]
fn bott_commands() {
    let (code, v) = call(&["bott", "verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["all_passed"], true);
    let (code, v) = call(&["bott", "export"]);
    assert_eq!(code, 0);
    assert_eq!(v["M"]["ring"], "laurent2");
}

#[test]
fn stab_commands() {
    assert_eq!(
        call(&["stab", "colim", "--file", &example("period_z_times8.json")]),
        (0, json!({"rank": 1, "inverted_primes": [2], "torsion": []}))
    );
    let (_, v) = call(&["stab", "colim", "--file", &example("period_z_plus_z2.json")]);
    assert_eq!(v["torsion"], json!([2]));
    let (_, v) = call(&["stab", "colim", "--file", &example("prefix_absorbed.json")]);
    assert_eq!(v, json!({"rank": 0, "inverted_primes": [], "torsion": [2]}));
    assert_eq!(
        call(&["stab", "exact", "--file", &example("chain_exact.json")]),
        (0, json!({"exact": true, "failures": []}))
    );
    let (_, v) = call(&["stab", "exact", "--file", &example("chain_wrong_cokernel.json")]);
    assert_eq!(v["failures"], json!([2]));
}

#[test]
fn lift_demo_is_seeded() {
    let args = ["lift", "demo", "--base", "fp:5", "--k", "3", "--n", "3", "--trials", "10", "--seed", "9"];
    let (code, a) = call(&args);
    assert_eq!(code, 0);
    assert_eq!(a["all_passed"], true);
    assert_eq!(call(&args).1, a);
    let (_, d) = call(&["lift", "demo", "--trials", "3"]);
    assert_eq!(d["seed"], 0);
}

#[test]
fn validation_errors() {
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["witt", "class", "--ring", "fp:9", "--diag", "1"], "InvalidRing"),
        (vec!["witt", "class", "--ring", "dyadic", "--diag", "3"], "DegenerateForm"),
        (vec!["witt", "class", "--ring", "q", "--diag", "1,x"], "Parse"),
        (vec!["witt", "ring", "--ring", "q"], "Unsupported"),
        (vec!["stab", "colim", "--file", "/nonexistent.json"], "Parse"),
        (vec!["lift", "demo", "--n", "9"], "InvalidParameter"),
        (vec!["bott"], "Usage"),
    ];
    for (args, kind) in cases {
        let (code, v) = call(&args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(v["error"]["kind"], kind, "{args:?}: {v}");
    }
}

#[test]
fn unknown_fields_rejected() {
    let dir = std::env::temp_dir().join(format!("wittstab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let seq = dir.join("seq.json");
    std::fs::write(&seq, r#"{"period": {"group": {"rank": 1}, "map": [[8]], "colour": 1}}"#).unwrap();
    let (code, _) = call(&["stab", "colim", "--file", seq.to_str().unwrap()]);
    assert_eq!(code, 2);
    let form = dir.join("form.json");
    std::fs::write(&form, r#"{"ring": "q", "diag": [1], "extra": true}"#).unwrap();
    let (code, v) = call(&["witt", "class", "--file", form.to_str().unwrap()]);
    assert_eq!((code, v["error"]["kind"].as_str()), (2, Some("Parse")));
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"prefix": [{"group": {"rank": 0, "torsion": [2]}, "map": [[1]]}], "period": {"group": {"rank": 1}, "map": [[1]]}}"#).unwrap();
    let (code, v) = call(&["stab", "colim", "--file", bad.to_str().unwrap()]);
    assert_eq!((code, v["error"]["kind"].as_str()), (2, Some("IllFormed")));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_wittstab");
    let out = Command::new(bin).args(["stab", "colim", "--file", &example("period_z_times8.json")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["inverted_primes"], json!([2]));
    let out = Command::new(bin).args(["witt", "class", "--ring", "q"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["error"]["message"].is_string());
}
