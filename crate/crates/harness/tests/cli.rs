use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;
use singlab::parse::parse_poly;
use singlab::scenario::{load_scenario, run};
use singlab_core::{AlgNum, MPoly};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_singlab"))
}

fn scenario_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

/// Random expression text with its value computed independently.
fn expr() -> impl Strategy<Value = (String, MPoly)> {
    let leaf = prop_oneof![
        (-9i64..=9).prop_map(|n| (format!("({n})"), MPoly::constant(AlgNum::from_int(n)))),
        prop::sample::select(vec!["w", "x", "y", "z", "v"]).prop_map(|v| (v.to_string(), MPoly::var(v))),
        Just(("eps".to_string(), MPoly::constant(AlgNum::eps()))),
        Just(("i".to_string(), MPoly::constant(AlgNum::i()))),
    ];
    // powers only of leaves, so sizes stay small
    let power = (leaf.clone(), 0u32..=3).prop_map(|((a, p), k)| (format!("{a}^{k}"), p.pow(k)));
    prop_oneof![leaf, power].prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|((a, p), (b, q))| (format!("({a} + {b})"), &p + &q)),
            (inner.clone(), inner.clone()).prop_map(|((a, p), (b, q))| (format!("({a} - {b})"), &p - &q)),
            (inner.clone(), inner.clone()).prop_map(|((a, p), (b, q))| (format!("{a}*{b}"), &p * &q)),
            (inner.clone(), 1i64..=5).prop_map(|((a, p), d)| (format!("({a})/{d}"), p.scale(&AlgNum::from_ratio(1, d)))),
            inner.prop_map(|(a, p)| (format!("-{a}"), -&p)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parse_print_round_trip((text, value) in expr()) {
        let parsed = parse_poly(&text).unwrap();
        prop_assert_eq!(&parsed, &value);
        prop_assert_eq!(parse_poly(&parsed.to_string()).unwrap(), value);
    }
}

#[test]
fn shipped_scenarios_pass_and_are_deterministic() {
    let mut seen = 0;
    for entry in std::fs::read_dir(scenario_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "json") {
            continue;
        }
        let sc = load_scenario(&path).unwrap();
        let (a, b) = (run(&sc).unwrap(), run(&sc).unwrap());
        assert!(a.ok(), "{}", a.render());
        assert_eq!(a.to_json(), b.to_json());
        seen += 1;
    }
    assert!(seen >= 7);
}

#[test]
fn json_output_is_stable_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let path = scenario_dir().join("cp3_chain.json");
    let mut bodies = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("r{k}.json"));
        let status = bin().arg("scenario").arg(&path).arg("--json").arg(&out).status().unwrap();
        assert!(status.success());
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert!(v["timing_ms"].is_u64());
        v.as_object_mut().unwrap().remove("timing_ms");
        assert_eq!(v["summary"]["ok"], true);
        bodies.push(v);
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let failing = dir.path().join("failing.json");
    std::fs::write(
        &failing,
        r#"{ "schema_version": 1, "name": "wrong", "chart": { "f": "x*y" }, "steps": [ { "op": "assert_label", "expect": "nc3" } ] }"#,
    )
    .unwrap();
    let malformed = dir.path().join("malformed.json");
    std::fs::write(&malformed, r#"{ "schema_version": 1 }"#).unwrap();

    let code = |args: &[&str]| bin().args(args).output().unwrap();
    let ok = code(&["classify", "--poly", "z^2+x*y^2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "pp");

    let cp3 = code(&["branches", "--poly", "z^3 + w*y^3 + w^2*x^3 - 3*w*x*y*z"]);
    assert_eq!(String::from_utf8_lossy(&cp3.stdout).trim(), "1 branch (split at k=3)");

    assert_eq!(code(&["scenario", failing.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(code(&["scenario", malformed.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(code(&["scenario", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(code(&["classify", "--poly", "x + q"]).status.code(), Some(2));
    assert_eq!(code(&["suite", "--family", "four"]).status.code(), Some(2));
    assert_eq!(code(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(code(&["verify", "all"]).status.code(), Some(0));
}

#[test]
fn suite_reports_agreement() {
    let out = bin().args(["suite", "--family", "two-b", "--count", "5", "--seed", "3"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("branch counts agree: 5/5"));
}
