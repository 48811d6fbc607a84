use std::process::{Command, Output};

use apolar_cli::{Certificate, Report};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apolar")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Report, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    (report, value)
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn analyze_examples() {
    let (r, v) = json(&["analyze", "x^2*y - y^2*z"]);
    assert_eq!(v["schema"], 1);
    let p = r.profile.unwrap();
    assert_eq!(p.beta1, vec![0, 3, 2, 0]);
    assert_eq!(p.equipotent_generators, 2);
    let (r, _) = json(&["analyze", "x*y*z"]);
    assert_eq!(r.profile.unwrap().beta1, vec![0, 3, 0, 0]);
    let (r, _) = json(&["--vars", "x,y,z", "analyze", "x^3"]);
    let p = r.profile.unwrap();
    assert!(!p.concise);
    let red = p.reduced.unwrap();
    assert_eq!(red.vars, vec!["x"]);
    assert_eq!(red.profile.beta1, vec![0, 0, 0, 1]);
}

#[test]
fn decompose_examples() {
    let (r, _) = json(&["decompose", "--refine", "x^3+y^3+z^3"]);
    match r.certificate.unwrap() {
        Certificate::DirectSum { parts, .. } => assert_eq!(parts.len(), 3),
        c => panic!("{}", c.kind()),
    }
    let (r, _) = json(&["decompose", "--family", "x*y^2"]);
    assert_eq!(r.certificate.unwrap().kind(), "LimitNormalForm");
    let fam = r.family.unwrap();
    assert!(fam.limit_matches_input);
    assert_eq!(fam.expression, "1/3*t^2*x^3 + t*x^2*y + x*y^2");
    let (r, _) = json(&["decompose", "y^2*z - x^3 - x*z^2"]);
    assert_eq!(r.certificate.unwrap().kind(), "NotLimitOfDirectSums");
}

#[test]
fn family_examples() {
    let (r, _) = json(&["family", "t*x^4 + x*y^3"]);
    let a = r.family_analysis.unwrap();
    assert!(!a.is_apolar);
    let mut gens: Vec<String> = a.limit_ideal_generators.iter().flat_map(|g| g.generators.clone()).collect();
    gens.sort();
    assert_eq!(gens, vec!["a^2*b", "a^3", "b^4"]);
    let (r, _) = json(&["family", "x^3+y^3+z^3 + t*(x+y+z)^3"]);
    assert!(r.family_analysis.unwrap().is_apolar);
    let (r, _) = json(&["family", "x^4 + t*y^4"]);
    let a = r.family_analysis.unwrap();
    assert!(!a.is_apolar);
    assert!(!a.limit_concise);
}

#[test]
fn binary_and_tables() {
    let (r, _) = json(&["binary", "x*y^4"]);
    let b = r.binary.unwrap();
    assert_eq!((b.border_rank, b.waring_rank), (2, 5));
    for cmd in ["cubics", "selftest"] {
        let (r, _) = json(&[cmd]);
        assert!(!r.checks.is_empty());
        assert!(r.passed(), "{cmd}: {:?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    for args in [
        &["--seed", "7", "decompose", "--refine", "--family", "x^2*y - y^2*z"][..],
        &["--seed", "7", "decompose", "--refine", "x1^4 + x2^4 + x1*x3^3 + x4^4"],
        &["family", "t*x^5 + x*y^4"],
        &["analyze", "x*y^2*z^2 + x^5"],
    ] {
        let (r, v) = json(args);
        assert_eq!(serde_json::to_value(&r).unwrap(), v, "{args:?}");
        let (_, again) = json(args);
        assert_eq!(without_timing(v), without_timing(again), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "x^2 + y"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "x^2 +* y^2"]).status.code(), Some(2));
    assert_eq!(run(&["--vars", "x,y", "analyze", "x*z"]).status.code(), Some(2));
    assert_eq!(run(&["binary", "x*y*z"]).status.code(), Some(2));
    assert_eq!(run(&["--max-degree-guard", "100", "analyze", "x1^6 + x2^6 + x3^6 + x4^6 + x5^6"]).status.code(), Some(2));
    assert_eq!(run(&["family", "0*t*x^2"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "x^3 + y^3"]).status.code(), Some(0));
}

#[test]
fn text_output() {
    let out = run(&["decompose", "--refine", "x^3+y^3+z^3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("certificate: DirectSum"));
    assert!(text.contains("part 3: span(z) carries z^3"));
}
