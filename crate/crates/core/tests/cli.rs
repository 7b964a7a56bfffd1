//! Command line behaviour: reports, exit codes and determinism.

use serde_json::Value;

use webfolio::cli::main_with_args;
use webfolio::cli::parser::{format_foliation, parse_form};
use webfolio::prefoliation::corpus::{by_name, CorpusParams, NAMES};

fn run(args: &[&str]) -> (i32, String, String) {
    main_with_args(std::iter::once("webfolio").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn flat_h1_at_infinity() {
    let v = json(&["flat", "--corpus", "H1", "--degree", "3", "--line", "0,0,1"]);
    assert_eq!(v["flatness"]["overall"], "flat");
    for k in [
        "input",
        "field",
        "foliation",
        "discriminant",
        "flatness",
        "probe",
    ] {
        assert!(v.get(k).is_some(), "missing key {k}");
    }
    for c in v["flatness"]["components"].as_array().unwrap() {
        for k in ["tag", "rule", "verdict", "residual"] {
            assert!(c.get(k).is_some(), "component without {k}");
        }
    }
}

#[test]
fn flat_detects_pole() {
    let v = json(&[
        "flat", "--corpus", "H1", "--degree", "3", "--line", "2,-1,0",
    ]);
    assert_eq!(v["flatness"]["overall"], "not_flat");
    let poles = v["flatness"]["components"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["verdict"] == "pole")
        .count();
    assert!(poles >= 1);
}

#[test]
fn classify_lists_ten_models() {
    let v = json(&["classify", "--degree", "4", "--jobs", "2"]);
    assert_eq!(v["classification"]["flat_models"], 10);
    assert_eq!(v["classification"]["all_agree"], true);
}

#[test]
fn probe_fermat_line() {
    let v = json(&[
        "probe",
        "--corpus",
        "fermat",
        "--fdeg",
        "2",
        "--line",
        "1,1,-1",
        "--samples",
        "8",
    ]);
    assert_eq!(v["probe"]["verdict"], "probably_flat");
    assert_eq!(v["probe"]["samples"], 8);
}

#[test]
fn probe_without_line_uses_the_foliation() {
    let v = json(&["probe", "--corpus", "H3", "--degree", "4", "--lambda", "1"]);
    assert_eq!(v["probe"]["verdict"], "not_flat");
    assert!(v["probe"]["witness"].is_object());
}

#[test]
fn analyze_reports_foliation() {
    let v = json(&["analyze", "--form", "y^2 dx - x^2 dy", "--line", "0,0,1"]);
    let f = &v["foliation"];
    assert_eq!(f["type"], "2·R_1");
    assert!(f["cs_poly"].as_str().unwrap().starts_with("λ^3"));
    assert!(f["singularities"].as_array().unwrap().len() >= 3);
    assert!(v["discriminant"].is_array());
    assert_eq!(v["flatness"]["overall"], "flat");
    assert_eq!(v["field"], "Q");
}

#[test]
fn parametric_condition() {
    let v = json(&[
        "flat", "--corpus", "H1", "--degree", "4", "--line", "t,-1,0",
    ]);
    assert_eq!(v["field"], "Q(t)");
    assert_eq!(v["flatness"]["condition"], "3*t^4 + 3*t^2");
    let v = json(&[
        "flat", "--corpus", "H1", "--degree", "4", "--line", "t,-1,0", "--t", "-1",
    ]);
    assert_eq!(v["flatness"]["overall"], "flat");
}

#[test]
fn homogenize_general() {
    let (code, _, err) = run(&[
        "flat", "--corpus", "fermat", "--fdeg", "2", "--line", "1,1,-1",
    ]);
    assert_eq!(code, 2, "{err}");
    let v = json(&[
        "flat",
        "--corpus",
        "fermat",
        "--fdeg",
        "2",
        "--line",
        "1,0,0",
        "--homogenize",
        "1,0,0",
    ]);
    assert!(v["homogenized"].is_object());
    assert!(v["flatness"]["overall"].is_string());
}

#[test]
fn identities_fermat() {
    let v = json(&["identities", "--corpus", "fermat", "--fdeg", "2"]);
    for c in v["identities"].as_array().unwrap() {
        assert_eq!(c["status"], "pass", "{c}");
    }
}

#[test]
fn discriminant_components() {
    let v = json(&[
        "discriminant",
        "--corpus",
        "H1",
        "--degree",
        "4",
        "--line",
        "1,0,0",
    ]);
    let tags: Vec<&str> = v["discriminant"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["tag"].as_str().unwrap())
        .collect();
    assert!(tags.contains(&"dual-of-origin"));
    assert!(tags.contains(&"line-component"));
}

#[test]
fn field_override() {
    let v = json(&[
        "analyze", "--corpus", "H1", "--degree", "3", "--field", "cyclo:8",
    ]);
    assert_eq!(v["field"], "Q(zeta_8)");
    let (code, _, _) = run(&[
        "analyze",
        "--form",
        "zeta(3)*y^2 dx - x^2 dy",
        "--field",
        "cyclo:4",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["flat", "--form", "y dx + dz", "--line", "0,0,1"]).0,
        1
    );
    assert_eq!(run(&["nonsense"]).0, 1);
    assert_eq!(run(&["flat", "--corpus", "H1", "--degree", "3"]).0, 1);
    assert_eq!(
        run(&["flat", "--corpus", "H1", "--degree", "2", "--line", "0,0,1"]).0,
        2
    );
    assert_eq!(
        run(&["flat", "--form", "x dx + x dy", "--line", "0,0,1"]).0,
        2
    );
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn sampling_failure_exit_code() {
    let (code, _, err) = run(&[
        "probe",
        "--corpus",
        "H1",
        "--degree",
        "3",
        "--line",
        "0,0,1",
        "--samples",
        "5",
        "--tol-accept",
        "1e-30",
        "--tol-reject",
        "1e-30",
    ]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "analyze",
        "--corpus",
        "H3",
        "--degree",
        "4",
        "--lambda",
        "112/27",
        "--line",
        "3,4,0",
        "--probe",
        "--samples",
        "6",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.0, 0, "{}", a.2);
    assert_eq!(a.1, b.1);
}

#[test]
fn text_format() {
    let (code, out, _) = run(&[
        "flat", "--corpus", "H1", "--degree", "3", "--line", "0,0,1", "--format", "text",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("overall: flat"));
}

#[test]
fn corpus_forms_round_trip() {
    for name in NAMES {
        let p = CorpusParams {
            degree: Some(5),
            fdeg: Some(3),
            lambda: webfolio::algebra::Scalar::int(2),
            mu: webfolio::algebra::Scalar::frac(1, 3),
        };
        let f = by_name(name, &p).unwrap();
        let text = format_foliation(&f);
        let back = parse_form(&text).unwrap().to_foliation().unwrap();
        assert_eq!(format_foliation(&back), text, "{name}");
    }
    let v = json(&["corpus"]);
    assert_eq!(v["corpus"].as_array().unwrap().len(), NAMES.len());
}
