use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn toriq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toriq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = toriq(&all);
    let v: Value = serde_json::from_str(&stdout(&o)).expect("valid json");
    (v, o.status.code().expect("exit code"))
}

#[test]
fn json_is_deterministic_and_versioned() {
    for cmd in ["analyze", "ifunction", "certify"] {
        let a = toriq(&[cmd, "--fan", "F2", "--format", "json"]);
        let b = toriq(&[cmd, "--fan", "F2", "--format", "json"]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["schema"], "toriq/1");
        assert_eq!(v["command"], cmd);
    }
}

#[test]
fn analyze_f2_and_p2() {
    let (v, code) = json(&["analyze", "--fan", "F2"]);
    assert_eq!(code, 0);
    let a = &v["analysis"];
    let pcs = a["primitive_collections"]["value"].as_array().unwrap();
    assert_eq!(pcs.len(), 2);
    assert_eq!(pcs[0]["class"], serde_json::json!([1, -2, 1, 0]));
    assert_eq!(pcs[1]["class"], serde_json::json!([0, 1, 0, 1]));
    assert_eq!(a["mori"]["value"]["semipositive"], true);
    assert_eq!(a["cohomology"]["value"]["rank"], 4);

    let (v, _) = json(&["analyze", "--fan", "F3"]);
    assert_eq!(v["analysis"]["mori"]["value"]["semipositive"], false);

    let (v, _) = json(&["analyze", "--fan", "P2"]);
    let a = &v["analysis"];
    assert_eq!(a["primitive_collections"]["value"].as_array().unwrap().len(), 1);
    assert_eq!(a["mori"]["value"]["fano"], true);
    assert_eq!(a["mori"]["value"]["generators"][0]["anticanonical_degree"], 3);
}

#[test]
fn ifunction_leading_terms_and_invariants() {
    let (v, code) = json(&["ifunction", "--fan", "P2", "--cutoff", "2"]);
    assert_eq!(code, 0);
    let rows = v["ifunction"]["two_point"]["value"].as_array().unwrap();
    let find = |ins: &str| {
        rows.iter()
            .find(|r| r["insertion"] == ins && r["q"]["generators"] == "q")
            .map(|r| r["value"].as_str().unwrap().to_string())
    };
    assert_eq!(find("ψ^4").as_deref(), Some("6"));
    assert_eq!(find("H·ψ^3").as_deref(), Some("-3"));
    assert_eq!(find("H^2·ψ^2").as_deref(), Some("1"));

    let text = stdout(&toriq(&["ifunction", "--fan", "P2", "--cutoff", "2"]));
    assert!(text.contains("⟨ψ^4, 1⟩_{q} = 6"), "{text}");

    let (v, code) = json(&["ifunction", "--fan", "F2", "--cutoff", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["ifunction"]["i0_is_one"], true);
    assert_eq!(v["ifunction"]["annihilation"]["value"]["complete"], true);

    let (v, code) = json(&["ifunction", "--fan", "F3", "--cutoff", "2"]);
    assert_eq!(code, 3);
    assert_eq!(v["ifunction"]["i0_is_one"], false);
    assert_eq!(v["ifunction"]["two_point"]["status"], "not_applicable");
}

#[test]
fn certify_catalog_examples() {
    let o = toriq(&["certify", "--fan", "F2", "--cutoff", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("x1⋆x1 = q1*q2 - 2*q1*x1*x2"), "{text}");
    assert!(text.contains("x2⋆x2 = q2 - 2*x1*x2"), "{text}");
    assert!(text.contains("certified: true"));

    let o = toriq(&["certify", "--fan", "F3", "--cutoff", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("theorem not applicable: not semipositive"));

    let o = toriq(&["certify", "--fan", "P1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H⋆H = q"));

    let (v, code) = json(&["certify", "--fan", "P2"]);
    assert_eq!(code, 0);
    let c = &v["certification"];
    assert_eq!(c["certificate"]["value"]["certified"], true);
    assert_eq!(c["certificate"]["value"]["determinant"], "1");
    let products = c["module"]["value"]["products"].as_array().unwrap();
    assert!(products.iter().any(|p| p["lhs"] == "H⋆H^2" && p["rhs"] == "q"));
}

#[test]
fn every_catalog_fan_exits_as_expected() {
    for name in ["P1", "P2", "P1xP1", "F0", "F1", "F2", "F3", "P1xP2", "BlP2"] {
        let expected = if name == "F3" { 3 } else { 0 };
        assert_eq!(toriq(&["certify", "--fan", name]).status.code(), Some(expected), "{name}");
        assert_eq!(toriq(&["analyze", "--fan", name]).status.code(), Some(0), "{name}");
    }
}

#[test]
fn fan_files_and_input_errors() {
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, r#"{{"dim": 2, "rays": [[2,0],[0,1],[-1,-1]], "max_cones": [[1,2],[2,3],[1,3]]}}"#).unwrap();
    let o = toriq(&["analyze", "--fan", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not primitive"));

    let mut garbled = tempfile::NamedTempFile::new().unwrap();
    write!(garbled, "{{\"dim\": ").unwrap();
    assert_eq!(toriq(&["analyze", "--fan", garbled.path().to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(toriq(&["analyze", "--fan", "NotAFan"]).status.code(), Some(2));
    assert_eq!(toriq(&["analyze", "--fan", "P2", "--format", "yaml"]).status.code(), Some(2));

    // The file version of F2 certifies like the catalog entry.
    let mut f2 = tempfile::NamedTempFile::new().unwrap();
    write!(f2, r#"{{"dim": 2, "rays": [[1,0],[0,1],[-1,2],[0,-1]], "max_cones": [[1,2],[2,3],[3,4],[4,1]], "name": "hirzebruch2"}}"#).unwrap();
    let o = toriq(&["certify", "--fan", f2.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("fan hirzebruch2"));
    assert!(text.contains("x1⋆x1 = q1*q2 - 2*q1*x1*x2"), "{text}");
}
