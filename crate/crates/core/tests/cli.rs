use serde_json::Value;
use spherical_core::cli::{self, run};
use std::path::PathBuf;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json(out: &str) -> Value {
    serde_json::from_str(out).expect("stdout is JSON")
}

#[test]
fn fixtures_match_the_catalog() {
    for name in ["triple-so12", "nbar-sl2", "nonwf1-sl3-sp1"] {
        let (code, out, _) = run(["catalog", "--name", name]);
        assert_eq!(code, 0);
        let stored = std::fs::read_to_string(fixture(&format!("{name}.json"))).unwrap();
        assert_eq!(out, stored, "{name}");
    }
}

#[test]
fn wavefront_on_the_triple_fixture() {
    let (code, out, err) = run(["wavefront", "--pair", &fixture("triple-so12.json")]);
    assert_eq!(code, 0, "{err}");
    assert!(err.contains("wavefront: true"));
    let v = json(&out);
    assert_eq!(v["is_wavefront"], true);
    assert_eq!(v["by_projection"], v["by_pi_sigma"]);
    assert_eq!(v["subsets"].as_array().unwrap().len(), 8);
    let (_, out, err) = run(["wavefront", "--pair", &fixture("nonwf1-sl3-sp1.json")]);
    assert!(err.contains("wavefront: false"));
    assert_eq!(json(&out)["subsets"], Value::Array(vec![]));
}

#[test]
fn analyze_nbar() {
    let (code, out, err) = run(["analyze", "--pair", &fixture("nbar-sl2.json")]);
    assert_eq!(code, 0);
    assert!(err.contains("S = ∅, cone = all of a_Z"));
    let a = &json(&out)["analysis"];
    assert_eq!(a["spherical_roots"], Value::Array(vec![]));
    assert_eq!(a["cone"]["full"], true);
    assert_eq!(a["edge"].as_array().unwrap().len(), 1);
}

#[test]
fn analyze_round_trips() {
    let (code, first, _) = run(["analyze", "--pair", "catalog:symmetric-so22"]);
    assert_eq!(code, 0);
    let dir = std::env::temp_dir().join(format!("spherical-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("analysis.json");
    std::fs::write(&path, &first).unwrap();
    let (code, second, _) = run(["analyze", "--pair", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(first, second);
    let pf = cli::parse_pair_file(&first).unwrap();
    assert!(pf.catalog.is_none() && pf.algebra.is_some());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn empty_degeneration_is_the_horospherical_limit() {
    let (code, out, _) = run(["degenerate", "--pair", &fixture("triple-so12.json"), "--I="]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["subset"], Value::Array(vec![]));
    assert!(v["verification"].as_object().unwrap().values().all(|b| *b == true));
    // l∩h = 0 here, so h_∅ = ū has the dimension of h
    let (_, a, _) = run(["analyze", "--pair", &fixture("triple-so12.json")]);
    let a = json(&a);
    assert_eq!(a["analysis"]["l_cap_h"], Value::Array(vec![]));
    assert_eq!(v["h_i"].as_array().unwrap().len(), a["subalgebra"].as_array().unwrap().len());
}

#[test]
fn degenerate_and_induce_by_name() {
    let (code, out, _) = run(["degenerate", "--pair", "catalog:group-sl3", "--I=s2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["subset"], serde_json::json!(["s2"]));
    let (code, out, _) = run(["induce", "--pair", "catalog:triple-so12", "--F=a1,a2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["unimodular"], false);
    assert_eq!(v["cone_identity"], true);
    assert_eq!(v["modular_character"]["values"], serde_json::json!(["-4/5", "-3/5"]));
}

#[test]
fn exponents_from_the_pair_file() {
    let (code, out, err) = run(["exponents", "--pair", &fixture("group-sl2-exponents.json")]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["is_tempered"], true);
    assert_eq!(v["strong_inequality"], true);
    assert_eq!(v["lambda_v_eta"], serde_json::json!(["1"]));
    assert_eq!(v["optimal"].as_array().unwrap().len(), 2);
    assert_eq!(v["pipeline"].as_array().unwrap().len(), 2);
}

#[test]
fn twists_and_catalog_listing() {
    let (code, out, _) = run(["twists", "--pair", "catalog:triple-sl2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["twists"].as_array().unwrap().len(), 8);
    let (code, out, _) = run(["catalog"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["entries"].as_array().unwrap().len(), 18);
    assert!(!v["metadata_only"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(["analyze", "--pair", &fixture("bad-rational.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("line 6"), "{err}");
    let (code, _, _) = run(["analyze", "--pair", "catalog:no-such-pair"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(["degenerate", "--pair", "catalog:group-sl2", "--I=s9"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(["degenerate", "--pair", "catalog:group-sl2", "--I=x1"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(["wavefront", "--pair", "catalog:nbar-sl2", "--bogus"]);
    assert_eq!(code, 2);
    let (code, _, err) = run(["exponents", "--pair", "catalog:group-sl2"]);
    assert_eq!(code, 2, "{err}");
    let (code, out, _) = run(["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("selftest"));
}

#[test]
fn format_header_is_required() {
    assert!(cli::parse_pair_file(r#"{"format": 2, "catalog": "nbar-sl2"}"#).is_err());
    assert!(cli::parse_pair_file(r#"{"catalog": "nbar-sl2"}"#).is_err());
    assert!(cli::parse_pair_file(r#"{"format": 1}"#).is_err());
    assert!(cli::parse_pair_file(r#"{"format": 1, "catalog": "nbar-sl2"}"#).is_ok());
}
