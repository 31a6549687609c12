use std::path::PathBuf;
use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn schema(name: &str) -> JSONSchema {
    let path = root().join("schemas/v1").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let v: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::compile(&v).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_valid(name: &str, text: &str) -> Value {
    let v: Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    let s = schema(name);
    if let Err(errors) = s.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{name} schema rejects output: {msgs:?}");
    }
    v
}

fn run(args: &[&str]) -> ellvb::Outcome {
    let mut argv = vec!["ellvb"];
    argv.extend_from_slice(args);
    ellvb::run(argv)
}

/// Runs twice and checks the two outputs agree byte for byte.
fn run_ok(args: &[&str]) -> String {
    let a = run(args);
    assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
    let b = run(args);
    assert_eq!(a, b, "{args:?} is not deterministic");
    assert!(a.stdout.ends_with('\n'));
    a.stdout
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ellvb"));
    c.env_remove(ellvb::BASIS_CAP_ENV);
    c
}

#[test]
fn wpl_json_and_ascii() {
    let out = run_ok(&["wpl", "--weights", "4,6", "--range", "0..12", "--format", "json"]);
    let v = assert_valid("wpl", &out);
    let ranks: Vec<u64> = v["rows"]["h0"].as_array().unwrap().iter().map(|c| c["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, [1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2]);
    assert_eq!(v["rows"]["h0"][12]["points"], serde_json::json!([[0, 2], [3, 0]]));

    let json = run_ok(&["wpl", "--weights", "4,6", "--range", "-22..12"]);
    let v = assert_valid("wpl", &json);
    let total: u64 = ["h0", "h1"]
        .iter()
        .flat_map(|r| v["rows"][r].as_array().unwrap().iter().map(|c| c["rank"].as_u64().unwrap()))
        .sum();
    let ascii = run_ok(&["wpl", "--weights", "4,6", "--range", "-22..12", "--format", "ascii"]);
    assert_eq!(ascii.chars().filter(|&c| c == ellvb::render::BOX).count() as u64, total);
    // fixed width: every chart line is as long as the axis or shorter
    let axis = ascii.lines().last().unwrap().chars().count();
    assert!(ascii.lines().skip(1).all(|l| l.chars().count() <= axis));
}

#[test]
fn ext_chart_reports_alpha() {
    let out = run_ok(&["ext-chart", "--smax", "2", "--nmax", "6", "--prime", "3"]);
    let v = assert_valid("ext-chart", &out);
    let cell = v["bidegrees"].as_array().unwrap().iter().find(|c| c["s"] == 1 && c["n"] == 2).unwrap();
    assert_eq!(cell["group"], "Z/3");
    assert_eq!(cell["torsion"], serde_json::json!([3]));
    assert_eq!(cell["classes"], serde_json::json!(["alpha"]));

    let ascii = run_ok(&["ext-chart", "--smax", "2", "--nmax", "6", "--format", "ascii"]);
    let rows: Vec<&str> = ascii.lines().filter(|l| l.starts_with("s=")).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.chars().count() == rows[0].chars().count()));
    assert!(ascii.contains("alpha at (1,2)"));
}

#[test]
fn empty_chart_is_an_empty_object() {
    let out = run_ok(&["ext-chart", "--smin", "1", "--nmax", "1"]);
    assert_eq!(out, "{}\n");
    assert_valid("ext-chart", &out);
    assert_eq!(run_ok(&["ext-chart", "--smin", "1", "--nmax", "1", "--format", "ascii"]), "{}\n");
}

#[test]
fn exit_codes() {
    // invalid flags
    assert_eq!(run(&["wpl", "--weights", "4"]).code, 2);
    assert_eq!(run(&["wpl", "--weights", "4,6", "--range", "0..12", "--frobnicate"]).code, 2);
    assert_eq!(run(&["ext-chart", "--prime", "4"]).code, 2);
    assert_eq!(run(&["ext-chart", "--smin", "3", "--smax", "2"]).code, 2);
    assert_eq!(run(&["reps", "decompose", "--group", "A5", "--construct", "trivial"]).code, 2);
    assert_eq!(run(&["reps", "decompose", "--group", "S3", "--construct", "mbar(1"]).code, 2);
    assert_eq!(run(&["verify", "--suite", "nonexistent"]).code, 2);
    assert_eq!(run(&["verify", "--criteria", "42"]).code, 2);
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
    // resource caps
    assert_eq!(run(&["ext-chart", "--smax", "2", "--nmax", "20", "--prime", "2", "--cap", "100"]).code, 3);
    let big = ["reps", "decompose", "--group", "GL2F3", "--construct", "ind(Q8, mbar(1))", "--bound", "10"];
    assert_eq!(run(&big).code, 3);
}

#[test]
fn cap_from_the_environment() {
    let args = ["ext-chart", "--smax", "2", "--nmax", "12"];
    let out = bin().args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().args(args).env(ellvb::BASIS_CAP_ENV, "5").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("above the cap 5"));
    let out = bin().args(args).env(ellvb::BASIS_CAP_ENV, "5").args(["--cap", "20000"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().args(args).env(ellvb::BASIS_CAP_ENV, "lots").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // the binary writes exactly what the library returns
    let lib = run(&args);
    let out = bin().args(args).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), lib.stdout);
}

#[test]
fn reps_decompose_report() {
    let args = ["reps", "decompose", "--group", "GL2F3", "--construct", "ind(Q8, mbar(1))", "--field", "2", "--seed", "7"];
    let v = assert_valid("reps-decompose", &run_ok(&args));
    assert_eq!(v["rank"], 18);
    assert_eq!(v["summand_ranks"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum::<u64>(), 18);
    assert!(v["summand_ranks"].as_array().unwrap().iter().any(|x| x.as_u64().unwrap() >= 3));
    assert_eq!(v["certificates"]["idempotents_verified"], true);
    assert_eq!(v["flagged"], serde_json::json!([]));
    let idem = v["certificates"]["idempotents"].as_array().unwrap();
    assert_eq!(idem.len(), v["summand_ranks"].as_array().unwrap().len());

    let res = ["reps", "decompose", "--group", "GL2F3", "--construct", "res(Q8, ind(Q8, mbar(1)))", "--seed", "1"];
    let v = assert_valid("reps-decompose", &run_ok(&res));
    assert_eq!(v["group"], "Q8");
    assert_eq!(v["components"], serde_json::json!([{
        "rank": 3, "multiplicity": 6, "end_dim": 3, "end_mod_rad_dim": 1, "certified": true
    }]));

    let ascii = run_ok(&["reps", "decompose", "--group", "S3", "--construct", "perm", "--field", "3", "--format", "ascii"]);
    assert!(ascii.contains("idempotents verified: true"));
}

#[test]
fn bundles_normalize_report() {
    let dir = std::env::temp_dir().join(format!("ellvb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = serde_json::json!({ "stages": [
        { "twist": 0, "components": [{ "kind": "Line", "twist": -2, "value": 1 }, { "kind": "Line", "twist": -4, "value": 0 }] },
    ]});
    assert!(schema("bundles-spec").is_valid(&spec));
    let path = dir.join("spec.json");
    std::fs::write(&path, spec.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let v = assert_valid("bundles-normalize", &run_ok(&["bundles", "normalize", "--spec", p, "--resolver", "enumerate"]));
    assert_eq!(v["rank"], 3);
    let forms: Vec<&str> = v["normal_forms"].as_array().unwrap().iter().map(|f| f["display"].as_str().unwrap()).collect();
    // the residual class in Ext^1(ω^{-4}, E_α) is a resolver choice
    assert_eq!(forms, ["ω^-4 ⊕ E_α", "f_*f^*O"]);
    let v = assert_valid("bundles-normalize", &run_ok(&["bundles", "normalize", "--spec", p, "--resolver", "zero"]));
    assert_eq!(v["normal_forms"].as_array().unwrap().len(), 1);
    assert_eq!(v["normal_forms"][0]["display"], "ω^-4 ⊕ E_α");
    let h1 = &v["normal_forms"][0]["h1"];
    // ω^{-4} has H^1 at j ≡ 6, E_α at j ≡ 4
    assert_eq!(h1, &serde_json::json!([0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0]));

    // the second stage merges the line into E_α: the class is nonzero on both
    let spec = serde_json::json!({ "stages": [
        { "twist": 0, "components": [{ "kind": "Line", "twist": -2, "value": 1 }] },
        { "twist": 2, "components": [{ "kind": "Ealpha", "twist": 0, "value": 2 }] },
    ]});
    std::fs::write(&path, spec.to_string()).unwrap();
    let v = assert_valid("bundles-normalize", &run_ok(&["bundles", "normalize", "--spec", p]));
    assert_eq!(v["normal_forms"][0]["summands"], serde_json::json!([{ "kind": "FPush", "twist": 2, "residue": 2 }]));
    assert_eq!(v["normal_forms"][0]["corollary_holds"], true);
    let ascii = run_ok(&["bundles", "normalize", "--spec", p, "--format", "ascii"]);
    assert!(ascii.contains("1 normal form(s)"));

    // a nonzero component where Ext^1 vanishes, a bad resolver, a missing file
    let bad = serde_json::json!({ "stages": [{ "twist": 0, "components": [{ "kind": "Line", "twist": 0, "value": 1 }] }]});
    std::fs::write(&path, bad.to_string()).unwrap();
    assert_eq!(run(&["bundles", "normalize", "--spec", p]).code, 2);
    assert_eq!(run(&["bundles", "normalize", "--spec", p, "--resolver", "sometimes"]).code, 2);
    assert_eq!(run(&["bundles", "normalize", "--spec", "/nonexistent/spec.json"]).code, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn resolver_syntax() {
    use ellvb::commands::parse_resolver;
    use ellvb_core::moduli3::{Choice, Resolver};
    assert_eq!(parse_resolver("zero").unwrap(), Resolver::Zero);
    assert_eq!(parse_resolver("fixed:0,z,2").unwrap(), Resolver::Fixed(vec![Choice::Use(0), Choice::Zero, Choice::Use(2)]));
    assert!(parse_resolver("fixed:x").is_err());
}

#[test]
fn verify_fast_criteria() {
    let out = run_ok(&["verify", "--criteria", "1,2,6,7,8", "--format", "json"]);
    let v = assert_valid("verify", &out);
    assert_eq!(v["passed"], true);
    let ids: Vec<u64> = v["criteria"].as_array().unwrap().iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [1, 2, 6, 7, 8]);
    let ascii = run_ok(&["verify", "--criteria", "1", "--format", "ascii"]);
    assert!(ascii.lines().last().unwrap().starts_with("PASS criterion 1"));
}

#[test]
fn manifest_file_matches_its_schema() {
    let text = std::fs::read_to_string(root().join("manifests/acceptance.json")).unwrap();
    assert_valid("manifest", &text);
    let m = ellvb::manifest::Manifest::parse(&text).unwrap();
    let criteria: Vec<u32> = m.criteria.iter().map(|c| c.id).collect();
    assert_eq!(criteria, (1..=9).collect::<Vec<_>>());
    for id in 1..=9 {
        assert!(m.checks.iter().any(|c| c.criterion == id), "criterion {id} has no check");
    }
}

#[test]
fn failing_and_malformed_manifests() {
    let text = std::fs::read_to_string(root().join("manifests/acceptance.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    let dir = std::env::temp_dir().join(format!("ellvb-manifest-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    let p = path.to_str().unwrap();

    // a wrong expectation fails with exit 1 and names the check
    v["checks"][0]["expected"] = serde_json::json!([0]);
    std::fs::write(&path, v.to_string()).unwrap();
    let out = run(&["verify", "--manifest", p, "--criteria", "1", "--format", "ascii"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL wpl.h0_ranks.4_6.0_12"));
    assert!(out.stdout.contains("FAIL criterion 1"));

    // an informational check never fails its criterion
    v["checks"][0]["informational"] = serde_json::json!(true);
    std::fs::write(&path, v.to_string()).unwrap();
    let out = run(&["verify", "--manifest", p, "--criteria", "1", "--format", "ascii"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("flag wpl.h0_ranks.4_6.0_12"));

    // unknown check, duplicate name, non-exact tolerance, unknown provenance
    for edit in [
        ("name", serde_json::json!("wpl.nothing")),
        ("name", serde_json::json!("wpl.h1_ranks.4_6.-22_-10")),
        ("tolerance", serde_json::json!("1e-9")),
        ("provenance", serde_json::json!("hearsay")),
    ] {
        let mut w: Value = serde_json::from_str(&text).unwrap();
        w["checks"][0][edit.0] = edit.1.clone();
        std::fs::write(&path, w.to_string()).unwrap();
        assert_eq!(run(&["verify", "--manifest", p, "--criteria", "1"]).code, 2, "{edit:?}");
    }
    std::fs::remove_dir_all(&dir).ok();
}
