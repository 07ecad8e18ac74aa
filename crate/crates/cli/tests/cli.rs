//! End-to-end tests that drive the compiled binary.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::NamedTempFile;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbar"))
        .args(args)
        .output()
        .expect("the binary should spawn")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout should be UTF-8")
}

fn json_of(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout_of(&full)).expect("JSON mode should emit valid JSON")
}

// ---- Pinned examples ----

#[test]
fn nef_cone_genus_4_reports_five_rays_in_the_pinned_schema() {
    let v = json_of(&["nef-cone", "--genus", "4"]);
    let obj = v.as_object().expect("top level is an object");
    let mut keys: Vec<&String> = obj.keys().collect();
    keys.sort();
    assert_eq!(keys, ["genus", "inequalities", "rays"], "no extra top-level keys");

    assert_eq!(v["genus"], json!(4));
    let rays = v["rays"].as_array().expect("rays is an array");
    assert_eq!(rays.len(), 5, "genus 4 has five extremal rays");
    assert!(rays.contains(&json!([1, 0, 0, 0])), "the pure Hodge ray");
    assert!(rays.contains(&json!([21, 2, 3, 4])), "the sporadic genus-4 ray");

    for ineq in v["inequalities"].as_array().expect("inequalities is an array") {
        let entry = ineq.as_object().expect("inequality rows are objects");
        let mut keys: Vec<&String> = entry.keys().collect();
        keys.sort();
        assert_eq!(keys, ["family", "row"], "each inequality carries a row and its family");
    }
}

#[test]
fn hyperelliptic_seed_is_cited_not_derived() {
    let text = stdout_of(&["hg", "--genus", "1"]);
    assert!(text.contains("1/96"), "the genus-1 seed value, got: {text}");
    assert!(text.contains("[cited:"), "the seed is quoted, not computed: {text}");

    let v = json_of(&["hg", "--genus", "1"]);
    assert_eq!(v["value"], json!("1/96"));
    assert_eq!(v["report"][0]["kind"], json!("cited"));
}

#[test]
fn genus3_minimizer_pins_divisor_and_degree() {
    let v = json_of(&["m3", "minimize"]);
    assert_eq!(v["minimum"], json!("650924662500"));
    assert_eq!(v["divisor"], json!(["840", "60", "60"]));
    assert_eq!(v["frame"], json!("a = 420s, b = 30t, c = 60u"));
    assert_eq!(v["rays"].as_array().map(Vec::len), Some(3), "three feasible-cone rays");
}

#[test]
fn genus2_conditions_state_the_lattice_and_the_parity_extra() {
    let text = stdout_of(&["m2", "conditions"]);
    assert!(text.contains("60|a and 12|b"), "the admitted lattice: {text}");
    assert!(
        text.contains("8|(a+b)"),
        "the extra condition from the small orbifold class: {text}"
    );
}

// ---- Determinism ----

#[test]
fn reruns_are_byte_identical() {
    for args in [
        vec!["--json", "m3", "mod-chain"],
        vec!["--json", "lambda", "schottky"],
        vec!["kappa", "table"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(
            first.stdout, second.stdout,
            "two runs of {args:?} should print identical bytes"
        );
    }
}

// ---- Exit codes ----

#[test]
fn usage_errors_exit_with_code_64() {
    let out = run(&["bogus-subcommand"]);
    assert_eq!(out.status.code(), Some(64), "unknown subcommand is a usage error");

    let out = run(&["m3", "degree", "--a", "notanumber", "--b", "0", "--c", "0"]);
    assert_eq!(out.status.code(), Some(64), "unparseable argument is a usage error");
}

#[test]
fn domain_errors_exit_with_code_2() {
    let out = run(&["hg", "--genus", "0"]);
    assert_eq!(out.status.code(), Some(2), "genus 0 is out of range");
    assert!(out.stdout.is_empty(), "domain errors print nothing to stdout");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:"), "stderr explains the failure: {err}");
}

#[test]
fn help_exits_cleanly() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0), "help is not an error");
}

// ---- Global flags ----

#[test]
fn approx_marks_decimals_as_non_authoritative() {
    let plain = stdout_of(&["hg", "--genus", "4"]);
    assert!(!plain.contains("not authoritative"), "no decimals unless asked: {plain}");

    let approx = stdout_of(&["--approx", "hg", "--genus", "4"]);
    assert!(approx.contains("(not authoritative)"), "decimals carry the marker: {approx}");
    assert!(approx.contains("8.54"), "31/362880 starts 8.54e-5: {approx}");
}

#[test]
fn seed_box_switches_the_minimizer_to_a_plain_scan() {
    let v = json_of(&["--seed-box", "0..3,0..5", "m2", "minimize"]);
    assert_eq!(v["minimum"], json!("516"), "the box still contains the minimizer");
    assert_eq!(v["divisor"], json!(["60", "12"]));
    assert_eq!(v["rays"], json!([]), "an explicit box carries no ray certificate");

    let text = stdout_of(&["--seed-box", "0..3,0..5", "m2", "minimize"]);
    assert!(text.contains("no ray certificate"), "text mode says so too: {text}");
}

#[test]
fn malformed_seed_boxes_are_domain_errors() {
    for bad in ["5..1", "0..3", "0..3,0..5,0..7", "x..y,0..1"] {
        let out = run(&["--seed-box", bad, "m2", "minimize"]);
        assert_eq!(out.status.code(), Some(2), "seed box {bad:?} should be rejected");
    }
}

#[test]
fn presentation_file_overrides_the_builtin_ring() {
    let renamed = include_str!("../../core/data/mumford_m4.json")
        .replace("\"name\": \"mumford_m4\"", "\"name\": \"custom_m4\"");
    let mut file = NamedTempFile::new().expect("temp file");
    file.write_all(renamed.as_bytes()).expect("write presentation");
    let path = file.path().to_str().expect("temp path is UTF-8");

    let v = json_of(&["--presentation", path, "lambda", "l3cubed"]);
    assert_eq!(v["presentation"], json!("custom_m4"), "the supplied ring is used");
    assert_eq!(v["cube_multiple"], json!("1/384"));
    assert_eq!(v["value"], json!("1/43545600"));
}

#[test]
fn broken_presentation_files_are_domain_errors() {
    let mut file = NamedTempFile::new().expect("temp file");
    file.write_all(b"not a presentation").expect("write garbage");
    let path = file.path().to_str().expect("temp path is UTF-8");

    let out = run(&["--presentation", path, "lambda", "schottky"]);
    assert_eq!(out.status.code(), Some(2), "unparseable presentations are domain errors");
}

// ---- Integrality analysis ----

#[test]
fn integrality_analyze_reports_residues_lattice_and_clauses() {
    let poly = r#"{"vars":["a","b"],"terms":[
        {"coeff":"1/9","exps":[2,0]},
        {"coeff":"1/3","exps":[0,1]}
    ]}"#;
    let mut file = NamedTempFile::new().expect("temp file");
    file.write_all(poly.as_bytes()).expect("write poly");
    let path = file.path().to_str().expect("temp path is UTF-8");

    let v = json_of(&[
        "integrality", "analyze", "--poly", path, "--prime", "3", "--power", "2", "--simplify",
    ]);
    assert_eq!(v["admitted"], json!(9));
    assert_eq!(v["total"], json!(81));
    assert_eq!(v["modulus"], json!(9));
    assert_eq!(v["simplified"]["kind"], json!("divisibilities"));
    assert_eq!(v["simplified"]["clauses"], json!(["3|a", "3|b"]));
    assert_eq!(v["lattice_basis"], json!([["3", "0"], ["0", "3"]]));
}

#[test]
fn integrality_analyze_rejects_missing_files() {
    let out = run(&[
        "integrality", "analyze", "--poly", "/nonexistent/poly.json", "--prime", "3", "--power",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2), "a missing polynomial file is a domain error");
}

// ---- The report invariant ----

#[test]
fn every_report_entry_carries_a_citation_or_the_plumbing_marker() {
    let commands: &[&[&str]] = &[
        &["hg", "--genus", "3"],
        &["m2", "degree", "--a", "60", "--b", "12"],
        &["m2", "conditions"],
        &["m2", "minimize"],
        &["m3", "conditions"],
        &["m3", "mod-chain"],
        &["m3", "minimize"],
        &["lambda", "m3-l6"],
        &["lambda", "m4-l9"],
        &["lambda", "l3cubed"],
        &["lambda", "schottky"],
        &["kappa", "table"],
        &["kappa", "witten-check"],
        &["testsurface", "solve"],
    ];
    for args in commands {
        let v = json_of(args);
        let report = v["report"].as_array().unwrap_or_else(|| {
            panic!("{args:?} should carry a report array, got {v}");
        });
        assert!(!report.is_empty(), "{args:?} should report at least one entry");
        for entry in report {
            let citation = entry["citation"].as_str().expect("citation is a string");
            assert!(
                !citation.is_empty(),
                "{args:?} entry {entry} has an empty citation"
            );
            let kind = entry["kind"].as_str().expect("kind is a string");
            assert!(
                ["derived", "cited", "hybrid"].contains(&kind),
                "{args:?} entry {entry} has unknown kind {kind}"
            );
        }
    }
}

// ---- The residue chain over the binary ----

#[test]
fn mod_chain_json_carries_every_step_with_its_citation() {
    let v = json_of(&["m3", "mod-chain"]);
    let steps = v["steps"].as_array().expect("steps is an array");
    assert_eq!(steps.len(), 18, "the full chain has eighteen steps");
    assert_eq!(steps[0]["condition"], json!("2|c"), "the chain opens with the parity pass");
    for step in steps {
        assert!(
            !step["citation"].as_str().expect("citation").is_empty(),
            "step {step} lacks a citation"
        );
        assert!(
            !step["condition"].as_str().expect("condition").is_empty(),
            "step {step} lacks a condition"
        );
    }
    assert_eq!(v["lattice"], json!(["420|a", "30|b", "60|c"]));
    assert_eq!(v["residual"], Value::Null, "the full chain leaves nothing open");

    let v = json_of(&["m3", "mod-chain", "--skip-cited"]);
    assert_eq!(v["steps"].as_array().map(Vec::len), Some(11), "the self-contained chain");
    assert_eq!(v["lattice"], json!(["42|a", "6|b", "12|c"]));
    assert_eq!(v["residual"], json!("5|(3a1+2b1+3c2)"));
}
