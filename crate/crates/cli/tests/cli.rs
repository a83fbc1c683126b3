//! End-to-end tests of the command-line interface against the shipped
//! fixtures: verdicts, exit codes, report fields and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    root.to_string_lossy().into_owned()
}

fn modvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modvar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is a JSON report")
}

#[test]
fn thm2_on_the_gap_fixture() {
    let out = modvar(&["thm2", "--file", &fixture("gap_pair.json"), "--datum", "main"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep["verdict"], "PASS");
    assert_eq!(rep["values"]["gap"], 2);
    assert_eq!(rep["values"]["hom_zz"], 6);
    assert_eq!(rep["values"]["hom_yy"], 4);
    assert!(rep["inputs"]["digest"]
        .as_str()
        .unwrap()
        .starts_with("sha256:"));
}

#[test]
fn exact_and_split_on_the_gap_datum() {
    let out = modvar(&["exact", "--file", &fixture("gap_pair.json"), "--cert", "main"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["verdict"], "PASS");

    let out = modvar(&["split", "--file", &fixture("gap_pair.json"), "--cert", "main"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["verdict"], "false");
}

#[test]
fn certify_the_kronecker_certificate() {
    let out = modvar(&["certify", "--file", &fixture("kronecker.json"), "--cert", "kron"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep["verdict"], "REGULAR-certified");
    assert_eq!(rep["values"]["hom_zm_m"], 2);
    assert_eq!(rep["values"]["hom_zm_n"], 2);
    assert_eq!(rep["values"]["codim1"]["hom_nn"], 2);
}

#[test]
fn certify_with_dual_witness() {
    let out = modvar(&[
        "certify",
        "--file",
        &fixture("kronecker.json"),
        "--cert",
        "kron-with-dual",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["verdict"], "REGULAR-certified");
}

#[test]
fn certify_is_byte_identical_across_runs() {
    let args = ["certify", "--file", &fixture("kronecker.json"), "--cert", "kron"];
    let a = modvar(&args);
    let b = modvar(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn validate_pass_and_fail() {
    let out = modvar(&["validate", "--file", &fixture("kronecker.json"), "--module", "M"]);
    assert_eq!(out.status.code(), Some(0));

    // A relation-violating module: identity for the first idempotent on a
    // file that otherwise matches the Kronecker presentation.
    let dir = std::env::temp_dir().join("modvar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    let text = std::fs::read_to_string(fixture("kronecker.json")).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&text).unwrap();
    // Break relation 2 (e1 e2 = 0): make both idempotents the identity.
    json["modules"]["M"]["mats"][1] = serde_json::json!([["1", "0"], ["0", "1"]]);
    json["modules"]["M"]["mats"][0] = serde_json::json!([["1", "0"], ["0", "1"]]);
    std::fs::write(&bad, serde_json::to_string(&json).unwrap()).unwrap();

    let out = modvar(&["validate", "--file", bad.to_str().unwrap(), "--module", "M"]);
    assert_eq!(out.status.code(), Some(1));
    let rep = report(&out);
    assert_eq!(rep["verdict"], "FAIL");
    let idx = rep["values"]["first_failing_relation"].as_u64().unwrap();
    assert_eq!(idx, 2, "e1 e2 is the first relation the doubled identity breaks");
}

#[test]
fn unresolved_names_exit_2() {
    let out = modvar(&["validate", "--file", &fixture("kronecker.json"), "--module", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));
}

#[test]
fn degenerate_builds_the_socle_certificate() {
    let out = modvar(&[
        "degenerate",
        "--file",
        &fixture("kronecker.json"),
        "--datum",
        "socle-filtration",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep["verdict"], "PASS");
    assert_eq!(rep["values"]["z_dim"], 1);
}

#[test]
fn unique_accepts_a_certificate_against_itself() {
    let out = modvar(&[
        "unique",
        "--file",
        &fixture("kronecker.json"),
        "--cert",
        "kron",
        "--cert",
        "kron",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep["verdict"], "true");
    assert_eq!(rep["values"]["z_isomorphic"], true);
}

#[test]
fn normalize_keeps_the_radical_certificate() {
    let out = modvar(&["normalize", "--file", &fixture("kronecker.json"), "--cert", "kron"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep["values"]["z_dim"], 1);
    assert_eq!(rep["values"]["f"], serde_json::json!([["0"], ["0"], ["1"]]));
}

#[test]
fn cusp_property_commands() {
    let out = modvar(&["p1", "--file", &fixture("cusp.json"), "--module", "ideal-quotient"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["verdict"], "true");

    let out = modvar(&["p1", "--file", &fixture("cusp.json"), "--module", "simple"]);
    assert_eq!(out.status.code(), Some(1));

    let out = modvar(&[
        "p1prime",
        "--file",
        &fixture("cusp.json"),
        "--module",
        "ideal-quotient-right",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = modvar(&["p2", "--file", &fixture("cusp.json"), "--datum", "koszul"]);
    assert_eq!(out.status.code(), Some(0));

    let out = modvar(&["longn", "--file", &fixture("cusp.json"), "--datum", "koszul"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["verdict"], "PASS");

    // P2 fails on the trivial line, so the long sequence is a
    // precondition failure.
    let out = modvar(&["longn", "--file", &fixture("cusp.json"), "--datum", "trivial-line"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["verdict"], "precondition-failure");
}

#[test]
fn endo_bimodule_from_the_gap_datum() {
    let out = modvar(&[
        "endo-bimodule",
        "--file",
        &fixture("gap_pair.json"),
        "--datum",
        "main",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep["verdict"], "computed");
    assert_eq!(rep["values"]["dim"], 4);
    assert_eq!(rep["values"]["p2"], false);
}

#[test]
fn search_is_deterministic_across_jobs() {
    let base = [
        "search-thm2",
        "--file",
        &fixture("search_f2.json"),
        "--datum",
        "small",
        "--budget",
        "100000",
        "--seed",
        "5",
    ];
    let mut one = base.to_vec();
    one.extend(["--jobs", "1"]);
    let mut two = base.to_vec();
    two.extend(["--jobs", "2"]);
    let a = modvar(&one);
    let b = modvar(&two);
    assert_eq!(a.status.code(), Some(0));
    let ra = report(&a);
    let rb = report(&b);
    assert_eq!(ra["values"], rb["values"]);
    assert_eq!(ra["values"]["found_count"], 0);
    assert_eq!(ra["values"]["budget_exhausted"], false);
}

#[test]
fn partition_oracle_command() {
    let out = modvar(&[
        "partition-oracle",
        "--file",
        &fixture("kronecker.json"),
        "--datum",
        "jordan-pair",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep["values"]["partition_hom"], 5);
    assert_eq!(rep["values"]["jordan_hom_dim"], 5);
}
