//! End-to-end runs of the compiled binary against recorded transcripts.
//!
//! Golden files live in `tests/golden/`; each is compared byte-for-byte with
//! the output of the invocation spelled out next to it, so any drift in
//! wording, ordering, or numeric formatting surfaces here first. Every run
//! uses the crate root as working directory so the fixture paths echoed in
//! the output stay machine-independent.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liftprop"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("spawn liftprop binary")
}

fn assert_matches_golden(golden: &str, want_code: i32, args: &[&str]) {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(want_code),
        "{golden}: exit code for `liftprop {}`\nstderr: {}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr),
    );
    assert!(
        out.stderr.is_empty(),
        "{golden}: unexpected stderr: {}",
        String::from_utf8_lossy(&out.stderr),
    );
    let path = format!("{}/tests/golden/{golden}", env!("CARGO_MANIFEST_DIR"));
    let want = std::fs::read(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    if out.stdout != want {
        panic!(
            "{golden}: output drifted\n--- recorded ---\n{}--- actual ---\n{}",
            String::from_utf8_lossy(&want),
            String::from_utf8_lossy(&out.stdout),
        );
    }
}

fn assert_usage_error(args: &[&str], needle: &str) {
    let out = run(args);
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert_eq!(
        out.status.code(),
        Some(2),
        "`liftprop {}` should be a usage error\nstdout: {text}",
        args.join(" "),
    );
    assert!(text.starts_with("error: "), "{text}");
    assert!(text.contains(needle), "missing {needle:?} in: {text}");
}

#[test]
fn parse_outputs_match_recordings() {
    assert_matches_golden(
        "parse_statements.txt",
        0,
        &["parse", "--input", "tests/fixtures/statements.topo"],
    );
    assert_matches_golden(
        "parse_statements.json",
        0,
        &["parse", "--input", "tests/fixtures/statements.topo", "--format", "json"],
    );
    assert_matches_golden(
        "parse_tau.dot",
        0,
        &["parse", "--input", "tests/fixtures/tau.topo", "--format", "dot"],
    );
}

#[test]
fn check_outputs_match_recordings() {
    let tau = &[
        "check",
        "--space",
        "tests/fixtures/tau.topo",
        "--axiom",
        "normal",
        "--method",
        "both",
    ];
    assert_matches_golden("check_tau_both.txt", 1, tau);
    let mut tau_json = tau.to_vec();
    tau_json.extend(["--format", "json"]);
    assert_matches_golden("check_tau_both.json", 1, &tau_json);

    assert_matches_golden(
        "check_vplus_hereditary.txt",
        1,
        &[
            "check",
            "--space",
            "tests/fixtures/vplus.topo",
            "--axiom",
            "hereditarilyNormal",
            "--method",
            "all",
        ],
    );
    assert_matches_golden(
        "check_chain4_hereditary.txt",
        0,
        &[
            "check",
            "--space",
            "tests/fixtures/chain4.topo",
            "--axiom",
            "hereditarilyNormal",
            "--method",
            "all",
        ],
    );
}

#[test]
fn lift_output_matches_recording() {
    assert_matches_golden(
        "lift_tau_fail.txt",
        1,
        &[
            "lift",
            "--left",
            "empty:tests/fixtures/tau.topo",
            "--right",
            "tests/fixtures/target.map",
            "--witness",
            "--stats",
        ],
    );
}

#[test]
fn urysohn_outputs_match_recordings() {
    assert_matches_golden(
        "urysohn_vplus.txt",
        0,
        &["urysohn", "--space", "tests/fixtures/vplus.topo", "--s", "a,b", "--t", "c"],
    );
    assert_matches_golden(
        "urysohn_tau_fail.json",
        1,
        &[
            "urysohn",
            "--space",
            "tests/fixtures/tau.topo",
            "--s",
            "0",
            "--t",
            "1",
            "--format",
            "json",
        ],
    );
}

#[test]
fn interval_outputs_match_recordings() {
    assert_matches_golden(
        "interval_fibers_corrected.txt",
        0,
        &["interval", "--variant", "corrected", "--probe", "fibers"],
    );
    assert_matches_golden(
        "interval_pi_indist.txt",
        1,
        &["interval", "--variant", "indistinguishable", "--probe", "pi-continuity"],
    );
}

#[test]
fn enumerate_outputs_match_recordings() {
    assert_matches_golden(
        "enumerate_x4.txt",
        0,
        &["enumerate", "--points", "4", "--cross-validate", "normal,hereditarilyNormal"],
    );
    assert_matches_golden(
        "enumerate_n3.json",
        0,
        &["enumerate", "--points", "3", "--dedupe", "--format", "json"],
    );
}

#[test]
fn catalog_outputs_match_recordings() {
    assert_matches_golden("catalog.txt", 0, &["catalog"]);
    assert_matches_golden("catalog.json", 0, &["catalog", "--format", "json"]);
}

#[test]
fn emit_is_accepted_as_an_alias_for_format() {
    assert_matches_golden("catalog.json", 0, &["catalog", "--emit", "json"]);
}

#[test]
fn repeated_runs_are_byte_identical() {
    // The cross-validation sweep is the only parallel code path; its output
    // must not depend on scheduling, and nothing in any report may embed
    // wall-clock readings.
    let args = [
        "enumerate",
        "--points",
        "4",
        "--cross-validate",
        "normal,hereditarilyNormal",
        "--format",
        "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn thread_count_does_not_change_output() {
    let base = ["enumerate", "--points", "4", "--cross-validate", "normal,hereditarilyNormal"];
    let pinned = run(&[&base[..], &["--jobs", "1"]].concat());
    let wide = run(&[&base[..], &["--jobs", "3"]].concat());
    assert_eq!(pinned.status.code(), Some(0));
    assert_eq!(wide.status.code(), Some(0));
    assert_eq!(pinned.stdout, wide.stdout);
    assert_eq!(pinned.stdout, run(&base).stdout);
}

#[test]
fn usage_errors_exit_two_with_a_message() {
    assert_usage_error(
        &["check", "--space", "tests/fixtures/no-such.topo", "--axiom", "normal"],
        "no-such.topo",
    );
    assert_usage_error(
        &[
            "check",
            "--space",
            "tests/fixtures/tau.topo",
            "--axiom",
            "normal",
            "--method",
            "bogus",
        ],
        "unknown method `bogus`",
    );
    // A statements file with several definitions is ambiguous where a single
    // space is expected.
    assert_usage_error(
        &["check", "--space", "tests/fixtures/statements.topo", "--axiom", "normal"],
        "exactly one `space` statement",
    );
    assert_usage_error(
        &["interval", "--variant", "corrected", "--probe", "pi-tilde-continuity"],
        "indistinguishable",
    );
}

#[test]
fn oversized_spaces_are_rejected_before_checking() {
    let mut text = String::from("{p0");
    for i in 1..13 {
        text.push_str(&format!(" -> p{i}"));
    }
    text.push_str("}\n");
    let file = tempfile::NamedTempFile::new().expect("temp file");
    std::fs::write(file.path(), text).expect("write fixture");
    assert_usage_error(
        &["check", "--space", file.path().to_str().unwrap(), "--axiom", "normal"],
        "at most 12",
    );
}

#[test]
fn argument_parse_failures_exit_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
