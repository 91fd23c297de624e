//! End-to-end tests of the `dtpc` binary: output formats, file round-trips,
//! determinism, and the exit-code contract.

use std::collections::HashMap;
use std::fs;
use std::process::{Command, Output};

fn dtpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtpc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

/// Split a `key=value key=value ...` line into a map.
fn fields(line: &str) -> HashMap<String, String> {
    line.split_whitespace()
        .map(|tok| {
            let (k, v) = tok.split_once('=').expect("key=value field");
            (k.to_string(), v.to_string())
        })
        .collect()
}

#[test]
fn encode_simulate_decode_round_trips_every_codeword() {
    for index in 0..21 {
        let idx = index.to_string();
        let word = stdout_of(&dtpc(&["encode", "2", "1", "5", &idx]));
        let word = word.trim_end();
        for seed in ["0", "7", "12345"] {
            let received = stdout_of(&dtpc(&["simulate", "2", "1", word, "--seed", seed]));
            let decoded = stdout_of(&dtpc(&["decode", "2", "1", "5", received.trim_end()]));
            assert_eq!(decoded.trim_end(), word, "index {idx}, seed {seed}");
        }
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let cases: &[&[&str]] = &[
        &["simulate", "3", "2", "3 0 1 2 0", "--seed", "99"],
        &["codebook", "2", "1", "5"],
        &["capacity", "7", "3"],
        &["curves", "--N-list", "1,2", "--K-range", "0..2"],
    ];
    for args in cases {
        let a = dtpc(args);
        let b = dtpc(args);
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stderr, b.stderr, "{args:?}");
    }
}

#[test]
fn greedy_and_recursive_constructions_print_the_same_file() {
    let recursive = dtpc(&["codebook", "2", "1", "5"]);
    let greedy = dtpc(&["codebook", "2", "1", "5", "--method", "greedy"]);
    assert_eq!(stdout_of(&recursive), stdout_of(&greedy));
}

#[test]
fn codebook_file_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.dtpc");
    let path_str = path.to_str().unwrap();

    let written = dtpc(&["codebook", "2", "1", "5", "--out", path_str]);
    assert_eq!(stdout_of(&written), "21\n");
    let on_disk = fs::read_to_string(&path).unwrap();
    assert_eq!(on_disk, stdout_of(&dtpc(&["codebook", "2", "1", "5"])));

    let verified = dtpc(&["verify", "--codebook", path_str]);
    assert_eq!(stdout_of(&verified), "ZERO-ERROR\n");

    let sequences = dtpc(&[
        "verify",
        "--codebook",
        path_str,
        "--mode",
        "sequences",
        "--m",
        "2",
    ]);
    assert_eq!(stdout_of(&sequences), "ZERO-ERROR\n");
}

#[test]
fn exit_codes_separate_usage_runtime_and_budget_failures() {
    // Arrival count above the per-slot bound: a runtime decode failure.
    let undecodable = dtpc(&["decode", "1", "1", "4", "2 0 0 0"]);
    assert_eq!(code_of(&undecodable), 1);
    assert!(String::from_utf8_lossy(&undecodable.stderr).starts_with("error:"));

    // Index past the end of the codebook: also a runtime failure.
    assert_eq!(code_of(&dtpc(&["encode", "2", "1", "5", "21"])), 1);

    // Missing required arguments: a usage error.
    assert_eq!(code_of(&dtpc(&["codebook", "2", "1"])), 2);

    // Unparsable count sequence: a usage error.
    assert_eq!(code_of(&dtpc(&["decode", "1", "1", "4", "x y"])), 2);

    // Tolerance must be positive.
    assert_eq!(code_of(&dtpc(&["capacity", "1", "1", "--tol", "0"])), 2);

    // The greedy construction enumerates the padded word space up front;
    // at blocklength 40 that blows the enumeration budget.
    let over_budget = dtpc(&["codebook", "2", "1", "40", "--method", "greedy"]);
    assert_eq!(code_of(&over_budget), 3);
}

#[test]
fn verify_treats_a_non_padded_codebook_as_a_mode_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unpadded.dtpc");
    fs::write(&path, "# dtpc-codebook v1\nN=1 K=1 n=3\n0 1 1\n").unwrap();
    let path_str = path.to_str().unwrap();

    // The pairwise mode requires padding, so this is a usage error, not a
    // verification verdict.
    assert_eq!(code_of(&dtpc(&["verify", "--codebook", path_str])), 2);

    // The definition-level mode has no padding requirement.
    let sequences = dtpc(&["verify", "--codebook", path_str, "--mode", "sequences"]);
    assert_eq!(stdout_of(&sequences), "ZERO-ERROR\n");
}

#[test]
fn sequences_mode_finds_the_two_block_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pairwise-only.dtpc");
    fs::write(
        &path,
        "# dtpc-codebook v1\nN=1 K=1 n=3\n1 0 0\n0 0 1\n0 0 0\n",
    )
    .unwrap();
    let path_str = path.to_str().unwrap();

    let single = dtpc(&[
        "verify",
        "--codebook",
        path_str,
        "--mode",
        "sequences",
        "--m",
        "1",
    ]);
    assert_eq!(stdout_of(&single), "ZERO-ERROR\n");

    let double = dtpc(&[
        "verify",
        "--codebook",
        path_str,
        "--mode",
        "sequences",
        "--m",
        "2",
    ]);
    assert_eq!(code_of(&double), 1);
    assert_eq!(
        String::from_utf8(double.stdout).unwrap(),
        "CONFUSABLE\nx: 0 0 1 0 0 0\ny: 0 0 0 1 0 0\nwitness: 0 0 0 1 0 0 0\n"
    );
}

#[test]
fn malformed_codebook_files_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("magic", "# not-a-codebook\nN=1 K=1 n=3\n0 0 0\n"),
        ("header", "# dtpc-codebook v1\nN=1 K=1\n0 0 0\n"),
        ("word-len", "# dtpc-codebook v1\nN=1 K=1 n=3\n0 0\n"),
        ("symbol", "# dtpc-codebook v1\nN=1 K=1 n=3\n2 0 0\n"),
        ("crlf", "# dtpc-codebook v1\r\nN=1 K=1 n=3\r\n0 0 0\r\n"),
    ];
    for (name, text) in cases {
        let path = dir.path().join(name);
        fs::write(&path, text).unwrap();
        let out = dtpc(&["verify", "--codebook", path.to_str().unwrap()]);
        assert_eq!(code_of(&out), 2, "{name}");
        assert!(
            String::from_utf8_lossy(&out.stderr).starts_with("error:"),
            "{name}"
        );
    }
}

#[test]
fn curves_cover_the_requested_grid() {
    let out = stdout_of(&dtpc(&["curves"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 67);
    assert_eq!(lines[0], "N,K,capacity_bits");
    assert_eq!(lines[1], "1,0,1");

    let custom = stdout_of(&dtpc(&["curves", "--N-list", "2,4", "--K-range", "1..3"]));
    let lines: Vec<&str> = custom.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[1].starts_with("2,1,"));
    assert!(lines[3].starts_with("2,3,"));
    assert!(lines[6].starts_with("4,3,"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curves.csv");
    let written = dtpc(&["curves", "--out", path.to_str().unwrap()]);
    assert_eq!(stdout_of(&written), "");
    assert_eq!(fs::read_to_string(&path).unwrap(), out);
}

#[test]
fn capacity_reports_root_and_bits() {
    let line = stdout_of(&dtpc(&["capacity", "1", "1"]));
    let f = fields(line.trim_end());
    assert_eq!(f["N"], "1");
    assert_eq!(f["K"], "1");
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((f["root"].parse::<f64>().unwrap() - phi).abs() <= 1e-9);
    assert!((f["capacity_bits"].parse::<f64>().unwrap() - phi.log2()).abs() <= 1e-9);

    assert_eq!(
        stdout_of(&dtpc(&["capacity", "3", "0"])),
        "N=3 K=0 root=4 capacity_bits=2\n"
    );
    assert_eq!(
        stdout_of(&dtpc(&["capacity", "1", "inf"])),
        "N=1 K=inf root=1 capacity_bits=0\n"
    );

    let line = stdout_of(&dtpc(&["capacity", "5", "1", "--closed-form"]));
    let f = fields(line.trim_end());
    let solved: f64 = f["capacity_bits"].parse().unwrap();
    let closed: f64 = f["closed_form_bits"].parse().unwrap();
    assert!((solved - closed).abs() <= 1e-9);

    let line = stdout_of(&dtpc(&["capacity", "1", "inf", "--closed-form"]));
    assert!(line.trim_end().ends_with("closed_form_bits=0"));
}
