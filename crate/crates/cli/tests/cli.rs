use std::path::PathBuf;
use std::process::{Command, Output};

use gradering::corpus::{emit_report, parse_report, Report};

fn gradering(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradering"))
        .args(args)
        .env_remove("GRADERING_BUDGET")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .display()
        .to_string()
}

/// Runs with `--json` and checks the output survives a parse/emit round trip.
fn json(args: &[&str]) -> (i32, Report) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = gradering(&full);
    let text = stdout(&out);
    let report = parse_report(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    assert_eq!(emit_report(&report), text);
    (code(&out), report)
}

#[test]
fn demo_runs_declared_expectations() {
    let out = gradering(&["demo", "--example", "ex3.4.1", "--modulus", "5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains(" 0 failed"));
}

#[test]
fn verbatim_grading_is_rejected_with_witness() {
    let out = gradering(&["validate", "ex3.8-verbatim.ring.json"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("grading multiplicative: no, witness"));
    let (c, report) = json(&["validate", &fixture("ex3.8-verbatim.ring.json")]);
    assert_eq!(c, 1);
    match report {
        Report::Validation(v) => {
            let w = v.grading.witness().unwrap();
            assert_eq!([w.left, w.right], [1, 2]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn criterion_outside_hypotheses_is_consistent() {
    let out = gradering(&["verify", "ex4.3", "--theorem", "4.1", "--sign", "minus"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out).lines().next().unwrap(),
        "hypotheses unsatisfied (not gr-prime); conclusion fails; consistent"
    );
}

#[test]
fn every_subcommand_emits_parseable_reports() {
    let ex38 = fixture("ex3.8-corrected.ring.json");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["validate", &ex38], 0),
        (vec!["classify", &ex38, "--map", "F"], 0),
        (vec!["grprime", "ex4.3"], 1),
        (vec!["prime", &ex38], 0),
        (vec!["center", "ex3.6"], 0),
        (vec!["verify", "ex4.3", "--theorem", "two-map", "--map", "F2:d2", "--map", "F2:d2"], 0),
        (vec!["verify", &ex38, "--theorem", "prop-F-nonzero", "--map", "F:dx"], 0),
        (vec!["verify", &ex38, "--theorem", "prop-restriction", "--map", "dx"], 0),
        (vec!["verify", &ex38, "--theorem", "lemma-2.1"], 0),
        (vec!["sweep", "--family", "group-algebra", "--params", "order=1..2;p=2,3", "--theorem", "4.1"], 0),
        (vec!["search", "--problem", "pr1.i", "--bounds", "family=group-algebra;order=1..2;p=3"], 0),
        (vec!["demo", "--example", "ex3.6"], 0),
    ];
    for (args, want) in cases {
        let (c, _) = json(&args);
        assert_eq!(c, want, "{args:?}");
    }
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(code(&gradering(&["validate"])), 2);
    assert_eq!(code(&gradering(&["verify", "ex4.3", "--theorem", "4.9"])), 2);
    assert_eq!(code(&gradering(&["validate", "no-such-file.ring.json"])), 2);
    assert_eq!(code(&gradering(&["classify", "ex4.3", "--map", "G"])), 2);
    assert_eq!(code(&gradering(&["classify", "ex3.8-verbatim", "--map", "F"])), 2);
    assert_eq!(code(&gradering(&["demo", "--example", "ex3.6", "--modulus", "7"])), 2);
    assert_eq!(code(&gradering(&["sweep", "--family", "group-algebra", "--params", "p=", "--theorem", "4.1"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ring.json");
    std::fs::write(&bad, "{\"format_version\": 1,").unwrap();
    let out = gradering(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn budget_overrun_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_gradering"))
        .args(["grprime", "ex3.6"])
        .env("GRADERING_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn emitted_example_matches_shipped_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ex4.3.ring.json");
    let out = gradering(&["demo", "--example", "ex4.3", "--emit", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let emitted = std::fs::read_to_string(&path).unwrap();
    assert_eq!(emitted, std::fs::read_to_string(fixture("ex4.3.ring.json")).unwrap());
    assert_eq!(code(&gradering(&["validate", path.to_str().unwrap()])), 0);
}

#[test]
fn sweep_output_is_independent_of_jobs() {
    let run = |jobs: &str| {
        let out = gradering(&[
            "sweep", "--family", "matrix-pattern", "--params", "n=1..2;p=2", "--theorem", "4.2", "--jobs", jobs,
            "--json",
        ]);
        assert_eq!(code(&out), 0);
        out.stdout
    };
    assert_eq!(run("1"), run("3"));
}
