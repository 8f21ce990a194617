use std::process::{Command, Output};

use advinfo_cli::render::render_text;
use advinfo_cli::{
    cmd_boolean, cmd_grover, cmd_histories, cmd_phases, BooleanConfig, CliError, GroverConfig, HistoriesConfig,
};
use advinfo_core::report::Report;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_advinfo")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Report {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap()
}

#[test]
fn grover_with_oracle_choice() {
    let r = json(&["grover", "--n", "2", "--oracle-k", "01"]);
    assert_eq!(r.results["solution"], Value::from("01"));
    assert!((r.results["solution_probability"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(r.results["queries"], Value::from(1));
    assert!(r.all_passed());
}

#[test]
fn grover_correlated_table() {
    let r = json(&["grover"]);
    let table = r.results["joint_kx"].as_object().unwrap();
    assert_eq!(table.len(), 4);
    for k in ["00", "01", "10", "11"] {
        let p = table[&format!("k={k},x={k}")].as_f64().unwrap();
        assert!((p - 0.25).abs() < 1e-12);
    }
}

#[test]
fn malformed_bitstring_is_a_usage_error() {
    let out = run(&["grover", "--n", "2", "--oracle-k", "012"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    assert_eq!(run(&["grover", "--n", "2", "--unknown"]).status.code(), Some(2));
}

#[test]
fn histories_scenarios() {
    let r = json(&["histories", "--known-bit", "k0=0", "--query", "00"]);
    let hs = r.results["histories"].as_array().unwrap();
    let pairs: Vec<(&str, &str)> = hs
        .iter()
        .map(|h| (h["initial"].as_str().unwrap(), h["after"].as_str().unwrap()))
        .collect();
    assert_eq!(
        pairs,
        vec![
            ("|00>_K |00>_X |0>_V", "|00>_K |00>_X |1>_V"),
            ("|00>_K |00>_X |1>_V", "|00>_K |00>_X |0>_V"),
            ("|01>_K |00>_X |0>_V", "|01>_K |00>_X |0>_V"),
            ("|01>_K |00>_X |1>_V", "|01>_K |00>_X |1>_V"),
        ]
    );

    let r = json(&["histories", "--known-bit", "k1=1", "--query", "01"]);
    assert_eq!(r.results["candidates"], serde_json::json!(["01", "11"]));
    assert_eq!(r.results["histories"].as_array().unwrap().len(), 4);

    assert_eq!(
        run(&["histories", "--known-bit", "k0=0", "--query", "10"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["histories", "--known-bit", "k5=0", "--query", "00"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["histories", "--known-bit", "x0=0", "--query", "00"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn phases_limits() {
    let r = json(&["phases", "--n", "1"]);
    assert!(r
        .checks
        .iter()
        .any(|c| c.name == "reconstruction_second_stage" && c.passed));
    assert_eq!(run(&["phases", "--n", "8"]).status.code(), Some(2));
}

#[test]
fn querycount_numbers() {
    let r = json(&["querycount", "--n", "2"]);
    assert_eq!(r.results["plain_avg"], Value::from("9/4"));
    assert_eq!(r.results["plain_avg_value"], Value::from(2.25));
    assert_eq!(r.results["plain_worst"], Value::from(3));
    assert_eq!(r.results["advanced"], Value::from(1));
    assert_eq!(r.results["quantum"], Value::from(1));
}

#[test]
fn boolean_and_epr() {
    let r = json(&["boolean", "--fixed-k", "01"]);
    assert_eq!(r.results["satisfying_assignments"].as_array().unwrap().len(), 1);
    assert_eq!(r.results["solution"], Value::from("01"));
    assert!(r.all_passed());
    let r = json(&["epr"]);
    assert!(r.all_passed());
    assert_eq!(r.results["backdating"]["equal_outcome_probability"], Value::from(0.0));
}

#[test]
fn identical_config_gives_identical_bytes() {
    for args in [
        vec!["--format", "json", "grover", "--oracle-k", "10", "--seed", "7"],
        vec!["--format", "json", "epr", "--seed", "3"],
        vec!["--format", "json", "boolean", "--fixed-k", "11", "--seed", "9"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
        let parsed = Report::from_json(&String::from_utf8(a.stdout.clone()).unwrap()).unwrap();
        assert_eq!(
            parsed.to_json().trim_end(),
            String::from_utf8(a.stdout).unwrap().trim_end()
        );
    }
}

#[test]
fn library_entry_points() {
    let r = cmd_grover(&GroverConfig {
        n: 2,
        oracle_k: Some("11".into()),
        iterations: None,
        seed: 1,
    })
    .unwrap();
    assert_eq!(r.results["solution"], Value::from("11"));
    assert!(render_text(&r).contains("+0.707107 |11>_K |11>_X |0>_V"));

    let err = cmd_histories(&HistoriesConfig {
        n: 2,
        known_bits: vec!["k0=0".into(), "k1=0".into()],
        query: "00".into(),
    });
    assert!(matches!(err, Err(CliError::Usage(_))));
    assert!(matches!(cmd_phases(0), Err(CliError::Usage(_))));
    assert!(matches!(
        cmd_boolean(&BooleanConfig {
            fixed_k: Some("1".into()),
            seed: 0
        }),
        Err(CliError::Usage(_))
    ));
}
