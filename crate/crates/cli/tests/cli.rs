//! End-to-end tests of the command-line surface: exit codes, JSON
//! round-trips, offline/online tuple reuse and the pinned CSV headers.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eigensolver"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn eigensolver")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_demo_mixed_family() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("sys.json");
    let out = run(&[
        "gen",
        "--builtin",
        "demo-2d",
        "--output",
        sys.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let report_path = dir.path().join("report.json");
    let out = run(&[
        "solve",
        "--input",
        sys.to_str().unwrap(),
        "--family",
        "mixed",
        "--seed",
        "5",
        "--output",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let solutions = report["solutions"].as_array().unwrap();
    assert_eq!(solutions.len(), 1);
    let re = solutions[0]["re"].as_array().unwrap();
    assert!((re[0].as_f64().unwrap() + 1.0).abs() < 1e-8);
    assert!((re[1].as_f64().unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn solve_without_family_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("sys.json");
    assert!(run(&[
        "gen",
        "--builtin",
        "demo-2d",
        "--output",
        sys.to_str().unwrap()
    ])
    .status
    .success());
    let out = run(&["solve", "--input", sys.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn solve_bad_input_is_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("garbage.json");
    std::fs::write(&sys, "{not json").unwrap();
    let out = run(&[
        "solve",
        "--input",
        sys.to_str().unwrap(),
        "--family",
        "dense",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tuple_reuse_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("sys.json");
    assert!(run(&[
        "gen",
        "--family",
        "vandermonde",
        "--dim",
        "2",
        "--degrees",
        "3",
        "--planted",
        "5",
        "--seed",
        "11",
        "--output",
        sys.to_str().unwrap(),
    ])
    .status
    .success());

    let tuple = dir.path().join("tuple.json");
    let r1 = dir.path().join("r1.json");
    assert_eq!(
        run(&[
            "solve",
            "--input",
            sys.to_str().unwrap(),
            "--family",
            "incremental",
            "--seed",
            "3",
            "--save-tuple",
            tuple.to_str().unwrap(),
            "--output",
            r1.to_str().unwrap(),
        ])
        .status
        .code(),
        Some(0)
    );
    assert!(Path::new(&tuple).exists());

    let solve_with_tuple = |path: &Path| -> serde_json::Value {
        let out = run(&[
            "solve",
            "--input",
            sys.to_str().unwrap(),
            "--tuple",
            tuple.to_str().unwrap(),
            "--seed",
            "9",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
    };
    let r2 = solve_with_tuple(&dir.path().join("r2.json"));
    let r3 = solve_with_tuple(&dir.path().join("r3.json"));
    assert_eq!(r2["solutions"], r3["solutions"]);
    assert_eq!(r2["solutions"].as_array().unwrap().len(), 5);
}

#[test]
fn bench_registry_and_unknown_scenario() {
    let out = run(&["bench"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in [
        "table3_small",
        "table4_small",
        "square_dense",
        "infinity_stress",
    ] {
        assert!(text.contains(name), "registry must list {name}");
    }

    let out = run(&["bench", "no_such_scenario"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bench_csv_headers_are_pinned() {
    // Golden header lines; changing them is a breaking change.
    let out = run(&["bench", "table3_small", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,s,d,delta_expected,gamma,d_size,bwe_max,bwe_geomean,t_offline_s,t_online_s,recovered_count"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    for row in &rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 11);
        // recovered_count == delta_expected on every desk-scale row.
        assert_eq!(fields[3], fields[10], "row {row}");
        let bwe_max: f64 = fields[6].parse().unwrap();
        let bwe_geo: f64 = fields[7].parse().unwrap();
        assert!(bwe_geo <= bwe_max, "geomean above max in {row}");
    }

    let out = run(&["bench", "infinity_stress", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "e,n,s,d,delta_expected,recovered_count,bwe_max,max_solution_norm"
    );
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn env_var_seed_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("sys.json");
    assert!(run(&[
        "gen",
        "--builtin",
        "demo-2d",
        "--output",
        sys.to_str().unwrap()
    ])
    .status
    .success());
    let solve_with_env = |path: &Path, env_seed: &str| -> serde_json::Value {
        let out = bin()
            .args([
                "solve",
                "--input",
                sys.to_str().unwrap(),
                "--family",
                "mixed",
            ])
            .args(["--output", path.to_str().unwrap()])
            .env("EIGENSOLVER_SEED", env_seed)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
    };
    let a = solve_with_env(&dir.path().join("a.json"), "123");
    let b = solve_with_env(&dir.path().join("b.json"), "123");
    assert_eq!(a["seed"], 123);
    assert_eq!(a["solutions"], b["solutions"]);

    // --seed overrides the environment.
    let out = bin()
        .args([
            "solve",
            "--input",
            sys.to_str().unwrap(),
            "--family",
            "mixed",
            "--seed",
            "9",
        ])
        .args(["--output", dir.path().join("c.json").to_str().unwrap()])
        .env("EIGENSOLVER_SEED", "123")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let c: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("c.json")).unwrap()).unwrap();
    assert_eq!(c["seed"], 9);
}
