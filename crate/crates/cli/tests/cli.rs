use std::process::Command as Process;

use ddl_cli::{execute, parse_config, run, with_workers, CliError};
use serde_json::Value;

fn ddl(args: &[&str]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_ddl")).args(args).env("DDL_SEED", "7").output().unwrap()
}

#[test]
fn check_generic_reports_the_coprime_shortcut() {
    let exp = parse_config(r#"{"command":"check-generic","curve":"catalog:parabola"}"#).unwrap();
    let out = execute(&exp).unwrap();
    assert_eq!(out.verdict["genericity"]["verdict"], "Generic");
    assert_eq!(out.verdict["supergenericity"]["status"], "Supergeneric");
    assert_eq!(out.verdict["supergenericity"]["method"], "CoprimeShortcut");
}

#[test]
fn escape_curve_scan_never_meets_k_mu() {
    let doc = r#"{"command":"dirichlet-scan","curve":"catalog:escape","mu":"1/2",
        "s_grid":{"count":5},"n_grid":{"base":2,"lo":1,"hi":12}}"#;
    let out = execute(&parse_config(doc).unwrap()).unwrap();
    for row in out.verdict["per_s"].as_array().unwrap() {
        assert_eq!(row["hit_frequency"], 0.0);
        assert!((row["svp_slope"].as_f64().unwrap() + 1.0).abs() < 1e-9);
    }
    let table = out.table.unwrap();
    assert_eq!(table.header, ["s", "N", "svp_norm", "in_K_mu", "p", "q", "residual"]);
    assert_eq!(table.rows.len(), 60);
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let doc = |tag: &str| {
        format!(
            r#"{{"command":"dirichlet-scan","curve":"catalog:parabola","mu":"1/2","s_grid":{{"count":9}},
               "n_grid":{{"base":2,"lo":1,"hi":10}},"output":{{"csv":"{0}/{tag}.csv","json":"{0}/{tag}.json"}}}}"#,
            dir.path().display()
        )
    };
    let a = run(&parse_config(&doc("a")).unwrap()).unwrap();
    let b = with_workers(Some(1), || run(&parse_config(&doc("b")).unwrap())).unwrap().unwrap();
    assert_eq!(a.verdict, b.verdict);
    let csv_a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let csv_b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(csv_a, csv_b);
    let json: Value = serde_json::from_slice(&std::fs::read(dir.path().join("a.json")).unwrap()).unwrap();
    assert_eq!(json["verdict"], a.verdict);
}

#[test]
fn siegel_runs_reproduce_with_a_seed() {
    let doc = r#"{"command":"siegel","curve":"catalog:parabola","interval":[1,2],"r1":"1/2","r2":"3/2","N":64,"samples":10,"seed":3}"#;
    let a = execute(&parse_config(doc).unwrap()).unwrap();
    let b = execute(&parse_config(doc).unwrap()).unwrap();
    assert_eq!(a.verdict, b.verdict);
    assert_eq!(a.table, b.table);
    assert_eq!(a.verdict["target_volume"], 26.0);
}

#[test]
fn core_errors_name_their_module() {
    let exp = parse_config(r#"{"command":"reduce-standard","curve":{"m":1,"n":2,"interval":[0,1],"entries":[["1","2"]]},"at":0}"#)
        .unwrap();
    let err = execute(&exp).err().unwrap();
    assert_eq!(err.exit_code(), 2);
    assert!(matches!(&err, CliError::Core { .. }));
    let msg = err.to_string();
    assert!(msg.contains("module curve") && msg.contains("not generic"), "{msg}");
}

#[test]
fn binary_exit_codes() {
    let ok = ddl(&["check-pencil", "--curve", "catalog:pencil"]);
    assert_eq!(ok.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["verdict"]["pencil"]["r"], 1);
    assert_eq!(report["verdict"]["verified"], true);

    let dir = tempfile::tempdir().unwrap();
    let constant = dir.path().join("constant.json");
    std::fs::write(&constant, r#"{"m":1,"n":2,"interval":[0,1],"entries":[["1","2"]]}"#).unwrap();
    let out = ddl(&["reduce-standard", "--curve", constant.to_str().unwrap(), "--at", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not generic at the requested point"));

    let bad = ddl(&["dirichlet-scan", "--curve", "catalog:parabola", "--mu", "3/2"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("mu must be in (0, 1)"));

    let config = dir.path().join("run.json");
    std::fs::write(&config, r#"{"command":"vwa","curve":"catalog:moment1","at":"1/2","delta":1,"p_bound":10}"#).unwrap();
    let out = ddl(&["run", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    // even p plus p = +-1: residual 1/2 <= 1
    assert_eq!(report["verdict"]["hits"], 12);
}

#[test]
fn seed_comes_from_the_environment() {
    let out = ddl(&["rep-verify", "--dims", "1..3", "--trials", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"]["seed"], 7);
    assert_eq!(report["verdict"]["inequality_holds"], true);
    let bad = Process::new(env!("CARGO_BIN_EXE_ddl")).args(["rep-verify"]).env("DDL_SEED", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cgood_and_escape_match_known_exponents() {
    let c = execute(&parse_config(r#"{"command":"cgood","function":"s^2"}"#).unwrap()).unwrap();
    assert!((c.verdict["alpha"].as_f64().unwrap() - 0.5).abs() < 0.05);
    let e = execute(&parse_config(r#"{"command":"escape","curve":"catalog:escape","at":"1/3"}"#).unwrap()).unwrap();
    assert!((e.verdict["slope"].as_f64().unwrap() + 1.0).abs() < 1e-9);
}
