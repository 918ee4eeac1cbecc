use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperladder"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).expect("valid JSON")
}

#[test]
fn lists_nine_families() {
    assert_eq!(code(&["list"]), 0);
    assert_eq!(stdout(&["list"]).lines().count(), 9);
    let families = json(&["list", "--format", "json"]);
    let names: Vec<_> = families.as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap()).collect();
    assert_eq!(names.len(), 9);
    assert!(names.contains(&"chebyshev_discrete"));
    let hahn = families.as_array().unwrap().iter().find(|f| f["name"] == "hahn").unwrap();
    assert_eq!(hahn["params"].as_array().unwrap().len(), 3);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["list", "--bogus"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["table"]), 2);
    assert_eq!(code(&["table", "--family", "nope"]), 2);
    assert_eq!(code(&["table", "--family", "hermite", "--alpha", "1"]), 2);
    assert_eq!(code(&["table", "--family", "laguerre", "--alpha", "x/y"]), 2);
    assert_eq!(code(&["verify", "--family", "hermite", "--suites", "odes"]), 2);
    assert_eq!(code(&["verify", "--family", "all", "--mu", "1/2"]), 2);
    assert_eq!(code(&["eval", "--family", "hermite", "--n", "0"]), 2);
}

#[test]
fn hermite_table_rows() {
    let doc = json(&["table", "--family", "hermite", "--n-max", "2"]);
    let rows: Vec<Vec<String>> = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["coefficients"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect())
        .collect();
    assert_eq!(rows, [vec!["1"], vec!["0", "2"], vec!["-2", "0", "4"]]);
    assert_eq!(doc["rows"][2]["lambda"], "4");
}

#[test]
fn table_formats_and_exact_rationals() {
    let doc = json(&["table", "--family", "hahn", "--alpha", "1", "--beta", "2", "--N", "8", "--n-max", "3"]);
    assert_eq!(doc["params"]["N"], "8");
    assert_eq!(doc["rows"][0]["alpha"], "1/5");
    for row in doc["rows"].as_array().unwrap() {
        for key in ["lambda", "alpha", "beta", "gamma", "r", "mu", "nu"] {
            let text = row[key].as_str().unwrap();
            assert!(!text.contains('.') && !text.contains('e'), "{key} = {text}");
        }
    }
    let csv = stdout(&["table", "--family", "charlier", "--n-max", "3", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.starts_with("n,lambda,alpha,beta,gamma,r,mu,nu,coefficients"));
}

#[test]
fn table_rejects_degrees_past_the_lattice() {
    assert_eq!(code(&["table", "--n-max", "9", "--family", "kravchuk", "--p", "1/2", "--N", "8"]), 2);
    assert_eq!(code(&["table", "--n-max", "7", "--family", "kravchuk", "--p", "1/2", "--N", "8"]), 0);
}

#[test]
fn eval_examples() {
    assert_eq!(stdout(&["eval", "--family", "hermite", "--n", "0", "--points", "0"]).trim(), "0 0.7511255444649425");
    assert_eq!(
        stdout(&["eval", "--family", "legendre", "--n", "0", "--points", "0.5"]).trim(),
        "0.5 0.7071067811865476"
    );
    let doc = json(&["eval", "--family", "charlier", "--mu", "1/2", "--n", "1", "--points", "0,1,2", "--format", "json"]);
    let values = doc["values"].as_array().unwrap();
    assert_eq!(values.len(), 3);
    // psi_1(x) = sqrt(e^-mu mu^x / x!) (x - mu) / sqrt(mu)
    let mu: f64 = 0.5;
    for (x, v) in values.iter().enumerate() {
        let x = x as f64;
        let fact = (1..=x as u32).product::<u32>() as f64;
        let expected = (-mu).exp().sqrt() * mu.powf(x / 2.0) / fact.sqrt() * (x - mu) / mu.sqrt();
        let got = v["value"].as_f64().unwrap();
        assert!((got.abs() - expected.abs()).abs() < 1e-14, "x={x}: {got} vs {expected}");
    }
}

#[test]
fn eval_names_the_offending_point() {
    let out = run(&["eval", "--family", "charlier", "--n", "1", "--points", "0,1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1.5"));
    assert_eq!(code(&["eval", "--family", "legendre", "--n", "1", "--points", "2"]), 2);
    assert_eq!(code(&["eval", "--family", "hahn", "--n", "1", "--points", "8"]), 2);
}

#[test]
fn meixner_mu_out_of_domain() {
    assert_eq!(code(&["verify", "--family", "meixner", "--gamma", "2", "--mu", "2"]), 2);
}

#[test]
fn hermite_engine_suites_pass_exactly() {
    let args = [
        "verify",
        "--family",
        "hermite",
        "--n-max",
        "10",
        "--suites",
        "ode,recurrence,ladder,orthonormality,adjoint,factorization",
    ];
    assert_eq!(code(&args), 0);
    let doc = json(&args);
    assert_eq!(doc["pass"], true);
    for suite in doc["suites"].as_array().unwrap() {
        for check in suite["checks"].as_array().unwrap() {
            if check["mode"] == "exact" {
                assert_eq!(check["residual"], "exact-zero", "{check}");
            }
        }
    }
}

#[test]
fn fixtures_suite_flags_corrections_and_fails_on_misprints() {
    let args = ["verify", "--family", "hermite", "--n-max", "10", "--suites", "all"];
    assert_eq!(code(&args), 1);
    let doc = json(&args);
    let fixtures = doc["suites"].as_array().unwrap().iter().find(|s| s["name"] == "fixtures").unwrap();
    let checks = fixtures["checks"].as_array().unwrap();
    let failing: Vec<_> = checks.iter().filter(|c| c["pass"] == false).map(|c| c["identity"].clone()).collect();
    assert_eq!(failing, ["NC2"]);
    let h = checks.iter().find(|c| c["identity"] == "H").unwrap();
    assert_eq!((h["corrected"].clone(), h["pass"].clone()), (Value::Bool(true), Value::Bool(true)));
}

#[test]
fn charlier_passes_every_suite() {
    assert_eq!(code(&["verify", "--family", "charlier", "--n-max", "6"]), 0);
}

#[test]
fn chebyshev_factorization_row() {
    let doc = json(&["verify", "--family", "chebyshev", "--N", "8", "--suites", "factorization"]);
    let checks = doc["suites"][0]["checks"].as_array().unwrap();
    let row = checks.iter().find(|c| c["identity"] == "mu" && c["n"] == 2).unwrap();
    assert_eq!(row["value"], "495/4");
}

#[test]
fn verify_text_and_csv() {
    let text = stdout(&["verify", "--family", "legendre", "--n-max", "3", "--suites", "ode,ladder", "--format", "text"]);
    assert!(text.starts_with("legendre\n"));
    assert!(text.contains("ode             pass 4/4"));
    let csv = stdout(&["verify", "--family", "legendre", "--n-max", "3", "--suites", "ode", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.lines().nth(1).unwrap().starts_with("legendre,ode,C1,0,exact,exact-zero"));
}

#[test]
fn adjoint_normalized_switches_constants() {
    let plain = json(&["table", "--family", "legendre", "--n-max", "2"]);
    let scaled = json(&["table", "--family", "legendre", "--n-max", "2", "--adjoint-normalized"]);
    assert_eq!(plain["rows"][1]["mu"], "4");
    // alpha_1 gamma_2 = (2/3)(2/5) for Legendre
    assert_eq!(scaled["rows"][1]["mu"], "4/15");
}

#[test]
fn tolerance_must_be_positive() {
    assert_eq!(code(&["verify", "--family", "hermite", "--suites", "ode", "--tolerance", "0"]), 2);
}
