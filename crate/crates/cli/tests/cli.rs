use std::process::{Command, Output};

use hodge_core::verify::SuiteReport;
use hodge_core::DivisorClass;
use hodge_core::Rational;
use hodge_degrees::output::{OutputRecord, Provenance};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodge-degrees"))
        .args(args)
        .env_remove("HODGE_DEGREES_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn lambda1_values() {
    assert_eq!(stdout(&["lambda1", "--d", "5", "--m", "1,4,2,3"]), "4/25\n");
    assert_eq!(stdout(&["lambda1", "--d", "2", "--m", "1,1,1,1"]), "1/4\n");
    assert_eq!(stdout(&["lambda1", "--d", "3", "--m", "1,1,2,2"]), "2/9\n");
}

#[test]
fn lambda1_every_path_agrees() {
    for via in ["closed-form", "eigen-sum", "localization", "graph-pairing"] {
        assert_eq!(stdout(&["lambda1", "--d", "5", "--m", "3,4,4,4", "--via", via]), "2/25\n", "{via}");
    }
}

#[test]
fn invalid_data_exit_2() {
    assert_eq!(code(&["lambda1", "--d", "5", "--m", "1,1,1,1"]), 2);
    assert_eq!(code(&["lambda1", "--d", "0", "--m", "0,0,0,0"]), 2);
    assert_eq!(code(&["lambda1", "--d", "5", "--m", "1,1,1,1,1"]), 2);
    assert_eq!(code(&["lambda1", "--d", "5", "--m", "1,x,1,3"]), 2);
    assert_eq!(code(&["lambda1e", "--d", "5", "--e", "5", "--m", "1,4,2,3"]), 2);
    assert_eq!(code(&["lambda1e", "--d", "4", "--e", "1", "--m", "2,2,2,2"]), 2);
    assert_eq!(code(&["info", "--d", "5", "--m", "1,2"]), 2);
    assert_eq!(code(&["verify", "identity", "--dmax", "0"]), 2);
}

#[test]
fn monodromies_are_reduced_with_a_warning() {
    let out = run(&["lambda1", "--d", "5", "--m", "6,-1,7,3"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4/25\n");
    assert!(String::from_utf8(out.stderr).unwrap().contains("reduced mod 5 to 1,4,2,3"));
}

#[test]
fn lambda1e_values() {
    assert_eq!(stdout(&["lambda1e", "--d", "5", "--e", "3", "--m", "3,4,4,4"]), "1/25\n");
    assert_eq!(stdout(&["lambda1e", "--d", "3", "--e", "0", "--m", "1,1,2,2"]), "0\n");
    assert_eq!(stdout(&["lambda1e", "--d", "5", "--e", "3", "--m", "3,4,4,4", "--via", "localization"]), "1/25\n");
    assert_eq!(stdout(&["lambda1e", "--d", "5", "--e", "3", "--m", "3,4,4,4", "--via", "graph-pairing"]), "1/25\n");
    // e = 1 on (5; 3,4,4,4) has age sum 3, outside the orbifold localization situation.
    assert_eq!(code(&["lambda1e", "--d", "5", "--e", "1", "--m", "3,4,4,4", "--via", "localization"]), 4);
}

#[test]
fn lambda1e_table() {
    let json = stdout(&["lambda1e", "--d", "5", "--all-e", "--m", "1,4,2,3", "--json"]);
    let rows: Vec<Value> = serde_json::from_str(&json).unwrap();
    let pairs: Vec<(Option<u64>, &str, &str)> = rows
        .iter()
        .map(|r| (r["e"].as_u64(), r["quantity"].as_str().unwrap(), r["value"].as_str().unwrap()))
        .collect();
    assert_eq!(
        pairs,
        vec![
            (Some(0), "lambda_1^e", "0"),
            (Some(1), "lambda_1^e", "1/25"),
            (Some(2), "lambda_1^e", "1/25"),
            (Some(3), "lambda_1^e", "1/25"),
            (Some(4), "lambda_1^e", "1/25"),
            (None, "sum", "4/25"),
            (None, "lambda_1", "4/25"),
        ]
    );
    assert_eq!(rows[5]["provenance"], "eigen-sum");
}

#[test]
fn csv_output() {
    let csv = stdout(&["lambda1e", "--d", "5", "--all-e", "--m", "1,4,2,3", "--csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "d,m,e,quantity,num,den,decimal,connected");
    assert_eq!(lines[2], "5,1;4;2;3,1,lambda_1^e,1,25,0.04,true");
    assert_eq!(lines[7], "5,1;4;2;3,,lambda_1,4,25,0.16,true");
    assert_eq!(code(&["lambda1", "--d", "5", "--m", "1,4,2,3", "--csv", "--json"]), 2);
}

#[test]
fn json_records_round_trip() {
    let json = stdout(&["lambda1", "--d", "7", "--m", "1,1,2,3", "--json"]);
    let r: OutputRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(r.value, "4/49");
    assert_eq!(r.provenance, Provenance::ClosedForm);
    assert_eq!(r.decimal.as_deref(), Some("0.0816326530612245"));
    assert_eq!(serde_json::to_string(&r).unwrap() + "\n", json);

    let rows: Vec<OutputRecord> =
        serde_json::from_str(&stdout(&["lambda1e", "--d", "7", "--all-e", "--m", "1,1,2,3", "--json"])).unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(serde_json::from_str::<Vec<OutputRecord>>(&serde_json::to_string(&rows).unwrap()).unwrap(), rows);
}

#[test]
fn graph_formula_text() {
    let text = stdout(&["graph-formula", "--d", "2", "--m", "1,1,1,1", "--canonical"]);
    let terms: Vec<(String, String)> = text
        .lines()
        .map(|l| {
            let mut it = l.split_whitespace();
            (it.next().unwrap().to_string(), it.next().unwrap().to_string())
        })
        .collect();
    assert_eq!(terms.len(), 8);
    for (sym, c) in &terms {
        let want = if sym.starts_with("psi") { "-1/24" } else { "1/6" };
        assert_eq!(c, want, "{sym}");
    }
    assert_eq!(terms.iter().filter(|(s, _)| s.starts_with("Delta")).count(), 3);
}

#[test]
fn graph_formula_json_parses() {
    let json = stdout(&["graph-formula", "--d", "3", "--m", "1,1,1,1,2", "--json"]);
    let class = DivisorClass::<Rational>::from_json(json.trim()).unwrap();
    assert_eq!((class.n(), class.d()), (5, 3));
    assert_eq!(class.to_json(), json.trim());
}

#[test]
fn graph_formula_for_lambda1e() {
    let json = stdout(&["graph-formula", "--d", "5", "--m", "1,4,2,3", "--e", "1", "--json"]);
    let class = DivisorClass::<Rational>::from_json(json.trim()).unwrap();
    let deg = hodge_core::tautring::evaluate_degree_4pt(&class).unwrap();
    assert_eq!(deg, hodge_core::numeric::ratio(1, 25));
}

#[test]
fn unsupported_combinations_exit_4() {
    assert_eq!(code(&["graph-formula", "--d", "3", "--m", "1,1,1,1,2", "--e", "1"]), 4);
    assert_eq!(code(&["graph-formula", "--d", "3", "--m", "1,1,1"]), 4);
    assert_eq!(code(&["verify", "identity", "--dmax", "3", "--nmax", "5"]), 4);
    assert_eq!(code(&["lambda1e", "--d", "5", "--e", "1", "--m", "1,4,2,3", "--via", "eigen-sum"]), 4);
}

#[test]
fn info_values() {
    let text = stdout(&["info", "--d", "6", "--m", "2,4,3,3"]);
    assert!(text.contains("genus      2\n"));
    assert!(text.contains("q          2,2,3,3\n"));
    let v: Value = serde_json::from_str(&stdout(&["info", "--d", "5", "--m", "1,4,2,3", "--json"])).unwrap();
    assert_eq!(v["genus"], 4);
    assert_eq!(v["ranks"], serde_json::json!([0, 1, 1, 1, 1]));
    let v: Value = serde_json::from_str(&stdout(&["info", "--d", "1", "--m", "0,0,0", "--json"])).unwrap();
    assert_eq!((v["genus"].as_i64(), v["dimension"].as_u64()), (Some(0), Some(0)));
}

#[test]
fn localize_report() {
    let v: Value = serde_json::from_str(&stdout(&["localize", "--d", "5", "--m", "1,4,2,3", "--json"])).unwrap();
    assert_eq!(v["solved"], "4/25");
    assert_eq!(v["agrees"], true);
    assert_eq!(v["contributions"].as_array().unwrap().len(), 8);
    let v: Value =
        serde_json::from_str(&stdout(&["localize", "--d", "5", "--m", "3,4,4,4", "--e", "3", "--json"])).unwrap();
    assert_eq!((v["alpha"].as_str(), v["solved"].as_str()), (Some("1"), Some("1/25")));
}

#[test]
fn verify_suites_pass() {
    for (suite, extra) in [
        ("identity", vec![]),
        ("consistency", vec![]),
        ("prime", vec![]),
        ("localization", vec![]),
        ("question", vec![]),
        ("graph", vec!["--nmax", "6"]),
    ] {
        let mut args = vec!["verify", suite, "--dmax", "6"];
        args.extend(extra);
        let text = stdout(&args);
        assert!(text.contains(" 0 failed"), "{suite}: {text}");
    }
}

#[test]
fn verify_json_is_independent_of_jobs() {
    let base = ["verify", "graph", "--dmax", "4", "--nmax", "6", "--all-orderings", "--json"];
    let one = stdout(&[&base[..], &["--jobs", "1"]].concat());
    let three = stdout(&[&base[..], &["--jobs", "3"]].concat());
    assert_eq!(one, three);
    let report: SuiteReport = serde_json::from_str(&one).unwrap();
    assert!(report.passed() && report.checked > 0);

    let env = Command::new(env!("CARGO_BIN_EXE_hodge-degrees"))
        .args(base)
        .env("HODGE_DEGREES_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), one);
    let bad = Command::new(env!("CARGO_BIN_EXE_hodge-degrees"))
        .args(base)
        .env("HODGE_DEGREES_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
