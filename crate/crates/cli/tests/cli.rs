use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_constadepth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn table_z9_matches_golden_file() {
    let o = run(&["table", "z9"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), include_str!("golden/table_z9.txt"));
}

#[test]
fn tables_are_deterministic() {
    for name in ["z9", "gr44"] {
        for fmt in ["human", "json", "csv"] {
            let a = run(&["table", name, "--format", fmt]);
            let b = run(&["table", name, "--format", fmt]);
            assert_eq!(a.stdout, b.stdout, "{name} {fmt}");
        }
    }
}

#[test]
fn spectrum_examples() {
    let v = json(&["spectrum", "--ring", "GR(9,1)", "--lambda", "2", "--N", "18", "--k", "10"]);
    assert_eq!(v["spectrum"], serde_json::json!([[3, 18]]));
    assert_eq!(v["cardinality_power"], "3^16");
    assert_eq!(v["cardinality"], "43046721");
    assert_eq!(v["case"], "CHAIN_LAMBDABAR_NE_1");

    let v = json(&["spectrum", "--ring", "GR(4,4)", "--lambda", "-1", "--N", "56", "--k", "13,6,10"]);
    assert_eq!(v["spectrum"], serde_json::json!([[1, 3], [15, 56]]));
    assert_eq!(v["cardinality_power"], "2^204");
    assert_eq!(v["factors"], serde_json::json!(["x + 3", "x^3 + 2x^2 + x + 3", "x^3 + 3x^2 + 2x + 3"]));

    let v = json(&["spectrum", "--ring", "GR(9,1)", "--lambda", "2", "--N", "18", "--k", "18"]);
    assert_eq!(v["spectrum"], serde_json::json!([]));
    assert_eq!(v["cardinality"], "1");
}

#[test]
fn oracle_only_falls_back_to_enumeration() {
    let v = json(&["spectrum", "--ring", "GR(4,1)", "--lambda", "1", "--N", "4", "--k", "2"]);
    assert_eq!(v["case"], "ORACLE_ONLY");
    let d = json(&["distribution", "--ring", "GR(4,1)", "--lambda", "1", "--N", "4", "--k", "2"]);
    assert_eq!(v["spectrum"], d["spectrum"]);
}

#[test]
fn exit_codes() {
    let over = run(&["spectrum", "--ring", "GR(4,1)", "--lambda", "1", "--N", "16", "--k", "0"]);
    assert_eq!(over.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&over.stderr).contains("--cap"));
    assert_eq!(run(&["spectrum", "--ring", "GR(4,1)", "--lambda", "2", "--N", "4", "--k", "0"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--ring", "GR(6,1)", "--lambda", "1", "--N", "4", "--k", "0"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--ring", "GR(9,1)", "--lambda", "2", "--N", "18", "--k", "19"]).status.code(), Some(2));
    assert_eq!(run(&["table", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--grid", "{"]).status.code(), Some(2));
    let raised = run(&["distribution", "--ring", "GR(4,1)", "--lambda", "1", "--N", "8", "--k", "0", "--cap", "70000"]);
    assert_eq!(raised.status.code(), Some(0));
}

#[test]
fn depth_command() {
    let v = json(&["depth", "--ring", "GR(4,1)", "[3,1,1,1]"]);
    assert_eq!(v["depth"], 4);
    assert_eq!(v["witness"], 2);
    let v = json(&["depth", "--ring", "FU(2,2)", "[[0,0],[1,0]]"]);
    assert_eq!(v["depth"], 2);
    let v = json(&["depth", "--ring", "GR(9,1)", "[0,0,0]"]);
    assert_eq!(v["depth"], 0);
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn factor_and_torsion_commands() {
    let v = json(&["factor", "--ring", "GR(4,4)", "--lambda", "-1", "--N", "56"]);
    assert_eq!(v["n"], 7);
    assert_eq!(v["s"], 3);
    assert_eq!(v["factors"].as_array().unwrap().len(), 3);
    let t = json(&["torsion", "--ring", "GR(9,1)", "--lambda", "2", "--N", "18", "--k", "10"]);
    for rec in t["torsion"].as_array().unwrap() {
        assert_eq!(rec["agree"], true);
    }
    assert_eq!(t["torsion"][1]["formula"], "x^2 + 1");
    assert_eq!(t["cardinality_torsion"], t["cardinality_echelon"]);
}

#[test]
fn verify_examples() {
    let v = json(&["verify", "--grid", r#"[{"ring": "GR(4,1)", "lambda": -1, "N": 4}]"#]);
    // k = 0..=e p^s = 8
    assert_eq!(v["summary"]["records"], 9);
    assert_eq!(v["summary"]["pass"], 9);
    let v = json(&["verify", "--grid", r#"[{"ring": "GR(9,1)", "lambda": 2, "N": [6]}]"#]);
    assert_eq!(v["summary"]["records"], 7);
    assert_eq!(v["verdict"], "PASS");
    let v = json(&["verify", "--grid", "[]"]);
    assert_eq!(v["summary"]["records"], 0);
    assert_eq!(v["verdict"], "PASS");
}

#[test]
fn verify_reads_grid_files() {
    let path = std::env::temp_dir().join(format!("constadepth-grid-{}.json", std::process::id()));
    std::fs::write(&path, r#"[{"ring": "FU(2,2)", "lambda": [1, 1], "N": 2}]"#).unwrap();
    let v = json(&["verify", "--grid", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(v["summary"]["records"], 5);
}

#[test]
fn verify_is_independent_of_worker_count() {
    let grid = r#"[{"ring": "GR(4,1)", "lambda": 3, "N": [8]}, {"ring": "GR(9,1)", "lambda": 4, "N": 6}]"#;
    let one = run(&["verify", "--grid", grid, "--jobs", "1", "--format", "csv"]);
    let four = run(&["verify", "--grid", grid, "--jobs", "4", "--format", "csv"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn emitted_code_specs_round_trip() {
    let v = json(&["spectrum", "--ring", "FU(2,2)", "--lambda", "[1,1]", "--N", "4", "--k", "3"]);
    let code = constadepth::io::parse_code_spec(&v["code"]).unwrap();
    let ring = constadepth::Ring::parse("FU(2,2)").unwrap();
    let lambda = constadepth::io::parse_elem_str(&ring, "[1,1]").unwrap();
    assert_eq!(code, constadepth::Code::new(&ring, lambda, 4, &[3]).unwrap());
}
