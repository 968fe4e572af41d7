use std::process::{Command, Output};

fn hzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hzeta")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("valid json")
}

#[test]
fn eval_zeta_h_two() {
    let o = hzeta(&["eval", "zeta_h", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let value = v["value"][0].as_f64().unwrap();
    // (7/4) zeta(3)
    assert!((value - 2.1035995805292898).abs() < 1e-12);
    assert!(v["error"].as_f64().unwrap() <= 1e-10);
    assert_eq!(v["method"], "series");
}

#[test]
fn eval_t_quarter_is_minus_catalan() {
    let o = hzeta(&["eval", "T", "0.25"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("-0.915965594177"), "{}", stdout(&o));
}

#[test]
fn eval_at_pole_exits_two() {
    let o = hzeta(&["eval", "zeta_h", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("s=1, order 2, residue log2+γ/2"), "{e}");
    let o = hzeta(&["eval", "zeta_h", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1/48"));
}

#[test]
fn eval_domain_and_usage_errors_exit_two() {
    assert_eq!(hzeta(&["eval", "T", "0.7"]).status.code(), Some(2));
    assert_eq!(hzeta(&["eval", "hurwitz_zeta", "2"]).status.code(), Some(2));
    assert_eq!(hzeta(&["eval", "w", "-1"]).status.code(), Some(2));
    assert_eq!(hzeta(&["eval", "zeta_h", "abc"]).status.code(), Some(2));
}

#[test]
fn eval_accuracy_failure_exits_three() {
    let o = hzeta(&["--max-terms", "100", "eval", "w", "1000"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn eval_negative_and_complex_arguments() {
    let o = hzeta(&["eval", "zeta", "-1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!((json(&o)["value"][0].as_f64().unwrap() + 1.0 / 12.0).abs() < 1e-14);
    let o = hzeta(&["eval", "hurwitz_zeta", "2", "0.5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let v: f64 = row[2].parse().unwrap();
    assert!((v - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-13);
    let o = hzeta(&["eval", "zeta_h", "2+3i"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains('i'));
    let o = hzeta(&["eval", "zeta_h", "-0.5+1i", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert!((v["value"][0].as_f64().unwrap() - 0.033388248507515288463).abs() < 1e-13);
    assert!((v["value"][1].as_f64().unwrap() + 0.089871875416677162627).abs() < 1e-13);
    assert_ne!(v["method"], "series");
}

#[test]
fn verify_lemma_rows() {
    let o = hzeta(&["verify", "--filter", "LEMMA1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 12);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn verify_full_suite_summary() {
    let o = hzeta(&["verify", "--jobs", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("families: "), "{last}");
    let families: usize = last["families: ".len()..].split(',').next().unwrap().parse().unwrap();
    assert!(families >= 30);
    assert!(last.contains("failures: 0"));
}

#[test]
fn verify_unreachable_tolerance_exits_one() {
    let o = hzeta(&["verify", "--filter", "LEMMA1", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_json_round_trips() {
    let dir = std::env::temp_dir().join(format!("hzeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("suite.json");
    let o = hzeta(&["verify", "--filter", "COR*", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let suite = hzeta::harness::suite_from_json(&text).unwrap();
    assert!(suite.all_passed());
    assert_eq!(suite.summary.families, 4);
    let again = hzeta::harness::suite_to_json(&suite).unwrap();
    assert_eq!(hzeta::harness::suite_from_json(&again).unwrap(), suite);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_csv_has_header_and_rows() {
    let o = hzeta(&["verify", "--filter", "GF", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "id,params,lhs,rhs,abs_err,rel_err,status,ms");
    assert_eq!(lines.len(), 5);
}

#[test]
fn table_zeta_h_even_matches_closed_form() {
    let o = hzeta(&["table", "zeta_h_even", "1..5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for r in rows {
        let series = r[1].as_f64().unwrap();
        let closed = r[2].as_f64().unwrap();
        assert!((series - closed).abs() < 1e-12);
    }
}

#[test]
fn table_t_curve_is_symmetric() {
    let o = hzeta(&["table", "T_curve", "0..0.5", "--step", "0.01", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let values: Vec<f64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 51);
    for j in 0..values.len() {
        assert!((values[j] - values[50 - j]).abs() < 1e-9, "row {j}");
    }
}

#[test]
fn table_residues() {
    let o = hzeta(&["table", "residues", "0..2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows[0][0], 1);
    assert_eq!(rows[0][1], 2);
    assert_eq!(rows[0][2].as_f64(), Some(0.5));
    assert_eq!(rows[0][3], "log2+γ/2");
    assert_eq!(rows[1][0], -1);
    assert_eq!(rows[1][1], 1);
    assert!(rows[1][2].is_null());
    assert_eq!(rows[1][3], "1/48");
}

#[test]
fn table_critical_line_and_range_errors() {
    let o = hzeta(&["table", "critical_line", "0..1", "--step", "0.5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("t,re,im"));
    assert_eq!(text.lines().count(), 4);
    assert_eq!(hzeta(&["table", "T_curve", "0.5..0"]).status.code(), Some(2));
    assert_eq!(hzeta(&["table", "alpha_beta", "0..3"]).status.code(), Some(2));
}
