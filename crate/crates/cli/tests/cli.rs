use std::process::{Command, Output};

use serde_json::Value;

fn wittcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittcalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_report(args: &[&str]) -> Value {
    let mut full = vec!["run", "--format", "json"];
    full.extend_from_slice(args);
    let o = wittcalc(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn strip_runtimes(mut v: Value) -> Value {
    for case in v["cases"].as_array_mut().unwrap() {
        case["runtime_ms"] = Value::from(0);
    }
    v
}

#[test]
fn triple_product_suite_reports_four_passing_cases() {
    let v = json_report(&["--suite", "lemma-8-2"]);
    assert_eq!(v["suite"], "lemma-8-2");
    assert_eq!(v["status"], "pass");
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 4);
    for c in cases {
        assert_eq!(c["status"], "pass");
        assert!(c["runtime_ms"].is_u64());
        assert!(c["expected"].is_string() && c["actual"].is_string());
    }
}

#[test]
fn series_suite_reaches_degree_41() {
    let v = json_report(&["--suite", "series-9-1", "--max-degree", "41"]);
    assert_eq!(v["params"]["max-degree"], 41);
    let names: Vec<&str> = v["cases"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"xy-coefficient-t41"));
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn f10_squared_check() {
    let v = json_report(&["--suite", "m-module", "--check", "f10-squared"]);
    let cases = v["cases"].as_array().unwrap();
    let shift1 = cases.iter().find(|c| c["name"] == "f10-squared-shift-1").unwrap();
    assert_eq!(shift1["status"], "pass");
    assert_eq!(shift1["actual"], "9*f_{1,1} + 198*f_{2,1} + 720*f_{3,1}");
}

#[test]
fn reports_are_deterministic() {
    let args = ["--suite", "hgr-quotient", "--truncation", "4", "--jobs", "3"];
    let a = strip_runtimes(json_report(&args));
    let b = strip_runtimes(json_report(&args));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn report_written_to_file() {
    let dir = std::env::temp_dir().join(format!("wittcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = wittcalc(&["run", "--suite", "lemma-8-1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["status"], "pass");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(wittcalc(&["run", "--suite", "lemma-9-9"]).status.code(), Some(2));
    assert_eq!(
        wittcalc(&["run", "--suite", "tower-rho", "--truncation", "3", "--tower-length", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(wittcalc(&["run", "--suite", "m-module", "--check", "bogus"]).status.code(), Some(2));
    assert_eq!(wittcalc(&["membership", "1/8*w"]).status.code(), Some(2));
    assert_eq!(wittcalc(&["membership", "1/0*v"]).status.code(), Some(2));
    assert_eq!(wittcalc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn membership_examples() {
    let o = wittcalc(&["membership", "1/8*v - 1/8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("f_{1,0}: 1\n"), "{}", stdout(&o));

    let o = wittcalc(&["membership", "v^5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("f_{0,-5}: 1\n"), "{}", stdout(&o));

    let o = wittcalc(&["membership", "1/64*v^2 - 1/32*v + 1/64", "--shift", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "member");
    let coeffs: Vec<(u64, i64, String)> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["j"].as_u64().unwrap(), c["n"].as_i64().unwrap(), c["coefficient"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(coeffs, vec![(1, 1, "9".into()), (2, 1, "198".into()), (3, 1, "720".into())]);
}

#[test]
fn non_member_exits_1() {
    let o = wittcalc(&["membership", "1/16*v - 1/16"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not-in-truncated-span"));
}
