use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_torsionlab"));
    cmd.args(args).env_remove("TORSIONLAB_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_env(args, &[])
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let r = run(&all);
    let v = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}{}", r.stdout, r.stderr));
    (r.code, v)
}

fn re(v: &Value) -> f64 {
    v["re"].as_f64().unwrap()
}

fn im(v: &Value) -> f64 {
    v["im"].as_f64().unwrap()
}

const FIG8_S: &str = "2.618033988749895,0";

#[test]
fn trefoil_has_one_root() {
    let (code, v) = json(&["riley-roots", "--n", "1", "--s", "2,0"]);
    assert_eq!(code, 0);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert!((re(&rows[0]["u"]) - 3.25).abs() < 1e-12);
    assert!(im(&rows[0]["u"]).abs() < 1e-12);
    assert!((re(&rows[0]["x"]) - 2.5).abs() < 1e-15);
}

#[test]
fn figure_eight_has_two_roots() {
    let (code, v) = json(&["riley-roots", "--n", "-1", "--s", FIG8_S]);
    assert_eq!(code, 0);
    let mut us: Vec<f64> = v["results"].as_array().unwrap().iter().map(|r| re(&r["u"])).collect();
    us.sort_by(f64::total_cmp);
    let r8 = 8f64.sqrt();
    assert_eq!(us.len(), 2);
    assert!((us[0] - (2.0 - r8)).abs() < 1e-10);
    assert!((us[1] - (2.0 + r8)).abs() < 1e-10);
}

#[test]
fn report_schema() {
    let (_, v) = json(&["riley-roots", "--n", "2", "--s", "1.3,0.2"]);
    let obj = v.as_object().unwrap();
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    for k in ["command", "config", "results", "warnings", "versions"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(v["command"], "riley-roots");
    assert_eq!(v["config"]["n"], 2);
    assert_eq!(re(&v["config"]["s"]), 1.3);
    assert!(v["versions"]["torsionlab"].is_string());
    // 2n - 1 roots for n > 0
    assert_eq!(v["results"].as_array().unwrap().len(), 3);
}

#[test]
fn zero_n_is_a_usage_error() {
    let r = run(&["riley-roots", "--n", "0", "--s", "2,0"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("n ≠ 0"), "{}", r.stderr);
    assert_eq!(run(&["torsion", "--n", "0", "--s", "2,0"]).code, 2);
    assert_eq!(run(&["table", "--n", "0", "--sweep-x", "2.1:3:3"]).code, 2);
}

#[test]
fn malformed_input_is_a_usage_error() {
    assert_eq!(run(&["riley-roots", "--n", "1", "--s", "(2,0)"]).code, 2);
    assert_eq!(run(&["riley-roots", "--n", "1", "--s", "2"]).code, 2);
    assert_eq!(run(&["riley-roots", "--n", "1"]).code, 2);
    assert_eq!(run(&["riley-roots", "--n", "1", "--s", "0,0"]).code, 2);
    assert_eq!(run(&["riley-roots", "--n", "1", "--s", "2,0", "--tol", "-1"]).code, 2);
    assert_eq!(run(&["surgery", "--n", "1", "--p", "2", "--q", "4"]).code, 2);
    assert_eq!(run(&["table", "--n", "1", "--sweep-x", "2:3"]).code, 2);
    assert_eq!(run(&["verify", "--check", "no_such_check"]).code, 2);
    assert_eq!(run(&["torsion", "--n", "1", "--s", "2,0", "--relator", "a c"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn torsion_of_trefoil() {
    let (code, v) = json(&["torsion", "--n", "1", "--s", "2,0"]);
    assert_eq!(code, 0);
    let row = &v["results"][0];
    assert!((re(&row["tau"]) - 2.0).abs() < 1e-10);
    assert_eq!(row["method"], "closed_form");
    assert!(row.get("tau_oracle").is_none());
}

#[test]
fn torsion_verify_figure_eight() {
    let (code, v) = json(&["torsion", "--n", "-1", "--s", FIG8_S, "--verify"]);
    assert_eq!(code, 0);
    for row in v["results"].as_array().unwrap() {
        assert!((re(&row["tau"]) + 4.0).abs() < 1e-8);
        assert!(row["diff"].as_f64().unwrap() < 1e-8);
        assert_eq!(row["pass"], true);
    }
}

#[test]
fn parabolic_meridian_is_rejected() {
    let r = run(&["torsion", "--n", "1", "--s", "1,0"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("hypothesis violated"), "{}", r.stderr);
}

#[test]
fn custom_relator_with_macros() {
    // the figure-eight relator written through a user macro
    let (code, v) = json(&[
        "torsion",
        "--n",
        "-1",
        "--s",
        "1.4,0.3",
        "--define",
        "v=b a^-1 b^-1 a",
        "--relator",
        "v^-1 a v b^-1",
    ]);
    assert_eq!(code, 0);
    for row in v["results"].as_array().unwrap() {
        assert!(row["relator_defect"].as_f64().unwrap() < 1e-9);
        assert_eq!(row["pass"], true);
    }
    // not a relator of this group: oracle disagrees
    let r = run(&["torsion", "--n", "-1", "--s", "1.4,0.3", "--relator", "w a w^-1 b^-1"]);
    assert_eq!(r.code, 1);
}

#[test]
fn surgery_on_figure_eight() {
    let (code, v) = json(&["surgery", "--n", "-1", "--p", "1", "--q", "1"]);
    assert_eq!(code, 0);
    let rows = v["results"].as_array().unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        assert!(row["extension_residual"].as_f64().unwrap() < 1e-8);
        assert_eq!(row["agree"], true);
        let a = re(&row["tau_surgery"]);
        let b = re(&row["tau_surgery_dehn"]);
        assert!((a - b).abs() < 1e-8 * (1.0 + a.abs()));
    }
}

#[test]
fn empty_surgery_exits_three() {
    // rho(a) = I is impossible for s != +-1
    let r = run(&["surgery", "--n", "1", "--p", "1", "--q", "0"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("no representation"), "{}", r.stderr);
}

#[test]
fn verify_passes() {
    let r = run(&["verify", "--trials", "40"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    let (code, v) = json(&["verify", "--trials", "10", "--check", "torsion_vs_fox", "--n-range", "-2:2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 1);
    assert_eq!(v["config"]["n_values"], serde_json::json!([-2, -1, 1, 2]));
}

#[test]
fn table_matches_reference() {
    let (code, v) = json(&["table", "--n", "1", "--sweep-x", "2.1:4.0:20"]);
    assert_eq!(code, 0);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    for row in rows {
        let x = row["x"].as_f64().unwrap();
        let want = 2.0 / (x * x * (x * x - 3.0).powi(2));
        assert!((re(&row["tau_surgery"]) - want).abs() < 1e-9 * (1.0 + want));
    }
}

#[test]
fn reruns_are_bit_identical() {
    for args in [
        vec!["surgery", "--n", "2", "--p", "1", "--q", "1", "--seed", "7", "--output", "json"],
        vec!["verify", "--trials", "5", "--seed", "3", "--output", "json"],
        vec!["table", "--n", "-1", "--sweep-x", "2.2:3.5:7", "--output", "json"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
        // execution mode does not change the numbers
        let mut seq = args.clone();
        seq.push("--sequential");
        let c = run(&seq);
        let strip = |s: &str| s.replace("\"sequential\": true", "\"sequential\": false");
        assert_eq!(strip(&c.stdout), a.stdout);
    }
}

#[test]
fn thread_cap_from_environment() {
    let args = ["table", "--n", "1", "--sweep-x", "2.1:3:5", "--output", "json"];
    let a = run_env(&args, &[("TORSIONLAB_THREADS", "1")]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, run(&args).stdout);
    assert_eq!(run_env(&args, &[("TORSIONLAB_THREADS", "lots")]).code, 2);
}

/// Flattens JSON results the way the CSV writer does.
fn flatten(row: &Value) -> Vec<(String, Option<f64>, Option<String>)> {
    let mut out = Vec::new();
    for (k, v) in row.as_object().unwrap() {
        match v {
            Value::Object(m) if m.contains_key("re") => {
                out.push((format!("{k}_re"), m["re"].as_f64(), None));
                out.push((format!("{k}_im"), m["im"].as_f64(), None));
            }
            Value::Number(n) => out.push((k.clone(), n.as_f64(), None)),
            Value::Null => out.push((k.clone(), None, None)),
            Value::Bool(b) => out.push((k.clone(), None, Some(b.to_string()))),
            Value::String(s) => out.push((k.clone(), None, Some(s.clone()))),
            other => panic!("unexpected {other}"),
        }
    }
    out
}

fn assert_csv_matches_json(args: &[&str]) {
    let (_, v) = json(args);
    let mut csv_args = args.to_vec();
    csv_args.extend(["--output", "csv"]);
    let text = run(&csv_args).stdout;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let rows = v["results"].as_array().unwrap();
    assert_eq!(records.len(), rows.len());
    assert!(!rows.is_empty());
    for (rec, row) in records.iter().zip(rows) {
        let flat = flatten(row);
        assert_eq!(flat.len(), header.len());
        for (key, num, txt) in &flat {
            let col = header.iter().position(|h| h == key).unwrap_or_else(|| panic!("no column {key}"));
            let cell = &rec[col];
            match (num, txt) {
                (Some(x), _) => assert_eq!(cell.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{key}"),
                (None, Some(t)) => assert_eq!(cell, t),
                (None, None) => assert_eq!(cell, ""),
            }
        }
    }
}

#[test]
fn csv_and_json_encode_identical_values() {
    assert_csv_matches_json(&["table", "--n", "-1", "--sweep-x", "2.1:4.0:20"]);
    assert_csv_matches_json(&["surgery", "--n", "-1", "--p", "1", "--q", "1"]);
    assert_csv_matches_json(&["torsion", "--n", "3", "--s", "0.9,0.7", "--verify"]);
    assert_csv_matches_json(&["riley-roots", "--n", "-4", "--s", "1.1,-0.4"]);
    assert_csv_matches_json(&["verify", "--trials", "4"]);
}

#[test]
fn text_output_is_default() {
    let r = run(&["riley-roots", "--n", "1", "--s", "2,0"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("# riley-roots"));
    assert!(r.stdout.contains("u=3.25"));
}
