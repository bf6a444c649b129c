use std::path::PathBuf;
use std::process::Command;

use covercalc_cli::{run_with_env, Output, RunResult, EXIT_OBSTRUCTED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> RunResult {
    let argv = std::iter::once("covercalc").chain(args.iter().copied());
    run_with_env(argv, None)
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let r = run(&a);
    assert_eq!(r.code, EXIT_OK, "{args:?}: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const SMALL_TABLE: &str = r#"[
  {"name": "3_1", "alexander": [1, -1, 1], "genus": 1, "arc_index": 5, "fibered": true},
  {"name": "mine", "alexander": [-3, 7, -3], "fibered": false}
]"#;

#[test]
fn cover_example() {
    let r = run(&["cover", "3_1", "--n", "2..6"]);
    assert_eq!(r.code, EXIT_OK);
    let orders: Vec<&str> = r
        .stdout
        .lines()
        .skip(2)
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(orders, ["3", "4", "3", "1", "∞"]);

    let v = json(&["cover", "3_1", "--n", "2..6"]);
    let rows = v["rows"].as_array().unwrap();
    let orders: Vec<u64> = rows.iter().map(|r| r["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, [3, 4, 3, 1, 0]);
    let inf: Vec<bool> = rows.iter().map(|r| r["infinite"].as_bool().unwrap()).collect();
    assert_eq!(inf, [false, false, false, false, true]);
}

#[test]
fn cover_single_degree_and_sphere_columns() {
    let v = json(&["cover", "4_1", "--n", "3", "--p", "2", "--p", "5"]);
    assert_eq!(v["rows"][0]["order"].as_u64(), Some(16));
    let flags: Vec<bool> = v["rows"][0]["zp_sphere"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["sphere"].as_bool().unwrap())
        .collect();
    assert_eq!(flags, [false, true]);
}

#[test]
fn big_orders_are_json_numbers() {
    let v = json(&["cover", "6_1", "--n", "60"]);
    let order = &v["rows"][0]["order"];
    assert!(order.is_number());
    assert!(order.to_string().len() > 30, "{order}");
}

#[test]
fn skp_example() {
    let r = run(&["skp", "3_1", "-p", "2"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.starts_with("S_{3_1,2} = {3}\n"), "{}", r.stdout);
    let v = json(&["skp", "3_1", "--p", "2"]);
    assert_eq!(v["set"], serde_json::json!([3]));
}

#[test]
fn obstruct_example() {
    let r = run(&["obstruct", "4_1", "3_1"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.lines().any(|l| l.starts_with("FAIL") && l.contains("alex_div")));
    assert!(r.stdout.contains("overall: FAIL (obstructed)"));
}

#[test]
fn filter_example() {
    let v = json(&["filter", "granny"]);
    assert_eq!(v["predecessors"], serde_json::json!(["unknot", "3_1", "granny"]));
}

#[test]
fn bounds_with_samples() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "s.json", r#"[{"n":2,"count":9},{"n":3,"count":27}]"#);
    let v = json(&["bounds", "4_1", "--samples", s.to_str().unwrap()]);
    assert_eq!(v["dilatation"]["upper"].as_f64(), Some(3.0));
    let vol = v["dilatation"]["volume"].as_f64().unwrap();
    assert!((vol - 3.0 * std::f64::consts::PI * 3f64.ln()).abs() < 1e-12);
    let g = v["gromov"].as_f64().unwrap();
    assert!((g - 3.0 * std::f64::consts::PI / 1.014941606 * 720f64.ln()).abs() < 1e-9);
    assert_eq!(v["hfk"]["loose"].as_u64(), Some(720));
}

#[test]
fn exit_code_matrix() {
    let dir = TempDir::new().unwrap();
    let bad_json = write(&dir, "bad.json", "[{");
    let bad_entry = write(
        &dir,
        "entry.json",
        r#"[{"name": "x", "alexander": [1, 1, 1], "fibered": false}]"#,
    );
    let bad_samples = write(&dir, "s.json", r#"[{"n":3,"count":9},{"n":2,"count":4}]"#);
    let table = write(&dir, "t.json", SMALL_TABLE);
    let cases: &[(&[&str], i32)] = &[
        (&["cover", "3_1", "--n", "1..4"], EXIT_OK),
        (&["obstruct", "4_1", "3_1"], EXIT_OK),
        (&["obstruct", "4_1", "3_1", "--strict"], EXIT_OBSTRUCTED),
        (&["obstruct", "3_1", "granny", "--strict"], EXIT_OK),
        (&["table", "check", "--table", table.to_str().unwrap()], EXIT_OK),
        (&["--help"], EXIT_OK),
        (&[], EXIT_USAGE),
        (&["frobnicate"], EXIT_USAGE),
        (&["cover", "nosuchknot", "--n", "2"], EXIT_USAGE),
        (&["cover", "3_1", "--n", "5..2"], EXIT_USAGE),
        (&["cover", "3_1", "--n", "0..2"], EXIT_USAGE),
        (&["cover", "3_1", "--n", "x"], EXIT_USAGE),
        (&["cover", "3_1"], EXIT_USAGE),
        (&["skp", "3_1", "-p", "4"], EXIT_USAGE),
        (&["obstruct", "4_1", "3_1", "--max-n", "0"], EXIT_USAGE),
        (&["obstruct", "4_1", "3_1", "--p", "9"], EXIT_USAGE),
        (&["table", "list", "--table", bad_json.to_str().unwrap()], EXIT_USAGE),
        (&["table", "check", "--table", bad_entry.to_str().unwrap()], EXIT_USAGE),
        (&["table", "list", "--table", "/nonexistent/table.json"], EXIT_USAGE),
        (&["bounds", "mine", "--table", table.to_str().unwrap()], EXIT_USAGE),
        (&["bounds", "4_1", "--delta", "1"], EXIT_USAGE),
        (&["bounds", "4_1", "--samples", bad_samples.to_str().unwrap()], EXIT_USAGE),
        (&["render", bad_json.to_str().unwrap()], EXIT_USAGE),
    ];
    for (args, code) in cases {
        let r = run(args);
        assert_eq!(r.code, *code, "{args:?}\nstdout: {}\nstderr: {}", r.stdout, r.stderr);
        if *code == EXIT_USAGE {
            assert!(r.stdout.is_empty() && !r.stderr.is_empty(), "{args:?}");
        }
    }
}

#[test]
fn render_round_trip_for_every_command() {
    let dir = TempDir::new().unwrap();
    let samples = write(&dir, "s.json", r#"[{"n":2,"count":7},{"n":5,"count":0}]"#);
    let samples = samples.to_str().unwrap();
    let commands: &[&[&str]] = &[
        &["table", "list"],
        &["table", "check"],
        &["cover", "3_1", "--n", "1..8", "--p", "2", "--p", "7"],
        &["cover", "6_1", "--n", "55..58"],
        &["skp", "6_3", "-p", "5"],
        &["skp", "unknot", "-p", "2"],
        &["obstruct", "4_1", "3_1"],
        &["obstruct", "3_1", "3_1#6_1", "--p", "2", "--p", "7", "--max-n", "12"],
        &["filter", "3_1#6_1"],
        &["bounds", "4_1"],
        &["bounds", "5_1", "--delta", "30", "--genus", "7", "--samples", samples],
    ];
    for args in commands {
        let text = run(args);
        assert_eq!(text.code, EXIT_OK, "{args:?}: {}", text.stderr);
        let mut with_json = args.to_vec();
        with_json.push("--json");
        let js = run(&with_json);
        assert_eq!(js.code, EXIT_OK);

        let parsed = Output::from_json(&js.stdout).unwrap();
        assert_eq!(parsed.render_text(), text.stdout, "{args:?}");
        let f = write(&dir, "out.json", &js.stdout);
        let rendered = run(&["render", f.to_str().unwrap()]);
        assert_eq!(rendered.code, EXIT_OK);
        assert_eq!(rendered.stdout, text.stdout, "{args:?}");
        // JSON -> value -> JSON is stable too.
        let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
        assert_eq!(again, js.stdout, "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["filter", "3_1#6_1", "--json"]);
    let b = run(&["filter", "3_1#6_1", "--json"]);
    assert_eq!(a, b);
}

#[test]
fn table_precedence() {
    let dir = TempDir::new().unwrap();
    let table = write(&dir, "t.json", SMALL_TABLE);
    let argv = |extra: &[&str]| {
        let mut v = vec!["covercalc", "table", "list", "--json"];
        v.extend_from_slice(extra);
        v.into_iter().map(String::from).collect::<Vec<_>>()
    };
    let count = |r: RunResult| {
        assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        v["knots"].as_array().unwrap().len()
    };
    assert_eq!(count(run_with_env(argv(&[]), None)), 10);
    assert_eq!(count(run_with_env(argv(&[]), Some(table.clone()))), 2);
    let missing = PathBuf::from("/nonexistent.json");
    assert_eq!(count(run_with_env(argv(&["--table", table.to_str().unwrap()]), Some(missing))), 2);
}

#[test]
fn binary_reads_env_and_sets_exit_status() {
    let dir = TempDir::new().unwrap();
    let table = write(&dir, "t.json", SMALL_TABLE);
    let bin = env!("CARGO_BIN_EXE_covercalc");

    let out = Command::new(bin)
        .args(["skp", "mine", "-p", "2"])
        .env("COVERCALC_TABLE", &table)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("S_{mine,2}"));

    let out = Command::new(bin)
        .args(["obstruct", "4_1", "3_1", "--strict"])
        .env_remove("COVERCALC_TABLE")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OBSTRUCTED));

    let out = Command::new(bin)
        .args(["cover", "nosuch", "--n", "2"])
        .env_remove("COVERCALC_TABLE")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(!out.stderr.is_empty());
}
