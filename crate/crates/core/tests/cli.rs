use std::f64::consts::PI;
use std::process::{Command, Output};

use umbral_lab::cli::{RowStatus, TableRow};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umbral-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn eval_value(o: &Output) -> f64 {
    let s = stdout(o);
    s.lines()
        .find_map(|l| l.strip_prefix("value="))
        .unwrap()
        .parse()
        .unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|x| x.unwrap().iter().map(str::to_string).collect())
        .collect();
    (header, rows)
}

#[test]
fn eval_examples() {
    let o = run(&["eval", "--fn", "wright", "--args", "alpha=0,beta=1,x=1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!((eval_value(&o) - std::f64::consts::E).abs() < 1e-14);
    assert!(stdout(&o).contains("terms_used="));
    assert!(stdout(&o).contains("truncation_flag=false"));
    assert_eq!(
        eval_value(&run(&["eval", "--fn", "hermite2", "--args", "n=2,x=3,y=1"])),
        11.0
    );
    assert_eq!(
        eval_value(&run(&["eval", "--fn", "bessel_j", "--args", "nu=1,x=0"])),
        0.0
    );
    let o = run(&[
        "eval",
        "--fn",
        "struve_h",
        "--args",
        "nu=0.5,x=3.141592653589793",
        "--format",
        "json",
    ]);
    let r: umbral_lab::functions::FnEvalResult = serde_json::from_slice(&o.stdout).unwrap();
    assert!((r.value - 2.0 * 2f64.sqrt() / PI).abs() < 1e-14);
}

#[test]
fn eval_errors() {
    for args in [
        &["eval", "--fn", "gamma", "--args", "x=-2"][..],
        &["eval", "--fn", "bessel_j", "--args", "nu=0.5,x=-1"],
        &["eval", "--fn", "no_such_fn"],
        &["eval", "--fn", "gamma", "--args", "x=abc"],
        &["eval", "--fn", "gamma"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty());
        assert!(stdout(&o).is_empty());
    }
}

#[test]
fn verify_examples() {
    let o = run(&[
        "verify",
        "--identity",
        "sph-bessel-integral",
        "--params",
        "n=0",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: umbral_lab::identities::IdentityReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.closed_value, PI);
    assert!(r.abs_err.unwrap() < 1e-6);

    let o = run(&["verify", "--identity", "struve-mellin", "--params", "mu=-1,nu=0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict:      pass"));

    let o = run(&["verify", "--identity", "struve-mellin", "--params", "mu=1,nu=1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("mu+nu is an even integer"));
}

#[test]
fn verify_numeric_failure_exits_1() {
    // a tolerance far below what the oscillatory oracle delivers
    let o = run(&[
        "verify",
        "--identity",
        "bessel-j0-integral",
        "--params",
        "alpha=2",
        "--tol-abs",
        "1e-300",
        "--tol-rel",
        "1e-300",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict:      fail"));
}

#[test]
fn table_sph_bessel() {
    let o = run(&["table", "--identity", "sph-bessel-integral", "--range", "n=0..6"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(
        header,
        [
            "n",
            "closed_value",
            "oracle_value",
            "abs_err",
            "rel_err",
            "status",
            "evaluations"
        ]
    );
    assert_eq!(rows.len(), 7);
    for (i, row) in rows.iter().enumerate() {
        let closed: f64 = row[1].parse().unwrap();
        if i % 2 == 1 {
            assert_eq!(closed, 0.0);
        }
        assert_eq!(row[5], "pass");
    }
    // 17 significant digits round-trip the closed value exactly
    assert_eq!(rows[0][1].parse::<f64>().unwrap(), PI);
    assert_eq!(rows[0][1], "3.1415926535897931e0");
}

#[test]
fn table_bessel_j0_json() {
    let o = run(&[
        "table",
        "--identity",
        "bessel-j0-integral",
        "--list",
        "alpha=0.5,1,2,4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<TableRow> = serde_json::from_slice(&o.stdout).unwrap();
    let closed: Vec<f64> = rows.iter().map(|r| r.closed_value.unwrap()).collect();
    let want = [2.0 * 2f64.sqrt(), 2.0, 2f64.sqrt(), 1.0];
    for (c, w) in closed.iter().zip(want) {
        assert!((c - w).abs() < 1e-15);
    }
    let again = serde_json::to_vec_pretty(&rows).unwrap();
    assert_eq!(serde_json::from_slice::<Vec<TableRow>>(&again).unwrap(), rows);
    // field names match the CSV columns
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut keys: Vec<&str> = v[0].as_object().unwrap().keys().map(String::as_str).collect();
    let mut want = [
        "alpha",
        "closed_value",
        "oracle_value",
        "abs_err",
        "rel_err",
        "status",
        "evaluations",
    ];
    keys.sort_unstable();
    want.sort_unstable();
    assert_eq!(keys, want);
}

#[test]
fn table_gaussian_moment_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    let p = path.to_str().unwrap();
    let args = [
        "table",
        "--identity",
        "gaussian-moment",
        "--range",
        "n=0..4",
        "--fixed",
        "a=1,b=1,alpha=2",
        "--tol-abs",
        "1e-8",
        "--tol-rel",
        "1e-8",
        "--out",
        p,
    ];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let first = std::fs::read_to_string(&path).unwrap();
    let (header, rows) = csv_rows(&first);
    assert_eq!(&header[..4], ["n", "a", "b", "alpha"]);
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[8] == "pass"));
    // rows are computed concurrently but the file is identical run to run
    assert_eq!(run(&args).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
}

#[test]
fn table_skips_excluded_points() {
    let o = run(&[
        "table",
        "--identity",
        "struve-mellin",
        "--range",
        "mu=-2..-1:0.5",
        "--fixed",
        "nu=0",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<TableRow> = serde_json::from_slice(&o.stdout).unwrap();
    let status: Vec<RowStatus> = rows.iter().map(|r| r.status).collect();
    assert_eq!(status, [RowStatus::Skipped, RowStatus::Pass, RowStatus::Pass]);
    assert!(rows[0].closed_value.is_none());
    assert!(stderr(&o).contains("mu+nu is an even integer"));
}

#[test]
fn table_unverified_and_failed_rows() {
    let o = run(&[
        "table",
        "--identity",
        "wright-gaussian",
        "--list",
        "alpha=0.5,0.8",
        "--fixed",
        "beta=1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows[0][6], "pass");
    assert_eq!(rows[1][6], "unverified");
    assert_eq!(rows[1][3], "");

    let o = run(&[
        "table",
        "--identity",
        "bessel-j0-integral",
        "--list",
        "alpha=1",
        "--tol-abs",
        "1e-300",
        "--tol-rel",
        "1e-300",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn table_spec_errors() {
    for args in [
        &["table", "--identity", "nope", "--list", "n=1"][..],
        &["table", "--identity", "sph-bessel-integral", "--range", "n=0..4:0"],
        &["table", "--identity", "sph-bessel-integral", "--range", "n=4..0:1"],
        &["table", "--identity", "sph-bessel-integral", "--range", "n=0..2:0.5"],
        &[
            "table",
            "--identity",
            "sph-bessel-integral",
            "--range",
            "n=0..2",
            "--fixed",
            "n=1",
        ],
        &["table", "--identity", "gaussian-moment", "--range", "n=0..2"],
        &[
            "table",
            "--identity",
            "sph-bessel-integral",
            "--range",
            "n=0..2",
            "--format",
            "text",
        ],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}
