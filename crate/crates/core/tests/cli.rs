//! The `fcat` binary end to end.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fcat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fcat-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Data rows of a CSV, split into fields.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn separation_of_identity() {
    let o = fcat(&["separation", "--spec", "identity", "--zeta", "1.41421356"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2.82842712\n");
}

#[test]
fn visibility_of_identity() {
    let o = fcat(&["visibility", "--spec", "identity", "--alpha2", "2", "--gamma-t", "1", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - (-4.0 * (1.0 - (-1f64).exp())).exp()).abs() < 1e-11);
    assert!(stdout(&o).starts_with("0.0797"));
}

#[test]
fn domain_errors_exit_3() {
    let o = fcat(&["visibility", "--spec", "laguerre", "--xi", "1.0", "--zeta2", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: SingularDeformation:"));
    let o = fcat(&["visibility", "--spec", "laguerre", "--xi", "2.0", "--zeta2", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["fig1", "--dim", "0"][..],
        &["fig3", "--step", "0"],
        &["fig2", "--gamma-t-max", "inf"],
        &["separation", "--spec", "q"],
        &["calibrate", "--zeta2", "-1"],
        &["fig9"],
    ] {
        assert_eq!(fcat(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn fig1_default_file() {
    let path = scratch("fig1.csv");
    let o = fcat(&["fig1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let csv = fs::read_to_string(&path).unwrap();
    assert!(!csv.contains('\r'));
    assert!(csv.contains("# dim=128\n") && csv.contains("# floor=1e-12\n"));
    let max = |series: &str| {
        rows(&csv)
            .iter()
            .filter(|r| r[0] == series && !r[2].is_empty())
            .map(|r| r[2].parse::<f64>().unwrap())
            .fold(f64::NEG_INFINITY, f64::max)
    };
    assert!(max("xi") > 2.8284);
    // q = 1 on the grid is the undeformed point, equal to 2 sqrt 2 to 12 digits
    assert!(max("q") <= 2.82842712475);
    assert!(rows(&csv).iter().filter(|r| r[0] == "q" && r[1] != "1").all(|r| r[2].parse::<f64>().unwrap() < 2.8284));
    // gaps are empty fields tagged with the error
    assert!(rows(&csv).iter().any(|r| r[2].is_empty() && !r[3].is_empty()));
}

#[test]
fn fig1_vacuum_is_zero() {
    let o = fcat(&["fig1", "--zeta2", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(rows(&stdout(&o)).iter().all(|r| r[2] == "0"));
}

#[test]
fn fig1_first_branch_has_no_gaps() {
    let o = fcat(&["fig1", "--xi-max", "0.3", "--zeta2", "2"]);
    let xi: Vec<_> = rows(&stdout(&o)).into_iter().filter(|r| r[0] == "xi").collect();
    assert_eq!(xi.len(), 61);
    assert!(xi.iter().all(|r| r[2].parse::<f64>().unwrap().is_finite() && r[3].is_empty()));
}

#[test]
fn fig2_oracle_columns_agree() {
    let o = fcat(&["fig2", "--oracle", "--dim", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert!(csv.contains("gamma_t,undeformed,deformed_n1,deformed_n2,deformed_n3,numeric_n1,numeric_n2,numeric_n3,error\n"));
    let rows = rows(&csv);
    assert_eq!(rows[0][..8].iter().map(String::as_str).collect::<Vec<_>>(), ["0", "1", "1", "1", "1", "1", "1", "1"]);
    for r in &rows {
        for k in 2..5 {
            let (a, b): (f64, f64) = (r[k].parse().unwrap(), r[k + 3].parse().unwrap());
            assert!((a - b).abs() < 1e-6);
        }
    }
}

#[test]
fn fig3_has_status_and_reference() {
    let o = fcat(&["fig3", "--zeta2-min", "1", "--zeta2-max", "1.2", "--step", "0.1"]);
    let csv = stdout(&o);
    let rows = rows(&csv);
    assert_eq!(rows.len(), 3);
    for r in &rows {
        assert_eq!(r.last().unwrap(), "ok");
        assert_eq!(r[3], "0.0797800157319");
    }
}

#[test]
fn csv_is_byte_identical() {
    let (a, b) = (scratch("a.csv"), scratch("b.csv"));
    for p in [&a, &b] {
        let o = fcat(&["fig3", "--zeta2-max", "0.6", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}
