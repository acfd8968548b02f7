use std::path::PathBuf;
use std::process::{Command, Output};

#[allow(dead_code)]
#[path = "../src/report.rs"]
mod report;

use report::Document;

fn summa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_summa"))
        .args(args)
        .env_remove("SUMMA_FIXTURES")
        .output()
        .expect("runs summa")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn poisson_passes() {
    let o = summa(&[
        "verify",
        "--formula",
        "poisson",
        "--function",
        "gaussian",
        "--y",
        "1",
        "--tol",
        "1e-10",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn naive_mobius_fails_tolerance() {
    let o = summa(&[
        "verify",
        "--formula",
        "mobius-naive",
        "--function",
        "gaussian",
        "--y",
        "1",
        "--tol",
        "1e-10",
    ]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
}

#[test]
fn configuration_errors() {
    for args in [
        &["verify", "--formula", "nope"][..],
        &["verify"],
        &["verify", "--formula", "poisson", "--function", "cauchy"],
        &["verify", "--formula", "poisson", "--tol", "-1"],
        &["verify", "--formula", "poisson", "--y", "0"],
        &["expand", "--formula", "fourier"],
        &["scan", "--theta", "0:1:0"],
        &["scan", "--theta", "1:0:5"],
        &["scan", "--theta", ","],
        &["verify", "--formula", "poisson", "--output", "xml"],
    ] {
        assert_eq!(code(&summa(args)), 2, "{args:?}");
    }
}

#[test]
fn json_report_echoes_config() {
    let o = summa(&["verify", "--formula", "circle-j0", "--y", "1.4", "--output", "json"]);
    assert_eq!(code(&o), 0);
    let d: Document = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(d.schema, 1);
    assert_eq!(d.config.command, "verify");
    assert_eq!(d.config.formula.as_deref(), Some("circle-j0"));
    assert_eq!(d.config.y, Some(1.4));
    assert_eq!(d.config.n_max, 400);
    let r = d.report.unwrap();
    assert!(r.passed && r.residual < 1e-10);
}

#[test]
fn euler_maclaurin_table() {
    let o = summa(&[
        "expand",
        "--formula",
        "euler-maclaurin",
        "--function",
        "gaussian",
        "--t",
        "-1",
        "--N",
        "3",
        "--output",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let powers: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("term,"))
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(powers, ["-1", "0", "1", "2", "3", "4", "5"]);
    assert!(text.lines().any(|l| l.starts_with("remainder,")));
}

#[test]
fn expansion_json_round_trips() {
    let o = summa(&[
        "expand",
        "--formula",
        "euler-voronoi",
        "--t",
        "-0.7",
        "--output",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let d: Document = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&d).unwrap() + "\n";
    assert_eq!(again, text);
    let e = d.expansion.unwrap();
    assert_eq!(e.kind, "euler-voronoi");
    assert_eq!(e.terms[0].power, "log");
}

#[test]
fn taylor_at_origin_is_one_row() {
    let o = summa(&["expand", "--formula", "taylor", "--t", "0", "--output", "json"]);
    let e = serde_json::from_str::<Document>(&stdout(&o))
        .unwrap()
        .expansion
        .unwrap();
    assert_eq!(e.terms.len(), 1);
    assert_eq!(e.remainder, Some([0.0, 0.0]));
}

fn scan_flags(theta: &str) -> Vec<(f64, bool)> {
    let o = summa(&["scan", "--theta", theta]);
    assert_eq!(code(&o), 0);
    stdout(&o)
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (c[0].parse().unwrap(), c[6] == "true")
        })
        .collect()
}

#[test]
fn scan_flags_convergence_and_divergence() {
    let inside = scan_flags("0:0.7:8");
    assert_eq!(inside.len(), 8);
    assert!(inside.iter().all(|&(_, d)| !d), "{inside:?}");
    let outside = scan_flags("0.9:1.2:4");
    assert!(outside.iter().all(|&(_, d)| d), "{outside:?}");
    assert_eq!(scan_flags("0.5")[0].0, 0.5);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "--formula",
        "voronoi-bessel",
        "--y",
        "0.7",
        "--n-max",
        "50",
        "--output",
        "json",
    ];
    assert_eq!(stdout(&summa(&args)), stdout(&summa(&args)));
    let args = ["scan", "--theta", "0:1:5", "--output", "json"];
    assert_eq!(stdout(&summa(&args)), stdout(&summa(&args)));
}

#[test]
fn fixtures_check_and_override() {
    let o = summa(&["fixtures-check"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let shipped = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    let ok = Command::new(env!("CARGO_BIN_EXE_summa"))
        .arg("fixtures-check")
        .env("SUMMA_FIXTURES", &shipped)
        .output()
        .unwrap();
    assert_eq!(code(&ok), 0);
    let missing = Command::new(env!("CARGO_BIN_EXE_summa"))
        .arg("fixtures-check")
        .env("SUMMA_FIXTURES", shipped.join("does-not-exist"))
        .output()
        .unwrap();
    assert_eq!(code(&missing), 2);
}
