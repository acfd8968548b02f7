//! Serializable report records and the text, JSON and CSV writers.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use summa_core::expansions::AsymptoticExpansion;
use summa_core::summation::SummationReport;
use summa_core::Complex64;

/// Version of the JSON layout below.
pub const SCHEMA: u32 = 1;

/// Complex numbers serialize as `[re, im]`.
pub type Pair = [f64; 2];

pub fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

/// Effective configuration, echoed in every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub command: String,
    pub formula: Option<String>,
    pub function: String,
    pub y: Option<f64>,
    pub t: Option<f64>,
    pub theta: Option<String>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    #[serde(rename = "K")]
    pub k: Option<usize>,
    pub n_max: usize,
    pub tol: f64,
    pub output: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub formula: String,
    pub y: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub lhs_tail_bound: f64,
    pub rhs_tail_bound: f64,
    pub terms_used: usize,
    pub passed: bool,
}

impl VerifyRecord {
    pub fn new(r: &SummationReport, tol: f64) -> Self {
        Self {
            formula: r.formula.name().to_string(),
            y: r.y,
            lhs: r.lhs,
            rhs: r.rhs,
            residual: r.residual,
            lhs_tail_bound: r.lhs_tail_bound,
            rhs_tail_bound: r.rhs_tail_bound,
            terms_used: r.terms_used,
            passed: r.passes(tol),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    /// Exponent of `t`, or `log` for the logarithmic term.
    pub power: String,
    pub coefficient: Pair,
    pub value: Pair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionRecord {
    pub kind: String,
    pub t: f64,
    pub terms: Vec<TermRecord>,
    pub remainder_abscissa: f64,
    pub remainder: Option<Pair>,
    pub remainder_error: f64,
    pub total: Pair,
}

impl ExpansionRecord {
    pub fn new(e: &AsymptoticExpansion) -> Self {
        Self {
            kind: e.kind.name().to_string(),
            t: e.t,
            terms: e
                .terms
                .iter()
                .map(|t| TermRecord {
                    power: t.power.to_string(),
                    coefficient: pair(t.coefficient),
                    value: pair(t.value),
                })
                .collect(),
            remainder_abscissa: e.remainder_abscissa,
            remainder: e.remainder_value.map(pair),
            remainder_error: e.remainder_error,
            total: pair(e.total()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub theta: f64,
    /// Partial sum of the zero side over the first `N` zeros.
    pub zero_side: Pair,
    /// Series side with `K` terms; absent where the identity does not hold.
    pub series_side: Option<Pair>,
    pub residual: Option<f64>,
    pub divergent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub file: String,
    pub records: usize,
    pub max_error: f64,
    pub failures: Vec<String>,
}

/// Top-level JSON document; exactly one payload field is present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema: u32,
    pub config: ConfigEcho,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<VerifyRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expansion: Option<ExpansionRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scan: Option<Vec<ScanRow>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fixtures: Option<Vec<FixtureFile>>,
    pub passed: bool,
}

impl Document {
    pub fn new(config: ConfigEcho, passed: bool) -> Self {
        Self {
            schema: SCHEMA,
            config,
            report: None,
            expansion: None,
            scan: None,
            fixtures: None,
            passed,
        }
    }
}

/// Shortest round-trip scientific form, independent of locale.
pub fn num(x: f64) -> String {
    format!("{x:e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn verify_text(r: &VerifyRecord, tol: f64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "formula         {}", r.formula);
    let _ = writeln!(s, "y               {}", r.y);
    let _ = writeln!(s, "lhs             {:.17e}", r.lhs);
    let _ = writeln!(s, "rhs             {:.17e}", r.rhs);
    let _ = writeln!(s, "residual        {:.3e}", r.residual);
    let _ = writeln!(s, "lhs tail bound  {:.3e}", r.lhs_tail_bound);
    let _ = writeln!(s, "rhs tail bound  {:.3e}", r.rhs_tail_bound);
    let _ = writeln!(s, "terms used      {}", r.terms_used);
    let verdict = if r.passed { "PASS" } else { "FAIL" };
    let _ = writeln!(s, "{verdict} (residual <= {tol:e} + tail bounds)");
    s
}

pub fn verify_csv(r: &VerifyRecord) -> String {
    format!(
        "formula,y,lhs,rhs,residual,lhs_tail_bound,rhs_tail_bound,terms_used,passed\n{},{},{},{},{},{},{},{},{}\n",
        r.formula,
        num(r.y),
        num(r.lhs),
        num(r.rhs),
        num(r.residual),
        num(r.lhs_tail_bound),
        num(r.rhs_tail_bound),
        r.terms_used,
        r.passed
    )
}

pub fn expansion_text(e: &ExpansionRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} at t = {}", e.kind, e.t);
    let _ = writeln!(s, "{:>8}  {:>24}  {:>24}", "power", "coefficient", "value");
    for t in &e.terms {
        let _ = writeln!(
            s,
            "{:>8}  {:>24.16e}  {:>24.16e}",
            t.power, t.coefficient[0], t.value[0]
        );
    }
    match e.remainder {
        Some(r) => {
            let _ = writeln!(
                s,
                "remainder on Re(s) = {}: {:.16e} {:+.3e}i (error {:.1e})",
                e.remainder_abscissa, r[0], r[1], e.remainder_error
            );
        }
        None => {
            let _ = writeln!(s, "remainder not evaluated");
        }
    }
    let _ = writeln!(s, "total {:.16e} {:+.3e}i", e.total[0], e.total[1]);
    s
}

pub fn expansion_csv(e: &ExpansionRecord) -> String {
    let mut s = String::from("row,power,coefficient_re,coefficient_im,value_re,value_im\n");
    for t in &e.terms {
        let _ = writeln!(
            s,
            "term,{},{},{},{},{}",
            t.power,
            num(t.coefficient[0]),
            num(t.coefficient[1]),
            num(t.value[0]),
            num(t.value[1])
        );
    }
    if let Some(r) = e.remainder {
        let _ = writeln!(s, "remainder,,,,{},{}", num(r[0]), num(r[1]));
    }
    let _ = writeln!(s, "total,,,,{},{}", num(e.total[0]), num(e.total[1]));
    s
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut s = String::from("theta,zero_side_re,zero_side_im,series_side_re,series_side_im,residual,divergent\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.theta,
            num(r.zero_side[0]),
            num(r.zero_side[1]),
            opt(r.series_side.map(|p| p[0])),
            opt(r.series_side.map(|p| p[1])),
            opt(r.residual),
            r.divergent
        );
    }
    s
}

pub fn scan_text(rows: &[ScanRow]) -> String {
    let mut s = format!(
        "{:>8}  {:>24}  {:>24}  {:>10}  divergent\n",
        "theta", "zero side", "series side", "residual"
    );
    for r in rows {
        let series = r
            .series_side
            .map(|p| format!("{:.16e}", p[0]))
            .unwrap_or_else(|| "-".into());
        let res = r.residual.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "{:>8}  {:>24.16e}  {:>24}  {:>10}  {}",
            r.theta, r.zero_side[0], series, res, r.divergent
        );
    }
    s
}

pub fn fixtures_text(files: &[FixtureFile]) -> String {
    let mut s = String::new();
    for f in files {
        let verdict = if f.failures.is_empty() { "ok" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{:<14} {:>5} records  max error {:.1e}  {verdict}",
            f.file, f.records, f.max_error
        );
        for m in &f.failures {
            let _ = writeln!(s, "  {m}");
        }
    }
    s
}

pub fn fixtures_csv(files: &[FixtureFile]) -> String {
    let mut s = String::from("file,records,max_error,failures\n");
    for f in files {
        let _ = writeln!(s, "{},{},{},{}", f.file, f.records, num(f.max_error), f.failures.len());
    }
    s
}
