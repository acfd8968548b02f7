#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! `summa`: verify summation formulae, print expansions, scan the theta identity.
//!
//! Exit codes: 0 pass, 1 tolerance failure, 2 configuration or evaluation error.

mod report;

use std::f64::consts::FRAC_PI_4;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use summa_core::arithmetic::default_tables;
use summa_core::expansions::{euler_circle, euler_maclaurin, euler_voronoi, taylor_maclaurin};
use summa_core::fixtures::{self, Record};
use summa_core::fractional::{by_name, gaussian, gaussian_frac_closed, TestFunction};
use summa_core::rh::{default_zeros, is_divergent, t_rho, theta_identity_sides, zero_side_partials, DEFAULT_STRIDE};
use summa_core::special::{
    bessel_j0, bessel_k0, bessel_y0, dirichlet_l4, gamma, xi, zeta, EvalOptions, LANCZOS_COEFFS,
};
use summa_core::summation::{verify, weighted_sum, Formula, VerifyOptions, Weights, DEFAULT_N_MAX, DEFAULT_TAIL_TOL};
use summa_core::{Complex64, Error};

use report::{ConfigEcho, Document, ExpansionRecord, FixtureFile, ScanRow, VerifyRecord};

#[derive(Parser, Debug)]
#[command(
    name = "summa",
    version,
    about = "Both sides of summation formulae from one contour integral"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate both sides of a summation formula; exit 1 if residual > tol + tail bounds.
    Verify(Opts),
    /// Print the regular part and remainder of an expansion in t.
    Expand(Opts),
    /// Sweep theta over a grid for the identity over zeta zeros; CSV by default.
    Scan(Opts),
    /// Recompute the shipped fixture values and report the largest deviations.
    FixturesCheck(Opts),
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Formula name (verify: poisson, voronoi-cosine, ...; expand: taylor, euler-maclaurin, ...).
    #[arg(long)]
    formula: Option<String>,
    /// Test function: gaussian, sech2, super-gaussian.
    #[arg(long, default_value = "gaussian")]
    function: String,
    /// Scale y > 0 for verify.
    #[arg(long, default_value_t = 1.0)]
    y: f64,
    /// Expansion variable t <= 0.
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    t: f64,
    /// Theta grid for scan: START:STOP:COUNT, a comma list, or one value.
    #[arg(long, default_value = "0:1.2:13", allow_negative_numbers = true)]
    theta: String,
    /// Expansion order; zero-avoiding height index for mobius-poisson; zeros used by zero-sum and scan.
    #[arg(long = "N")]
    n: Option<usize>,
    /// Series terms of the theta identity.
    #[arg(long = "K", default_value_t = 25)]
    k: usize,
    /// Cut of the right-hand side series in n.
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    n_max: usize,
    /// Tolerance on the residual.
    #[arg(long)]
    tol: Option<f64>,
    /// Output format; scan defaults to csv, everything else to text.
    #[arg(long, value_enum)]
    output: Option<Output>,
    /// Seed of the randomized checks in fixtures-check.
    #[arg(long, default_value_t = 20160410)]
    seed: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Output {
    Text,
    Json,
    Csv,
}

impl Output {
    fn name(self) -> &'static str {
        match self {
            Output::Text => "text",
            Output::Json => "json",
            Output::Csv => "csv",
        }
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

/// Failure that maps to exit code 2.
#[derive(Debug)]
struct ConfigError(String);

impl From<Error> for ConfigError {
    fn from(e: Error) -> Self {
        ConfigError(e.to_string())
    }
}

type Run = Result<(String, bool), ConfigError>;

fn config_error<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

const DEFAULT_VERIFY_TOL: f64 = 1e-8;
const DEFAULT_SCAN_TOL: f64 = 1e-3;
const DEFAULT_SCAN_ZEROS: usize = 100;
const DEFAULT_ORDER: usize = 2;
const FIXTURE_ZERO_COUNT: usize = 150;

fn test_function(name: &str) -> Result<TestFunction, ConfigError> {
    by_name(name).map_or_else(
        || {
            config_error(format!(
                "unknown test function '{name}' (gaussian, sech2, super-gaussian)"
            ))
        },
        Ok,
    )
}

fn echo(command: &str, o: &Opts, output: Output, tol: f64) -> ConfigEcho {
    let used = |yes: bool| yes.then_some(());
    ConfigEcho {
        command: command.to_string(),
        formula: o.formula.clone(),
        function: o.function.clone(),
        y: used(command == "verify").map(|_| o.y),
        t: used(command == "expand").map(|_| o.t),
        theta: used(command == "scan").map(|_| o.theta.clone()),
        n: o.n,
        k: used(command == "scan").map(|_| o.k),
        n_max: o.n_max,
        tol,
        output: output.name().to_string(),
        seed: o.seed,
    }
}

fn json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}

fn check_tol(tol: f64) -> Result<f64, ConfigError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        config_error(format!("tol must be positive, got {tol}"))
    }
}

fn cmd_verify(o: &Opts) -> Run {
    let output = o.output.unwrap_or(Output::Text);
    let tol = check_tol(o.tol.unwrap_or(DEFAULT_VERIFY_TOL))?;
    let Some(name) = &o.formula else {
        return config_error("verify needs --formula");
    };
    let formula: Formula = name.parse()?;
    let f = test_function(&o.function)?;
    let mut opts = VerifyOptions {
        n_max: o.n_max,
        tail_tol: DEFAULT_TAIL_TOL,
        ..VerifyOptions::default()
    };
    let mut zeros = default_zeros()?;
    match formula {
        Formula::MobiusPoisson => opts.height_index = o.n.unwrap_or(opts.height_index),
        Formula::ZeroSum => {
            let n = o.n.unwrap_or(zeros.len());
            if n == 0 || n > zeros.len() {
                return config_error(format!("--N must be in 1..={} zeros", zeros.len()));
            }
            zeros = &zeros[..n];
        }
        _ => {}
    }
    let r = verify(formula, default_tables(), zeros, &f, o.y, &opts)?;
    let rec = VerifyRecord::new(&r, tol);
    let text = match output {
        Output::Text => report::verify_text(&rec, tol),
        Output::Csv => report::verify_csv(&rec),
        Output::Json => {
            let mut d = Document::new(echo("verify", o, output, tol), rec.passed);
            d.report = Some(rec.clone());
            json(&d)
        }
    };
    Ok((text, rec.passed))
}

fn cmd_expand(o: &Opts) -> Run {
    let output = o.output.unwrap_or(Output::Text);
    let tol = check_tol(o.tol.unwrap_or(DEFAULT_VERIFY_TOL))?;
    let f = test_function(&o.function)?;
    let n = o.n.unwrap_or(DEFAULT_ORDER);
    let e = match o.formula.as_deref() {
        Some("taylor") => taylor_maclaurin(&f, o.t, n)?,
        Some("euler-maclaurin") => euler_maclaurin(&f, o.t, n)?,
        Some("euler-voronoi") => euler_voronoi(&f, o.t, n)?,
        Some("euler-circle") => euler_circle(&f, o.t)?,
        Some(other) => {
            return config_error(format!(
                "unknown expansion '{other}' (taylor, euler-maclaurin, euler-voronoi, euler-circle)"
            ))
        }
        None => return config_error("expand needs --formula"),
    };
    let rec = ExpansionRecord::new(&e);
    let text = match output {
        Output::Text => report::expansion_text(&rec),
        Output::Csv => report::expansion_csv(&rec),
        Output::Json => {
            let mut d = Document::new(echo("expand", o, output, tol), true);
            d.expansion = Some(rec);
            json(&d)
        }
    };
    Ok((text, true))
}

fn theta_grid(spec: &str) -> Result<Vec<f64>, ConfigError> {
    let num = |s: &str| -> Result<f64, ConfigError> {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map_or_else(|| config_error(format!("bad theta value '{s}'")), Ok)
    };
    let grid = if let Some((a, rest)) = spec.split_once(':') {
        let Some((b, n)) = rest.split_once(':') else {
            return config_error(format!("theta range must be START:STOP:COUNT, got '{spec}'"));
        };
        let (a, b) = (num(a)?, num(b)?);
        let n: usize = n
            .trim()
            .parse()
            .map_or_else(|_| config_error(format!("bad theta count '{n}'")), Ok)?;
        if b < a {
            return config_error(format!("theta range {a}:{b} is empty"));
        }
        match n {
            0 => Vec::new(),
            1 => vec![a],
            // rounded to 12 digits so that 0:1.2:13 gives 0.1 rather than 0.09999999999999999
            _ => (0..n)
                .map(|j| {
                    let v = a + (b - a) * j as f64 / (n - 1) as f64;
                    format!("{v:.12e}").parse().unwrap_or(v)
                })
                .collect(),
        }
    } else {
        spec.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(num)
            .collect::<Result<_, _>>()?
    };
    if grid.is_empty() {
        return config_error("theta grid is empty");
    }
    Ok(grid)
}

fn cmd_scan(o: &Opts) -> Run {
    let output = o.output.unwrap_or(Output::Csv);
    let tol = check_tol(o.tol.unwrap_or(DEFAULT_SCAN_TOL))?;
    let grid = theta_grid(&o.theta)?;
    let all = default_zeros()?;
    let n = o.n.unwrap_or(DEFAULT_SCAN_ZEROS);
    if n == 0 || n > all.len() {
        return config_error(format!("--N must be in 1..={} zeros", all.len()));
    }
    let zeros = &all[..n];
    let mut rows = Vec::with_capacity(grid.len());
    let mut passed = true;
    for theta in grid {
        let th = Complex64::new(theta, 0.0);
        let partials = zero_side_partials(th, zeros, DEFAULT_STRIDE)?;
        let divergent = is_divergent(&partials);
        let (zero_side, series_side, residual) = if theta.abs() < FRAC_PI_4 {
            let s = theta_identity_sides(th, zeros, o.k)?;
            let res = (s.zero_side - s.series_side).norm();
            if !divergent && res > tol {
                passed = false;
            }
            (s.zero_side, Some(report::pair(s.series_side)), Some(res))
        } else {
            let mut z = Complex64::new(0.0, 0.0);
            for zero in zeros {
                z += Complex64::new(0.0, 1.0) * t_rho(zero)? * (zero.gamma * th).sinh();
            }
            (z, None, None)
        };
        rows.push(ScanRow {
            theta,
            zero_side: report::pair(zero_side),
            series_side,
            residual,
            divergent,
        });
    }
    let text = match output {
        Output::Csv => report::scan_csv(&rows),
        Output::Text => report::scan_text(&rows),
        Output::Json => {
            let mut d = Document::new(echo("scan", o, output, tol), passed);
            d.scan = Some(rows);
            json(&d)
        }
    };
    Ok((text, passed))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    if b.norm() == 0.0 {
        a.norm()
    } else {
        (a - b).norm() / b.norm()
    }
}

// compares each record with `eval`; `eval` returns None for records it does not cover
fn compare(
    file: &str,
    records: &[Record],
    tol: f64,
    eval: impl Fn(&Record) -> Option<Result<f64, Error>>,
) -> FixtureFile {
    let mut out = FixtureFile {
        file: file.to_string(),
        records: 0,
        max_error: 0.0,
        failures: Vec::new(),
    };
    for r in records {
        match eval(r) {
            None => {}
            Some(Ok(err)) => {
                out.records += 1;
                out.max_error = out.max_error.max(err);
                if !(err <= tol) {
                    out.failures
                        .push(format!("{}({}): error {err:e} > {tol:e}", r.name, r.arg));
                }
            }
            Some(Err(e)) => {
                out.records += 1;
                out.failures.push(format!("{}({}): {e}", r.name, r.arg));
            }
        }
    }
    out
}

fn cmd_fixtures_check(o: &Opts) -> Run {
    let output = o.output.unwrap_or(Output::Text);
    let tol = check_tol(o.tol.unwrap_or(1e-12))?;
    let ev = EvalOptions::default();
    let special = fixtures::load("special.tsv")?;
    let mut files = vec![compare("special.tsv", &special, tol, |r| {
        let x = r.arg.re;
        Some(match r.name.as_str() {
            "gamma" => gamma(r.arg).map(|v| rel(v, r.value)),
            "zeta" => zeta(r.arg, &ev).map(|v| rel(v, r.value)),
            "dirichlet_l4" => dirichlet_l4(r.arg, &ev).map(|v| rel(v, r.value)),
            "bessel_j0" => Ok((bessel_j0(x) - r.value.re).abs()),
            "bessel_y0" => bessel_y0(x).map(|v| (v - r.value.re).abs()),
            "bessel_k0" => bessel_k0(x).map(|v| (v - r.value.re).abs()),
            "euler_gamma" => Ok((summa_core::special::EULER_GAMMA - r.value.re).abs()),
            _ => return None,
        })
    })];
    let lanczos = fixtures::load("lanczos.tsv")?;
    files.push(compare("lanczos.tsv", &lanczos, tol, |r| {
        LANCZOS_COEFFS
            .get(r.arg.re as usize)
            .map(|c| Ok((c - r.value.re).abs() / r.value.re.abs().max(1.0)))
    }));
    let oracle = fixtures::load("oracle.tsv")?;
    let g = gaussian();
    let tables = default_tables();
    files.push(compare("oracle.tsv", &oracle, tol, |r| {
        let y = r.arg.re;
        let sum = |w| weighted_sum(tables, w, &g, y, 1e-16).map(|s| s.value);
        Some(match r.name.as_str() {
            "sum_ones" => sum(Weights::Ones).map(|v| (v - r.value.re).abs()),
            "sum_d" => sum(Weights::D).map(|v| (v - r.value.re).abs()),
            "sum_r0" => sum(Weights::R).map(|v| (v + 1.0 - r.value.re).abs()),
            "poisson_lhs" => sum(Weights::Ones).map(|v| (1.0 + 2.0 * v - r.value.re).abs()),
            "gauss_frac_closed" => Ok(rel(gaussian_frac_closed(r.arg), r.value)),
            _ => return None,
        })
    }));
    let zeros = default_zeros()?;
    files.push(FixtureFile {
        file: "zeros.tsv".into(),
        records: zeros.len(),
        max_error: 0.0,
        failures: if zeros.len() == FIXTURE_ZERO_COUNT {
            Vec::new()
        } else {
            vec![format!("expected {FIXTURE_ZERO_COUNT} zeros, found {}", zeros.len())]
        },
    });
    // seeded reflection spot check of the evaluator behind the fixtures
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut refl = FixtureFile {
        file: "reflection".into(),
        records: 0,
        max_error: 0.0,
        failures: Vec::new(),
    };
    while refl.records < 100 {
        let s = Complex64::new(rng.gen_range(-2.5..3.5), rng.gen_range(-20.0..20.0));
        if [-2.0, 0.0, 1.0, 3.0].iter().any(|&p| (s - p).norm() <= 0.05) {
            continue;
        }
        refl.records += 1;
        match (xi(s), xi(1.0 - s)) {
            (Ok(a), Ok(b)) => {
                let err = (a - b).norm() / (1.0 + a.norm());
                refl.max_error = refl.max_error.max(err);
                if err > 1e-9 {
                    refl.failures.push(format!("xi({s}): reflection error {err:e}"));
                }
            }
            (Err(e), _) | (_, Err(e)) => refl.failures.push(format!("xi({s}): {e}")),
        }
    }
    files.push(refl);
    let passed = files.iter().all(|f| f.failures.is_empty());
    let text = match output {
        Output::Text => report::fixtures_text(&files),
        Output::Csv => report::fixtures_csv(&files),
        Output::Json => {
            let mut d = Document::new(echo("fixtures-check", o, output, tol), passed);
            d.fixtures = Some(files);
            json(&d)
        }
    };
    Ok((text, passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(o) => cmd_verify(o),
        Command::Expand(o) => cmd_expand(o),
        Command::Scan(o) => cmd_scan(o),
        Command::FixturesCheck(o) => cmd_fixtures_check(o),
    };
    match result {
        Ok((text, passed)) => {
            print!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(ConfigError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
