//! Both sides of the Poisson, Voronoi, Circle and Mobius-Poisson summation formulae.
//!
//! Direct sums are truncated by majorant tail bounds. The right-hand side series in
//! `n` are cut at `n_max`; their tail figure is an estimate from the last half of
//! the computed terms, not a certificate.

mod mobius;
mod oscillatory;

pub use mobius::{
    mobius_direct_series, mobius_fourier_series, mobius_line_integrand, mobius_poisson_defect, mobius_scaled_sum,
    LinePair, MobiusDefect, DIRECT_TERMS, MIN_ZERO_GAP,
};
pub use oscillatory::{circle_kernel_integral, fourier_kernel_integral, voronoi_kernel_integral, KernelIntegral, Trig};

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::arithmetic::ArithmeticTables;
use crate::error::{Error, Result};
use crate::fractional::TestFunction;
use crate::quadrature::{exp_sinh, DeOptions};
use crate::rh::ZetaZero;
use crate::special::EULER_GAMMA;

/// Default cut of the right-hand side series.
pub const DEFAULT_N_MAX: usize = 400;
/// Default absolute tolerance on certified tails.
pub const DEFAULT_TAIL_TOL: f64 = 1e-16;
// hard cap for sums that need no table
const UNTABULATED_LIMIT: usize = 10_000_000;

/// A truncated series value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncated {
    pub value: f64,
    pub tail: f64,
    pub terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weights {
    Ones,
    D,
    R,
    /// `mu_n / n` at the argument `2 pi y / n`.
    MobiusOverN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    Poisson,
    VoronoiCosine,
    VoronoiBessel,
    CircleSine,
    CircleJ0,
    MobiusPoisson,
    MobiusNaive,
    /// Zero-sum form of the Mobius-Poisson defect at `z = sqrt(2 pi) y`.
    ZeroSum,
}

impl Formula {
    pub const ALL: [Formula; 8] = [
        Formula::Poisson,
        Formula::VoronoiCosine,
        Formula::VoronoiBessel,
        Formula::CircleSine,
        Formula::CircleJ0,
        Formula::MobiusPoisson,
        Formula::MobiusNaive,
        Formula::ZeroSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::Poisson => "poisson",
            Formula::VoronoiCosine => "voronoi-cosine",
            Formula::VoronoiBessel => "voronoi-bessel",
            Formula::CircleSine => "circle-sine",
            Formula::CircleJ0 => "circle-j0",
            Formula::MobiusPoisson => "mobius-poisson",
            Formula::MobiusNaive => "mobius-naive",
            Formula::ZeroSum => "zero-sum",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Formula::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown formula '{s}'")))
    }
}

/// Left and right sides of one formula at one scale.
#[derive(Debug, Clone, PartialEq)]
pub struct SummationReport {
    pub formula: Formula,
    pub y: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub lhs_tail_bound: f64,
    pub rhs_tail_bound: f64,
    pub terms_used: usize,
}

impl SummationReport {
    fn new(formula: Formula, y: f64, lhs: Truncated, rhs: Truncated) -> Self {
        Self {
            formula,
            y,
            lhs: lhs.value,
            rhs: rhs.value,
            residual: (lhs.value - rhs.value).abs(),
            lhs_tail_bound: lhs.tail,
            rhs_tail_bound: rhs.tail,
            terms_used: lhs.terms + rhs.terms,
        }
    }

    /// `residual <= tol + lhs_tail_bound + rhs_tail_bound`.
    pub fn passes(&self, tol: f64) -> bool {
        self.residual <= tol + self.lhs_tail_bound + self.rhs_tail_bound
    }
}

fn check_y(y: f64) -> Result<()> {
    if y > 0.0 && y.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "y must be positive and finite, got {y}"
        )))
    }
}

/// `sum_{n>=1} term(n)` cut at the first `N` with `int_N^inf env <= tol`.
///
/// `env` must dominate `|term(n)|` on `[n-1, n]` and decrease.
fn majorized_sum(term: impl Fn(usize) -> f64, env: impl Fn(f64) -> f64, tol: f64, limit: usize) -> Result<Truncated> {
    let opts = DeOptions::with_tol(1e-300, 1e-6);
    let bound = |n: usize| -> f64 {
        exp_sinh(|x: f64| env(x), n as f64, &opts)
            .map(|r| r.value.abs() + r.error)
            .unwrap_or(f64::INFINITY)
    };
    let mut hi = 1usize;
    while bound(hi) > tol {
        if hi >= limit {
            return Err(Error::TailBound {
                bound: bound(limit),
                tol,
                limit,
            });
        }
        hi = (2 * hi).min(limit);
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if bound(mid) > tol {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let n = if bound(lo.max(1)) <= tol { lo.max(1) } else { hi };
    let value = (1..=n).rev().map(term).sum();
    Ok(Truncated {
        value,
        tail: bound(n),
        terms: n,
    })
}

/// `sum_{n>=1} w_n F(n y)`; for [`Weights::MobiusOverN`], `sum mu_n/n F(2 pi y/n)`.
///
/// Cut once the majorant bound on the remaining tail is below `tol`.
pub fn weighted_sum(
    tables: &ArithmeticTables,
    weights: Weights,
    f: &TestFunction,
    y: f64,
    tol: f64,
) -> Result<Truncated> {
    check_y(y)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let env = |w: fn(f64) -> f64| move |x: f64| w(x + 1.0) * f.majorant(x * y);
    match weights {
        Weights::Ones => majorized_sum(|n| f.value(n as f64 * y), env(|_| 1.0), tol, UNTABULATED_LIMIT),
        // d_n <= 2 sqrt(n)
        Weights::D => majorized_sum(
            |n| tables.d[n] as f64 * f.value(n as f64 * y),
            env(|x| 2.0 * x.sqrt()),
            tol,
            tables.limit,
        ),
        // r_n <= 4 d_n
        Weights::R => majorized_sum(
            |n| tables.r[n] as f64 * f.value(n as f64 * y),
            env(|x| 8.0 * x.sqrt()),
            tol,
            tables.limit,
        ),
        Weights::MobiusOverN => mobius_direct_series(tables, f, y, tol),
    }
}

/// `sum_{n in Z} F(n y)` against `(1/y) sum_{n in Z} hat F(2 pi n / y)`.
pub fn poisson_check(f: &TestFunction, y: f64) -> Result<SummationReport> {
    check_y(y)?;
    let tol = DEFAULT_TAIL_TOL;
    let lhs = majorized_sum(
        |n| f.value(n as f64 * y),
        |x| f.majorant(x * y),
        0.5 * tol,
        UNTABULATED_LIMIT,
    )?;
    let w = 2.0 * PI / y;
    let rhs = majorized_sum(
        |n| f.fourier(n as f64 * w),
        |x| f.fourier_majorant(x * w),
        0.5 * tol * y,
        UNTABULATED_LIMIT,
    )?;
    let lhs = Truncated {
        value: f.value(0.0) + 2.0 * lhs.value,
        tail: 2.0 * lhs.tail,
        terms: 2 * lhs.terms + 1,
    };
    let rhs = Truncated {
        value: (f.fourier(0.0) + 2.0 * rhs.value) / y,
        tail: 2.0 * rhs.tail / y,
        terms: 2 * rhs.terms + 1,
    };
    Ok(SummationReport::new(Formula::Poisson, y, lhs, rhs))
}

// main + sum_{n<=n_max, w_n != 0} w_n term(n), parallel over n, summed in order
fn kernel_series(
    tables: &ArithmeticTables,
    n_max: usize,
    weight: impl Fn(usize) -> f64 + Sync,
    term: impl Fn(usize) -> Result<(f64, f64)> + Sync,
    main: f64,
) -> Result<Truncated> {
    if n_max < 1 || n_max > tables.limit {
        return Err(Error::InvalidArgument(format!(
            "n_max must lie in 1..={}, got {n_max}",
            tables.limit
        )));
    }
    let parts: Vec<(f64, f64)> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let w = weight(n);
            if w == 0.0 {
                return Ok((0.0, 0.0));
            }
            let (v, e) = term(n)?;
            Ok((w * v, w.abs() * e))
        })
        .collect::<Result<_>>()?;
    let mut value = main;
    let mut tail = 0.0;
    for (n, (v, e)) in parts.iter().enumerate() {
        value += v;
        tail += e;
        if 2 * (n + 1) > n_max {
            tail += v.abs();
        }
    }
    Ok(Truncated {
        value,
        tail,
        terms: n_max,
    })
}

// int_0^inf (ln x + 2 gamma) F(x y) dx + F(0)/4
fn voronoi_main(f: &TestFunction, y: f64) -> Result<f64> {
    Ok((f.log_moment()? + (2.0 * EULER_GAMMA - y.ln()) * f.integral()?) / y + 0.25 * f.value(0.0))
}

/// Bessel form of the Voronoi right-hand side.
///
/// `V + 2 pi sum_{n<=n_max} d_n int_0^inf [2/pi K_0 - Y_0](4 pi sqrt(n x)) F(x y) dx`,
/// `V = int_0^inf (ln x + 2 gamma) F(x y) dx + F(0)/4`.
pub fn voronoi_rhs_bessel(tables: &ArithmeticTables, f: &TestFunction, y: f64, n_max: usize) -> Result<Truncated> {
    check_y(y)?;
    kernel_series(
        tables,
        n_max,
        |n| 2.0 * PI * tables.d[n] as f64,
        |n| Ok((voronoi_kernel_integral(f, y, n)?, 0.0)),
        voronoi_main(f, y)?,
    )
}

/// Cosine form: `V + (2/y) sum_{n<=n_max} d_n int_0^inf cos(4 pi^2 n/(x y)) hat F(x) dx/x`.
pub fn voronoi_rhs_cosine(tables: &ArithmeticTables, f: &TestFunction, y: f64, n_max: usize) -> Result<Truncated> {
    check_y(y)?;
    kernel_series(
        tables,
        n_max,
        |n| 2.0 / y * tables.d[n] as f64,
        |n| {
            let r = fourier_kernel_integral(f, Trig::Cos, 4.0 * PI * PI * n as f64 / y)?;
            Ok((r.value, r.error))
        },
        voronoi_main(f, y)?,
    )
}

/// J_0 form of the Circle right-hand side:
/// `pi int_0^inf F(x y) dx + pi sum_{n<=n_max} r_n int_0^inf J_0(2 pi sqrt(n x)) F(x y) dx`.
pub fn circle_rhs_j0(tables: &ArithmeticTables, f: &TestFunction, y: f64, n_max: usize) -> Result<Truncated> {
    check_y(y)?;
    kernel_series(
        tables,
        n_max,
        |n| PI * tables.r[n] as f64,
        |n| Ok((circle_kernel_integral(f, y, n)?, 0.0)),
        PI * f.integral()? / y,
    )
}

/// Sine form: `(pi/y) int_0^inf F + (1/y) sum_{n<=n_max} r_n int_0^inf sin(pi^2 n/(y u)) hat F(u) du/u`.
pub fn circle_rhs_sine(tables: &ArithmeticTables, f: &TestFunction, y: f64, n_max: usize) -> Result<Truncated> {
    check_y(y)?;
    kernel_series(
        tables,
        n_max,
        |n| tables.r[n] as f64 / y,
        |n| {
            let r = fourier_kernel_integral(f, Trig::Sin, PI * PI * n as f64 / y)?;
            Ok((r.value, r.error))
        },
        PI * f.integral()? / y,
    )
}

/// Shared inputs of [`verify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub tail_tol: f64,
    /// Index `N` of the zero-avoiding line-pair height.
    pub height_index: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            n_max: DEFAULT_N_MAX,
            tail_tol: DEFAULT_TAIL_TOL,
            height_index: LinePair::DEFAULT_INDEX,
        }
    }
}

/// Both sides of `formula` for `f` at scale `y`.
///
/// Voronoi pairs compare `sum d_n F(n y)` with the named right-hand form, Circle pairs
/// `sum_{n>=0} r_n F(n y)`; `mobius-poisson` puts the series defect on the left and the
/// line-pair integral on the right, `mobius-naive` the two Mobius series and `zero-sum`
/// the sum over `zeros` against the series defect, both scaled by `sqrt z`.
pub fn verify(
    formula: Formula,
    tables: &ArithmeticTables,
    zeros: &[ZetaZero],
    f: &TestFunction,
    y: f64,
    opts: &VerifyOptions,
) -> Result<SummationReport> {
    check_y(y)?;
    let tol = opts.tail_tol;
    let circle_lhs = || -> Result<Truncated> {
        let s = weighted_sum(tables, Weights::R, f, y, tol)?;
        Ok(Truncated {
            value: s.value + f.value(0.0),
            terms: s.terms + 1,
            ..s
        })
    };
    let report = |lhs, rhs| Ok(SummationReport::new(formula, y, lhs, rhs));
    match formula {
        Formula::Poisson => poisson_check(f, y),
        Formula::VoronoiCosine => report(
            weighted_sum(tables, Weights::D, f, y, tol)?,
            voronoi_rhs_cosine(tables, f, y, opts.n_max)?,
        ),
        Formula::VoronoiBessel => report(
            weighted_sum(tables, Weights::D, f, y, tol)?,
            voronoi_rhs_bessel(tables, f, y, opts.n_max)?,
        ),
        Formula::CircleSine => report(circle_lhs()?, circle_rhs_sine(tables, f, y, opts.n_max)?),
        Formula::CircleJ0 => report(circle_lhs()?, circle_rhs_j0(tables, f, y, opts.n_max)?),
        Formula::MobiusPoisson => {
            let pair = LinePair::zero_avoiding(opts.height_index, zeros)?;
            let d = mobius_poisson_defect(tables, f, y, &pair, tol)?;
            report(
                Truncated {
                    value: d.series,
                    tail: d.series_tail,
                    terms: d.fourier.terms + d.direct.terms,
                },
                Truncated {
                    value: d.contour,
                    tail: d.contour_error,
                    terms: d.nodes,
                },
            )
        }
        Formula::MobiusNaive => report(
            mobius_direct_series(tables, f, y, tol)?,
            mobius_fourier_series(tables, f, y, tol)?,
        ),
        Formula::ZeroSum => crate::rh::zero_sum_check(tables, f, (2.0 * PI).sqrt() * y, zeros, tol),
    }
}
