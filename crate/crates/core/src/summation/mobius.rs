//! Mobius-weighted series and the line pair of the Mobius-Poisson identity.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::Truncated;
use crate::arithmetic::ArithmeticTables;
use crate::error::{Error, Result};
use crate::fractional::TestFunction;
use crate::mellin::{LineIntegral, VerticalContour};
use crate::rh::{check_zero_gap, zero_avoiding_height, ZetaZero};
use crate::special::{cos_pi, zeta, zeta_minus_one, EvalOptions};

/// Table entries summed directly; the rest is resummed from Taylor coefficients.
pub const DIRECT_TERMS: usize = 100_000;
const MAX_TAYLOR: usize = 20;
const CHUNK: usize = 4096;
/// Smallest accepted distance between a line-pair height and a zero ordinate.
pub const MIN_ZERO_GAP: f64 = 1e-3;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

// sum_{n <= m} mu_n n^{-p}, smallest terms first
fn partial_mobius(tables: &ArithmeticTables, m: usize, p: i32) -> f64 {
    (1..=m)
        .rev()
        .filter(|&n| tables.mu[n] != 0)
        .map(|n| tables.mu[n] as f64 * (n as f64).powi(-p))
        .sum()
}

/// `sum_{n>=1} mu_n/n g(x/n)` for even analytic `g` with `a(k) = g^{(2k)}(0)/(2k)!`.
///
/// `sum_{n<=M}` is direct; beyond `M` the series is `sum_k a(k) x^{2k} sum_{n>M} mu_n n^{-2k-1}`,
/// using `sum mu_n/n = 0` and `sum mu_n n^{-j} = 1/zeta(j)`.
pub fn mobius_scaled_sum<G, A>(tables: &ArithmeticTables, g: G, a: A, x: f64, tol: f64) -> Result<Truncated>
where
    G: Fn(f64) -> f64 + Sync,
    A: Fn(usize) -> Result<f64>,
{
    let m = tables.limit.min(DIRECT_TERMS);
    let chunks: Vec<f64> = (1..=m)
        .collect::<Vec<_>>()
        .par_chunks(CHUNK)
        .map(|ns| {
            ns.iter()
                .rev()
                .filter(|&&n| tables.mu[n] != 0)
                .map(|&n| tables.mu[n] as f64 / n as f64 * g(x / n as f64))
                .sum::<f64>()
        })
        .collect();
    let mut value: f64 = chunks.iter().rev().sum();
    let mf = m as f64;
    let mut taylor = 0;
    let mut bound = f64::INFINITY;
    for k in 0..MAX_TAYLOR {
        let j = 2 * k as i32 + 1;
        let tail_mu = if k == 0 {
            -partial_mobius(tables, m, 1)
        } else {
            let zm1 = zeta_minus_one(j as f64)?;
            1.0 / (1.0 + zm1) - partial_mobius(tables, m, j)
        };
        value += a(k)? * x.powi(2 * k as i32) * tail_mu;
        // next term against sum_{n>M} n^{-j-2} <= M^{-j-1}/(j+1), doubled
        let next = a(k + 1)?.abs().max(a(k + 2)?.abs() * (x / mf).powi(2));
        bound = 2.0 * next * (x / mf).powi(2 * k as i32 + 2) / (j + 1) as f64;
        taylor = k + 1;
        if bound < tol {
            break;
        }
    }
    if bound >= tol {
        return Err(Error::TailBound { bound, tol, limit: m });
    }
    let roundoff = 4.0 * f64::EPSILON * (mf.ln() + 1.0) * g(0.0).abs().max(g(x).abs());
    Ok(Truncated {
        value,
        tail: bound + roundoff,
        terms: m + taylor,
    })
}

/// `sum_{n>=1} mu_n/n F(2 pi y/n)`.
pub fn mobius_direct_series(tables: &ArithmeticTables, f: &TestFunction, y: f64, tol: f64) -> Result<Truncated> {
    mobius_scaled_sum(
        tables,
        |u| f.value(u),
        |k| Ok(f.deriv_at_0(2 * k) / factorial(2 * k)),
        2.0 * PI * y,
        tol,
    )
}

/// `(1/(2 pi y)) sum_{n>=1} mu_n/n hat F(1/(n y))`.
pub fn mobius_fourier_series(tables: &ArithmeticTables, f: &TestFunction, y: f64, tol: f64) -> Result<Truncated> {
    let scale = 1.0 / (2.0 * PI * y);
    let r = mobius_scaled_sum(
        tables,
        |u| f.fourier(u),
        |k| Ok(f.fourier_deriv_at_0(2 * k)? / factorial(2 * k)),
        1.0 / y,
        tol / scale,
    )?;
    Ok(Truncated {
        value: r.value * scale,
        tail: r.tail * scale,
        ..r
    })
}

/// Lines `Re s = 3/2` and `Re s = -1/2` truncated at a common height away from the zeros.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinePair {
    pub right: VerticalContour,
    pub left: VerticalContour,
}

impl LinePair {
    pub const RIGHT: f64 = 1.5;
    pub const LEFT: f64 = -0.5;
    /// Index `N` of the default height `T_N`.
    pub const DEFAULT_INDEX: usize = 60;

    /// Pair at `height`; fails with [`Error::ZeroProximity`] near a tabulated ordinate.
    pub fn new(height: f64, zeros: &[ZetaZero]) -> Result<Self> {
        check_zero_gap(height, zeros, MIN_ZERO_GAP)?;
        Ok(Self {
            right: VerticalContour::with_height(Self::RIGHT, height),
            left: VerticalContour::with_height(Self::LEFT, height),
        })
    }

    /// Pair at the zero-avoiding height `T_N` in `[N, N+1]`.
    pub fn zero_avoiding(n: usize, zeros: &[ZetaZero]) -> Result<Self> {
        Self::new(zero_avoiding_height(n, zeros)?, zeros)
    }

    pub fn height(&self) -> f64 {
        self.right.height
    }

    /// `int_right - int_left`, each `(1/2 pi i) int` upward.
    pub fn integrate<G>(&self, g: G) -> Result<(Complex64, f64)>
    where
        G: Fn(Complex64) -> Result<Complex64> + Sync,
    {
        let r: LineIntegral = self.right.integrate(&g)?;
        let l: LineIntegral = self.left.integrate(&g)?;
        Ok((r.value - l.value, r.error + l.error + r.tail + l.tail))
    }
}

/// `F^{(-s)}(0) y^{-s} / (2 cos(pi s/2) zeta(s))`.
pub fn mobius_line_integrand(f: &TestFunction, s: Complex64, y: f64) -> Result<Complex64> {
    let z = zeta(s, &EvalOptions::default())?;
    let c = cos_pi(0.5 * s);
    Ok(f.frac_at_0(-s)? * (-s * y.ln()).exp() / (2.0 * c * z))
}

/// Both evaluations of the Mobius-Poisson defect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusDefect {
    /// Line-pair integral.
    pub contour: f64,
    pub contour_error: f64,
    /// `(1/(2 pi y)) sum mu_n/n hat F(1/(ny)) - sum mu_n/n F(2 pi y/n)`.
    pub series: f64,
    pub series_tail: f64,
    pub fourier: Truncated,
    pub direct: Truncated,
    pub height: f64,
    /// Quadrature nodes over both lines.
    pub nodes: usize,
}

pub fn mobius_poisson_defect(
    tables: &ArithmeticTables,
    f: &TestFunction,
    y: f64,
    pair: &LinePair,
    tol: f64,
) -> Result<MobiusDefect> {
    if !(y > 0.0) {
        return Err(Error::InvalidArgument(format!("y must be positive, got {y}")));
    }
    let fourier = mobius_fourier_series(tables, f, y, tol)?;
    let direct = mobius_direct_series(tables, f, y, tol)?;
    let (contour, contour_error) = pair.integrate(|s| mobius_line_integrand(f, s, y))?;
    Ok(MobiusDefect {
        contour: contour.re,
        contour_error: contour_error + contour.im.abs(),
        series: fourier.value - direct.value,
        series_tail: fourier.tail + direct.tail,
        fourier,
        direct,
        height: pair.height(),
        nodes: pair.right.nodes + pair.left.nodes,
    })
}
