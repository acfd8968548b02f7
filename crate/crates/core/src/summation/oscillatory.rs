//! Kernel integrals of the Voronoi and Circle right-hand sides.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fractional::TestFunction;
use crate::quadrature::{cvz_alternating, exp_sinh, gauss_legendre, tanh_sinh, DeOptions};
use crate::special::{bessel_j0, bessel_k0, bessel_y0};

const PANEL_ORDER: usize = 16;
const CVZ_TERMS: usize = 40;
// v at which the first tail estimate starts; doubled until two estimates agree
const TAIL_START: f64 = 0.5;
const MAX_DOUBLINGS: usize = 6;
const STABLE_REL: f64 = 1e-13;
// panel contributions below this fraction of hat F(0)/c are skipped near v = 0
const NEGLIGIBLE: f64 = 1e-20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trig {
    Cos,
    Sin,
}

impl Trig {
    fn eval(self, x: f64) -> f64 {
        match self {
            Trig::Cos => x.cos(),
            Trig::Sin => x.sin(),
        }
    }

    // zeros of trig(c v) are (k + offset) pi / c
    fn offset(self) -> f64 {
        match self {
            Trig::Cos => 0.5,
            Trig::Sin => 1.0,
        }
    }
}

/// Integral with the spread between the last two tail estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelIntegral {
    pub value: f64,
    pub error: f64,
}

/// `int_0^inf trig(c v) hat F(1/v) dv / v`, i.e. `int_0^inf trig(c/x) hat F(x) dx / x`.
///
/// Zero-to-zero panels of `trig(c v)`; the alternating panel tail is summed by CVZ.
pub fn fourier_kernel_integral(f: &TestFunction, trig: Trig, c: f64) -> Result<KernelIntegral> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidArgument(format!("frequency must be positive, got {c}")));
    }
    let amp = |v: f64| f.fourier(1.0 / v) / v;
    let bound = |v: f64| f.fourier_majorant(1.0 / v) / v;
    let width = PI / c;
    let edge = |k: usize| (k as f64 + trig.offset()) * width;
    let rule = gauss_legendre(PANEL_ORDER);
    let panel = |a: f64, b: f64| rule.integrate(|v| trig.eval(c * v) * amp(v), a, b);
    let skip = NEGLIGIBLE * f.fourier(0.0).abs().max(f64::MIN_POSITIVE) * width;

    // head [0, edge(0)] and panels [edge(k), edge(k+1)]
    let mut first = 0usize;
    let mut head = 0.0;
    if bound(edge(0)) * edge(0) >= skip {
        head = rule.integrate_panels(|v| trig.eval(c * v) * amp(v), 0.0, edge(0), 4);
    } else {
        while bound(edge(first + 1)) * width < skip {
            first += 1;
        }
    }
    let start = |v: f64| ((v / width).ceil() as usize).max(first);

    let mut direct = head;
    let mut abs_sum = head.abs();
    let mut done = first;
    let tail_at = |k_end: usize, direct: &mut f64, abs_sum: &mut f64, done: &mut usize| {
        for k in *done..k_end {
            let p = panel(edge(k), edge(k + 1));
            *direct += p;
            *abs_sum += p.abs();
        }
        *done = k_end.max(*done);
        let tail: Vec<f64> = (0..CVZ_TERMS)
            .map(|j| {
                let k = k_end + j;
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * panel(edge(k), edge(k + 1))
            })
            .collect();
        *direct + cvz_alternating(&tail)
    };

    let mut v = TAIL_START;
    let mut prev = tail_at(start(v), &mut direct, &mut abs_sum, &mut done);
    let mut spread = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        v *= 2.0;
        let next = tail_at(start(v), &mut direct, &mut abs_sum, &mut done);
        spread = (next - prev).abs();
        if spread <= STABLE_REL * abs_sum.max(next.abs()) {
            return Ok(KernelIntegral {
                value: next,
                error: spread,
            });
        }
        prev = next;
    }
    Err(Error::Oscillation { c, spread })
}

// int_0^inf 2u k(a u) F(u^2 y) du over panels of width pi/a, cut where the majorant is negligible
fn bessel_panels(f: &TestFunction, y: f64, a: f64, k: impl Fn(f64) -> f64) -> Result<f64> {
    let width = PI / a;
    let weight = |u: f64| 2.0 * u * f.value(u * u * y);
    let mut panels = 1usize;
    while {
        let u = width * panels as f64;
        2.0 * u * f.majorant(u * u * y) > NEGLIGIBLE * f.value(0.0).abs()
    } {
        panels += 1;
        if panels > 10_000_000 {
            return Err(Error::InvalidArgument("test function majorant does not decay".into()));
        }
    }
    let head = tanh_sinh(|u| k(a * u) * weight(u), 0.0, width, &DeOptions::with_tol(1e-18, 1e-14))?;
    let rule = gauss_legendre(PANEL_ORDER);
    let mut sum = head.value;
    for j in 1..panels {
        let lo = width * j as f64;
        sum += rule.integrate(|u| k(a * u) * weight(u), lo, lo + width);
    }
    Ok(sum)
}

/// `int_0^inf [2/pi K_0 - Y_0](4 pi sqrt(n x)) F(x y) dx`.
pub fn voronoi_kernel_integral(f: &TestFunction, y: f64, n: usize) -> Result<f64> {
    let a = 4.0 * PI * (n as f64).sqrt();
    let k_part = exp_sinh(
        |u: f64| 2.0 * u * f.value(u * u * y) * bessel_k0(a * u).unwrap_or(0.0),
        0.0,
        &DeOptions::with_tol(1e-18, 1e-14),
    )?;
    let y_part = bessel_panels(f, y, a, |x| bessel_y0(x).unwrap_or(f64::NAN))?;
    Ok(2.0 / PI * k_part.value - y_part)
}

/// `int_0^inf J_0(2 pi sqrt(n x)) F(x y) dx`.
pub fn circle_kernel_integral(f: &TestFunction, y: f64, n: usize) -> Result<f64> {
    let a = 2.0 * PI * (n as f64).sqrt();
    bessel_panels(f, y, a, bessel_j0)
}
