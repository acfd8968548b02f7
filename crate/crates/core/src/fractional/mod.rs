//! Riemann-Liouville derivatives at 0 of even test functions.
//!
//! For `Re(s) < 0`, `F^{(s)}(0) = 1/Gamma(-s) int_0^inf u^{-s-1} F(-u) du`; the
//! continuation to the right uses `D(F)(s) = D(F^{(n)})(s - n)`.

mod builtins;
mod test_function;

pub use builtins::{builtin_test_functions, by_name, gaussian, gaussian_frac_closed, sech2, super_gaussian};
pub use test_function::{DecayCertificate, TestFunction, TestFunctionBuilder};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{exp_sinh, DeOptions};
use crate::special::rgamma;

/// Value of `F^{(s)}(0)` with the shift used and the quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracDerivResult {
    pub value: Complex64,
    pub shift_order_used: usize,
    pub quadrature_error_estimate: f64,
}

/// Shift order used by [`frac_deriv`]: 0 when `Re(s) <= -1`, else `ceil(Re s) + 2`.
pub fn shift_order(s: Complex64) -> usize {
    if s.re <= -1.0 {
        0
    } else {
        (s.re.ceil() + 2.0).max(0.0) as usize
    }
}

fn nonnegative_integer(s: Complex64) -> Option<usize> {
    (s.im == 0.0 && s.re >= 0.0 && s.re.fract() == 0.0).then_some(s.re as usize)
}

/// `F^{(s)}(0)` by quadrature, continued through the shift identity.
pub fn frac_deriv(f: &TestFunction, s: Complex64) -> Result<FracDerivResult> {
    if let Some(k) = nonnegative_integer(s) {
        return Ok(FracDerivResult {
            value: Complex64::new(f.deriv_at_0(k), 0.0),
            shift_order_used: k,
            quadrature_error_estimate: 0.0,
        });
    }
    frac_deriv_shifted(f, s, shift_order(s))
}

/// `F^{(s)}(0) = D(F^{(n)})(s - n)`, requires `Re(s) < n`.
pub fn frac_deriv_shifted(f: &TestFunction, s: Complex64, n: usize) -> Result<FracDerivResult> {
    let w = s - n as f64;
    if w.re >= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "shift {n} leaves Re(s - n) = {} >= 0",
            w.re
        )));
    }
    let (integral, err) = shifted_integral(f, w, n)?;
    let r = rgamma(-w);
    Ok(FracDerivResult {
        value: integral * r,
        shift_order_used: n,
        quadrature_error_estimate: err * r.norm(),
    })
}

// int_0^inf u^{-w-1} F^{(n)}(-u) du for Re(w) < 0
fn shifted_integral(f: &TestFunction, w: Complex64, n: usize) -> Result<(Complex64, f64)> {
    let p = -w - 1.0;
    let integrand = |u: f64| (p * u.ln()).exp() * f.deriv_fn(n, -u);
    let r = exp_sinh(integrand, 0.0, &DeOptions::with_tol(1e-15, 1e-13))?;
    Ok((r.value, r.error))
}

/// `Gamma(-s) F^{(s)}(0)`, the combination that appears in every contour integrand.
///
/// Uses the closed form when present, else `int u^{n-s-1} F^{(n)}(-u) du / prod_{j<n} (j - s)`,
/// which stays accurate in absolute terms at large `|Im s|`.
pub fn gamma_frac(f: &TestFunction, s: Complex64) -> Result<Complex64> {
    if f.has_frac_closed() {
        let g = crate::special::gamma(-s)?;
        return Ok(g * f.frac_at_0(s)?);
    }
    if let Some(k) = nonnegative_integer(s) {
        return Err(Error::Pole(Complex64::new(k as f64, 0.0)));
    }
    let n = shift_order(s);
    let (integral, _) = shifted_integral(f, s - n as f64, n)?;
    let mut prod = Complex64::new(1.0, 0.0);
    for j in 0..n {
        prod *= j as f64 - s;
    }
    Ok(integral / prod)
}

/// `1/Gamma(s) int_0^inf u^{s-1} hat F(u) du`, the Fourier-side counterpart of `F^{(-s)}(0)`.
///
/// `[0, 1]` is integrated termwise from the Taylor coefficients of `hat F` when they settle,
/// which also continues the value to `Re(s) <= 0`; otherwise `Re(s) > 0` is required.
pub fn fourier_frac_at_0(f: &TestFunction, s: Complex64) -> Result<Complex64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        return Ok(Complex64::new(f.fourier_deriv_at_0(-s.re as usize)?, 0.0));
    }
    let p = s - 1.0;
    let opts = DeOptions::with_tol(1e-15, 1e-13);
    let integral = match fourier_head_series(f, s) {
        Some(head) => {
            let tail = exp_sinh(|u: f64| (p * u.ln()).exp() * f.fourier(u), 1.0, &opts)?;
            head + tail.value
        }
        None if s.re > 0.0 => exp_sinh(|u: f64| (p * u.ln()).exp() * f.fourier(u), 0.0, &opts)?.value,
        None => {
            return Err(Error::InvalidArgument(format!(
                "Fourier-side Mellin integral needs Re(s) > 0 without a Taylor series, got {s}"
            )))
        }
    };
    Ok(integral * rgamma(s))
}

// int_0^1 u^{s-1} hat F(u) du = sum_k hat F^{(2k)}(0) / ((2k)! (s + 2k)), when the series settles
fn fourier_head_series(f: &TestFunction, s: Complex64) -> Option<Complex64> {
    const MAX_TERMS: usize = 60;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut fact = 1.0;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        if k > 0 {
            fact *= (2 * k - 1) as f64 * (2 * k) as f64;
        }
        let term = f.fourier_deriv_at_0(2 * k).ok()? / fact / (s + 2.0 * k as f64);
        sum += term;
        abs_sum += term.norm();
        if term.norm() <= 1e-17 * abs_sum {
            small += 1;
            if small >= 2 {
                return Some(sum);
            }
        } else {
            small = 0;
        }
    }
    None
}
