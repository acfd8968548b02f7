use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Radius around a pole inside which evaluation fails instead of returning huge values.
pub const POLE_RADIUS: f64 = 1e-8;

pub const LANCZOS_G: f64 = 607.0 / 128.0;

/// Lanczos coefficients for g = 607/128, n = 15 (see fixtures/lanczos.tsv).
pub const LANCZOS_COEFFS: [f64; 15] = [
    0.9999999999999971,
    57.15623566586292,
    -59.59796035547549,
    14.136097974741746,
    -0.4919138160976202,
    3.399464998481189e-05,
    4.652362892704858e-05,
    -9.837447530487956e-05,
    0.0001580887032249125,
    -0.00021026444172410488,
    0.00021743961811521265,
    -0.0001643181065367639,
    8.441822398385275e-05,
    -2.6190838401581408e-05,
    3.6899182659531625e-06,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// sin(pi x) with exact zeros at the integers.
pub fn sin_pi_real(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    // r in [-1, 1]
    let (sign, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let v = if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).cos()
    } else {
        (PI * (1.0 - r)).sin()
    };
    sign * v
}

/// cos(pi x) with exact zeros at the half-integers.
pub fn cos_pi_real(x: f64) -> f64 {
    sin_pi_real(x + 0.5)
}

/// sin(pi z) for complex z.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let y = PI * z.im;
    Complex64::new(sin_pi_real(z.re) * y.cosh(), cos_pi_real(z.re) * y.sinh())
}

/// cos(pi z) for complex z.
pub fn cos_pi(z: Complex64) -> Complex64 {
    let y = PI * z.im;
    Complex64::new(cos_pi_real(z.re) * y.cosh(), -sin_pi_real(z.re) * y.sinh())
}

/// A logarithm of sin(pi z), stable for large |Im z|.
pub fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 20.0 {
        return sin_pi(z).ln();
    }
    // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i, one exponential dominates
    let w = Complex64::new(0.0, PI) * z;
    let one = Complex64::new(1.0, 0.0);
    if z.im > 0.0 {
        // sin(pi z) = (i/2) e^{-w} (1 - e^{2w})
        -w + (one - (2.0 * w).exp()).ln() + Complex64::new(0.5f64.ln(), 0.5 * PI)
    } else {
        // sin(pi z) = (-i/2) e^{w} (1 - e^{-2w})
        w + (one - (-2.0 * w).exp()).ln() + Complex64::new(0.5f64.ln(), -0.5 * PI)
    }
}

/// A logarithm of cos(pi z), stable for large |Im z|.
pub fn ln_cos_pi(z: Complex64) -> Complex64 {
    ln_sin_pi(z + 0.5)
}

fn nonpositive_integer_pole(s: Complex64) -> Option<f64> {
    if s.re > 0.5 || s.im.abs() >= POLE_RADIUS {
        return None;
    }
    let k = s.re.round();
    if k <= 0.0 && (s - k).norm() < POLE_RADIUS {
        Some(k)
    } else {
        None
    }
}

// Lanczos sum and the shifted argument t = z + g - 1/2 for Re z >= 1/2.
fn lanczos_parts(z: Complex64) -> (Complex64, Complex64) {
    let zm = z - 1.0;
    let mut sum = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += *c / (zm + k as f64);
    }
    (sum, zm + LANCZOS_G + 0.5)
}

fn gamma_right(z: Complex64) -> Complex64 {
    let (sum, t) = lanczos_parts(z);
    let zm = z - 1.0;
    ((zm + 0.5) * t.ln() - t + LN_SQRT_2PI).exp() * sum
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let (sum, t) = lanczos_parts(z);
    let zm = z - 1.0;
    (zm + 0.5) * t.ln() - t + LN_SQRT_2PI + sum.ln()
}

/// Gamma function of a complex argument.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    if nonpositive_integer_pole(s).is_some() {
        return Err(Error::Pole(s));
    }
    if s.re < 0.5 {
        Ok(PI / (sin_pi(s) * gamma_right(1.0 - s)))
    } else {
        Ok(gamma_right(s))
    }
}

/// A logarithm of Gamma (branch not necessarily principal, exp() is Gamma).
pub fn ln_gamma(s: Complex64) -> Result<Complex64> {
    if nonpositive_integer_pole(s).is_some() {
        return Err(Error::Pole(s));
    }
    if s.re < 0.5 {
        Ok(PI.ln() - ln_sin_pi(s) - ln_gamma_right(1.0 - s))
    } else {
        Ok(ln_gamma_right(s))
    }
}

/// 1/Gamma, entire; exactly zero at the nonpositive integers.
pub fn rgamma(s: Complex64) -> Complex64 {
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if s.re < 0.5 {
        sin_pi(s) * gamma_right(1.0 - s) / PI
    } else {
        1.0 / gamma_right(s)
    }
}

/// Gamma of a real argument.
pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(Complex64::new(x, 0.0)).map(|g| g.re)
}
