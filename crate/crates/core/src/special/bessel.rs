use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.5772156649015329;

const SERIES_MAX: f64 = 8.0;
const MILLER_MAX: f64 = 25.0;

/// Bessel function of the first kind, order zero.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= SERIES_MAX {
        j0_series(x)
    } else if x <= MILLER_MAX {
        miller(x).0
    } else {
        hankel(x).0
    }
}

/// Bessel function of the second kind, order zero.
pub fn bessel_y0(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("bessel_y0 needs x > 0, got {x}")));
    }
    Ok(if x <= SERIES_MAX {
        y0_series(x)
    } else if x <= MILLER_MAX {
        miller(x).1
    } else {
        hankel(x).1
    })
}

/// Modified Bessel function of the second kind, order zero.
pub fn bessel_k0(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("bessel_k0 needs x > 0, got {x}")));
    }
    // K0(x) = e^{-x} int_0^inf exp(-x (cosh t - 1)) dt, trapezoid rule
    let h = (0.5 / x.sqrt()).min(0.2);
    let t_max = (1.0 + 40.0 / x).acosh();
    let mut sum = 0.5;
    let mut k = 1usize;
    loop {
        let t = h * k as f64;
        if t > t_max {
            break;
        }
        sum += (-x * 2.0 * (0.5 * t).sinh().powi(2)).exp();
        k += 1;
    }
    Ok(h * sum * (-x).exp())
}

fn j0_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * kf);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn y0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut sum = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        harmonic += 1.0 / kf;
        let add = -term * harmonic;
        sum += add;
        if add.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    (2.0 / PI) * (((0.5 * x).ln() + EULER_GAMMA) * j0_series(x) + sum)
}

// Backward recurrence for J_n normalized by J0 + 2 sum J_{2k} = 1, with the
// Neumann series Y0 = (2/pi)(ln(x/2) + gamma) J0 - (4/pi) sum (-1)^k J_{2k} / k.
fn miller(x: f64) -> (f64, f64) {
    let m = 2 * (((x + 50.0) / 2.0).ceil() as usize);
    let mut j_next = 0.0;
    let mut j_cur = 1e-30;
    let mut even = 0.0;
    let mut neumann = 0.0;
    let mut j0 = 0.0;
    for n in (1..=m).rev() {
        let j_prev = (2.0 * n as f64 / x) * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        let k = n - 1;
        if k > 0 && k % 2 == 0 {
            even += j_cur;
            let half = (k / 2) as f64;
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            neumann += sign * j_cur / half;
        }
        if k == 0 {
            j0 = j_cur;
        }
        if j_cur.abs() > 1e250 {
            j_cur *= 1e-250;
            j_next *= 1e-250;
            even *= 1e-250;
            neumann *= 1e-250;
        }
    }
    let norm = j0 + 2.0 * even;
    let j0 = j0 / norm;
    let neumann = neumann / norm;
    let y0 = (2.0 / PI) * ((0.5 * x).ln() + EULER_GAMMA) * j0 - (4.0 / PI) * neumann;
    (j0, y0)
}

fn hankel(x: f64) -> (f64, f64) {
    // a_k = prod_{j<=k} (-(2j-1)^2) / (k! 8^k)
    let inv = 1.0 / x;
    let mut a = 1.0;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        a *= -(odd * odd) / (kf * 8.0) * inv;
        if a.abs() > last {
            break;
        }
        last = a.abs();
        // P gets (-1)^{k/2} a_k for even k, Q gets (-1)^{(k-1)/2} a_k for odd k
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    let (s, c) = x.sin_cos();
    let cos_chi = FRAC_1_SQRT_2 * (c + s);
    let sin_chi = FRAC_1_SQRT_2 * (s - c);
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * cos_chi - q * sin_chi), amp * (p * sin_chi + q * cos_chi))
}
