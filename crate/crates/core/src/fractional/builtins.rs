use std::f64::consts::PI;

use num_complex::Complex64;

use super::test_function::{TestFunction, TestFunctionBuilder};
use crate::quadrature::gauss_legendre;
use crate::special::rgamma;

// Highest derivative order tabulated for the polynomial-based models.
const MAX_ORDER: usize = 64;

/// `F^{(-s)}(0)` for `F(t) = e^{-t^2/2}`: `Gamma(s/2)/Gamma(s) 2^{s/2-1} = sqrt(pi) 2^{-s/2} / Gamma((s+1)/2)`.
///
/// The right-hand form is entire, so `s = 0` gives `F(0) = 1` directly.
pub fn gaussian_frac_closed(s: Complex64) -> Complex64 {
    PI.sqrt() * (-0.5 * s * 2f64.ln()).exp() * rgamma(0.5 * (s + 1.0))
}

// He_k(t) by the three-term recurrence
fn hermite_he(k: usize, t: f64) -> f64 {
    let (mut a, mut b) = (1.0, t);
    if k == 0 {
        return a;
    }
    for j in 1..k {
        let c = t * b - j as f64 * a;
        a = b;
        b = c;
    }
    b
}

fn double_factorial_odd(k: usize) -> f64 {
    // (k-1)!! for even k
    (1..k).step_by(2).map(|j| j as f64).product()
}

/// `F(t) = e^{-t^2/2}`, self-dual up to `sqrt(2 pi)`.
pub fn gaussian() -> TestFunction {
    let root = (2.0 * PI).sqrt();
    TestFunctionBuilder::new(
        "gaussian",
        |k, t| {
            let e = (-0.5 * t * t).exp();
            if e == 0.0 {
                return 0.0;
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * hermite_he(k, t) * e
        },
        move |x| root * (-0.5 * x * x).exp(),
    )
    .fourier_deriv0(move |k| {
        if k % 2 == 1 {
            return 0.0;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        root * sign * double_factorial_odd(k)
    })
    .frac_closed(gaussian_frac_closed)
    .analytic(|z| (-0.5 * z * z).exp())
    .fourier_analytic(move |z| root * (-0.5 * z * z).exp())
    .majorant(|x| (-0.5 * x * x).exp())
    .fourier_majorant(move |x| root * (-0.5 * x * x).exp())
    .curvature(1.0)
    .decay(600.0, 0.8)
    .build()
    .expect("gaussian model is complete")
}

// F^{(k)}(t) = sech^2(t) q_k(tanh t), ascending coefficients of q_k
fn sech2_polys() -> Vec<Vec<f64>> {
    let mut polys = vec![vec![1.0]];
    for _ in 0..MAX_ORDER {
        let q = polys.last().unwrap();
        // q_{k+1}(T) = (1 - T^2) q_k'(T) - 2T q_k(T)
        let mut next = vec![0.0; q.len() + 1];
        for i in 1..q.len() {
            let d = i as f64 * q[i];
            next[i - 1] += d;
            next[i + 1] -= d;
        }
        for (i, c) in q.iter().enumerate() {
            next[i + 1] -= 2.0 * c;
        }
        polys.push(next);
    }
    polys
}

fn sech_squared(t: f64) -> f64 {
    let e = (-2.0 * t.abs()).exp();
    4.0 * e / ((1.0 + e) * (1.0 + e))
}

fn horner(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// `F(t) = sech^2 t`, `hat F(x) = pi x / sinh(pi x / 2)`; poles at `t = i pi/2`, so it
/// fails the growth hypothesis needed by the Mobius-side series.
pub fn sech2() -> TestFunction {
    let polys = sech2_polys();
    TestFunctionBuilder::new(
        "sech2",
        move |k, t| match polys.get(k) {
            Some(q) => sech_squared(t) * horner(q, t.tanh()),
            None => f64::NAN,
        },
        sech2_fourier,
    )
    .analytic(|z| {
        let c = z.cosh();
        1.0 / (c * c)
    })
    .fourier_analytic(|z| {
        if z.norm() < 1e-8 {
            Complex64::new(2.0, 0.0)
        } else {
            PI * z / (0.5 * PI * z).sinh()
        }
    })
    .majorant(|x| (4.0 * (-2.0 * x).exp()).min(1.0))
    .curvature(2.0)
    .decay(1.0, 0.5 * PI)
    .build()
    .expect("sech2 model is complete")
}

fn sech2_fourier(x: f64) -> f64 {
    let x = x.abs();
    if x < 1e-8 {
        return 2.0 - PI * PI * x * x / 12.0;
    }
    let e = (-0.5 * PI * x).exp();
    // pi x / sinh(pi x/2) = 2 pi x e / (1 - e^2)
    2.0 * PI * x * e / (1.0 - e * e)
}

// F^{(k)}(t) = q_k(t) e^{-t^4/2}
fn super_gaussian_polys() -> Vec<Vec<f64>> {
    let mut polys = vec![vec![1.0]];
    for _ in 0..MAX_ORDER {
        let p = polys.last().unwrap();
        let mut q = vec![0.0; p.len() + 3];
        for i in 1..p.len() {
            q[i - 1] += i as f64 * p[i];
        }
        for (i, c) in p.iter().enumerate() {
            q[i + 3] -= 2.0 * c;
        }
        polys.push(q);
    }
    polys
}

/// `F(t) = e^{-t^4/2}`: flat near 0, Fourier transform by quadrature, no closed forms.
pub fn super_gaussian() -> TestFunction {
    const CUTOFF: f64 = 3.3;
    let polys = super_gaussian_polys();
    let fourier = |x: f64| {
        let x = x.abs();
        let panels = ((x * CUTOFF / PI).ceil() as usize).max(8);
        let rule = gauss_legendre(20);
        2.0 * rule.integrate_panels(|u| (-0.5 * u.powi(4)).exp() * (x * u).cos(), 0.0, CUTOFF, panels)
    };
    // |hat F(x)| <= ||F^{(k)}||_1 / x^k
    let norms: Vec<f64> = (0..=10)
        .map(|k| {
            let p = &polys[k];
            2.0 * 1.1
                * gauss_legendre(20).integrate_panels(|u| (horner(p, u) * (-0.5 * u.powi(4)).exp()).abs(), 0.0, 4.5, 90)
        })
        .collect();
    let polys_d = polys.clone();
    TestFunctionBuilder::new(
        "super-gaussian",
        move |k, t| match polys_d.get(k) {
            Some(p) => {
                let e = (-0.5 * t.powi(4)).exp();
                if e == 0.0 {
                    0.0
                } else {
                    horner(p, t) * e
                }
            }
            None => f64::NAN,
        },
        fourier,
    )
    .analytic(|z| (-0.5 * z * z * z * z).exp())
    .majorant(|x| (-0.5 * x.powi(4)).exp())
    .fourier_majorant(move |x| {
        norms
            .iter()
            .enumerate()
            .map(|(k, n)| n / x.powi(k as i32))
            .fold(f64::INFINITY, f64::min)
    })
    .decay(1.0, PI)
    .build()
    .expect("super-gaussian model is complete")
}

/// Built-in models: gaussian, sech2, super-gaussian.
pub fn builtin_test_functions() -> Vec<TestFunction> {
    vec![gaussian(), sech2(), super_gaussian()]
}

pub fn by_name(name: &str) -> Option<TestFunction> {
    match name {
        "gaussian" => Some(gaussian()),
        "sech2" => Some(sech2()),
        "super-gaussian" => Some(super_gaussian()),
        _ => None,
    }
}
