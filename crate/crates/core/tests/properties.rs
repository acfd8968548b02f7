use std::f64::consts::PI;

use proptest::prelude::*;
use summa_core::arithmetic::default_tables;
use summa_core::expansions::{euler_circle_at, taylor_maclaurin};
use summa_core::fractional::{
    builtin_test_functions, fourier_frac_at_0, frac_deriv, frac_deriv_shifted, gaussian, gaussian_frac_closed,
    shift_order,
};
use summa_core::mellin::{inverse_mellin_line, VerticalContour};
use summa_core::special::{gamma, rgamma, xi, xi4, zeta, EvalOptions};
use summa_core::summation::poisson_check;
use summa_core::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn away_from(s: Complex64, points: &[f64]) -> bool {
    points.iter().all(|&p| (s - p).norm() > 0.05)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn xi_is_symmetric(re in -2.5f64..3.5, im in -20.0f64..20.0) {
        let s = c(re, im);
        prop_assume!(away_from(s, &[-2.0, 0.0, 1.0, 3.0]));
        let a = xi(s).unwrap();
        let b = xi(1.0 - s).unwrap();
        prop_assert!((a - b).norm() <= 1e-9 * (1.0 + a.norm()), "s={s} {a} {b}");
    }

    #[test]
    fn xi4_is_symmetric(re in -2.5f64..3.5, im in -20.0f64..20.0) {
        let s = c(re, im);
        prop_assume!(away_from(s, &[-1.0, 2.0]));
        let a = xi4(s).unwrap();
        let b = xi4(1.0 - s).unwrap();
        prop_assert!((a - b).norm() <= 1e-9 * (1.0 + a.norm()), "s={s} {a} {b}");
    }

    #[test]
    fn zeta_functional_equation(re in -2.5f64..3.5, im in -20.0f64..20.0) {
        let s = c(re, im);
        prop_assume!(away_from(s, &[-2.0, -1.0, 0.0, 1.0]));
        let o = EvalOptions::default();
        let lhs = zeta(1.0 - s, &o).unwrap();
        let rhs = 2.0 * (-s * (2.0 * PI).ln()).exp() * gamma(s).unwrap()
            * (0.5 * PI * s).cos() * zeta(s, &o).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + lhs.norm()), "s={s} {lhs} {rhs}");
    }

    #[test]
    fn gamma_modulus_on_half_lines(n in 0usize..3, tau in -10.0f64..10.0) {
        let g = gamma(c(n as f64 + 0.5, tau)).unwrap().norm_sqr();
        let prod: f64 = (0..n).map(|k| (k as f64 + 0.5).powi(2) + tau * tau).product();
        let want = PI / (PI * tau).cosh() * prod;
        prop_assert!((g - want).abs() <= 1e-10 * want, "n={n} tau={tau}");
    }
}

proptest! {
    #![proptest_config(config(50))]

    #[test]
    fn shift_orders_agree(re in -3.0f64..3.0, im in -4.0f64..4.0) {
        let s = c(re, im);
        let f = gaussian();
        let n = shift_order(s);
        let a = frac_deriv_shifted(&f, s, n).unwrap().value;
        let b = frac_deriv_shifted(&f, s, n + 1).unwrap().value;
        prop_assert!((a - b).norm() <= 1e-9 * (1.0 + a.norm()), "s={s} {a} {b}");
    }

    #[test]
    fn gaussian_fourier_side(re in -3.0f64..0.95, im in -10.0f64..10.0) {
        // hat F^{(-s)}(0) = 2 cos(pi s/2) Gamma(1-s) F^{(s-1)}(0)
        let s = c(re, im);
        let f = gaussian();
        let lhs = fourier_frac_at_0(&f, s).unwrap();
        let rhs = 2.0 * (0.5 * PI * s).cos() * gamma(1.0 - s).unwrap() * gaussian_frac_closed(1.0 - s);
        prop_assert!((lhs - rhs).norm() <= 1e-8 * rhs.norm(), "s={s} {lhs} {rhs}");
    }

    #[test]
    fn inverse_mellin_round_trip(v in 0.2f64..3.0) {
        // M[e^{-x^2/2}](s) = 2^{s/2-1} Gamma(s/2)
        let line = VerticalContour::new(1.0);
        let r = inverse_mellin_line(|s| Ok((s * 0.5 - 1.0).scale(2f64.ln()).exp() * gamma(0.5 * s)?), v, &line)
            .unwrap();
        prop_assert!((r.value.re - (-0.5 * v * v).exp()).abs() <= 1e-7);
        prop_assert!(r.value.im.abs() <= 1e-7);
    }

    #[test]
    fn poisson_scale_covariance(y in 0.5f64..3.0, lambda in 0.5f64..2.0) {
        let f = gaussian();
        let a = poisson_check(&f, y).unwrap();
        let b = poisson_check(&f.rescaled(lambda).unwrap(), y / lambda).unwrap();
        prop_assert!((a.lhs - b.lhs).abs() <= 1e-10 * a.lhs.abs());
        prop_assert!((a.rhs - b.rhs).abs() <= 1e-10 * a.rhs.abs());
    }
}

proptest! {
    #![proptest_config(config(8))]

    #[test]
    fn circle_remainder_line_is_free(c1 in 0.2f64..3.0) {
        let f = gaussian();
        let a = euler_circle_at(&f, -1.0, 0.5).unwrap().total();
        let b = euler_circle_at(&f, -1.0, c1).unwrap().total();
        prop_assert!((a - b).norm() <= 1e-8, "c={c1} {a} {b}");
    }

    #[test]
    fn taylor_order_is_free(n in 1usize..7, t in -1.5f64..-0.1) {
        let f = gaussian();
        let e = taylor_maclaurin(&f, t, n).unwrap();
        prop_assert!((e.total().re - f.value(t)).abs() <= 1e-8, "n={n} t={t}");
    }

    #[test]
    fn coprime_multiplicativity(m in 1usize..1000, n in 1usize..1000) {
        prop_assume!(gcd(m, n) == 1);
        let t = default_tables();
        prop_assert_eq!(t.d[m * n], t.d[m] * t.d[n]);
        prop_assert_eq!(t.mu[m * n], t.mu[m] * t.mu[n]);
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn closed_form_grid() {
    let f = gaussian();
    for j in 0..30 {
        let s = c(-2.5 + 0.2 * j as f64, 1.5 * ((j % 7) as f64 - 3.0));
        let q = frac_deriv(&f, -s).unwrap().value;
        let w = gaussian_frac_closed(s);
        assert!((q - w).norm() <= 1e-9, "s={s} {q} {w}");
    }
}

#[test]
fn integer_orders_by_quadrature() {
    for f in builtin_test_functions() {
        for k in 0..=6usize {
            let s = c(k as f64, 0.0);
            let q = frac_deriv_shifted(&f, s, shift_order(s)).unwrap().value;
            assert!((q.re - f.deriv_at_0(k)).abs() <= 1e-9, "{} k={k} {q}", f.name());
        }
    }
}

#[test]
fn builtins_are_even() {
    for f in builtin_test_functions() {
        for t in [0.0, 0.3, 1.7, 4.0] {
            assert_eq!(f.value(t), f.value(-t), "{}", f.name());
            assert_eq!(f.fourier(t), f.fourier(-t), "{}", f.name());
        }
    }
}

#[test]
fn mobius_over_n_partial_sum_is_small() {
    let t = default_tables();
    let s: f64 = (1..=t.limit).rev().map(|n| t.mu[n] as f64 / n as f64).sum();
    assert!(s.abs() <= 1e-2, "{s}");
}

#[test]
fn zeta_three_partial_sum() {
    let s: f64 = (1..=10_000u32).rev().map(|n| (n as f64).powi(-3)).sum();
    let z = zeta(c(3.0, 0.0), &EvalOptions::default()).unwrap().re;
    assert!((s - z).abs() <= 1e-7);
    // tail below int_{N}^inf x^{-3} dx
    assert!(z - s <= 0.5e-8);
}

#[test]
fn reciprocal_gamma_is_entire() {
    for k in 0..5 {
        assert_eq!(rgamma(c(-(k as f64), 0.0)), c(0.0, 0.0));
    }
}
