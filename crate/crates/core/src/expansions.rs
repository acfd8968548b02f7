//! Regular parts and contour remainders of the expansions in `t = -y`:
//! Taylor, Euler-Maclaurin (infinite and finite), Euler-Voronoi, Euler-Circle,
//! and the two series of the Euler-Mobius-Poisson identity.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fractional::TestFunction;
use crate::mellin::{mother_integrand, KernelKind, KernelSpec, VerticalContour};
use crate::quadrature::gauss_legendre;
use crate::special::{zeta, zeta_minus_one, EvalOptions, EULER_GAMMA};

/// Highest height tried when the remainder line needs a longer contour.
pub const MAX_HEIGHT: f64 = 360.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionKind {
    Taylor,
    EulerMaclaurin,
    EulerVoronoi,
    EulerCircle,
}

impl ExpansionKind {
    pub fn name(self) -> &'static str {
        match self {
            ExpansionKind::Taylor => "taylor",
            ExpansionKind::EulerMaclaurin => "euler-maclaurin",
            ExpansionKind::EulerVoronoi => "euler-voronoi",
            ExpansionKind::EulerCircle => "euler-circle",
        }
    }
}

/// Power of `t` carried by a term; `Log` is `t^{-1}` times a logarithm of `-t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TermPower {
    Log,
    Power(f64),
}

impl TermPower {
    fn order(&self) -> f64 {
        match self {
            // placed just before the t^{-1} terms
            TermPower::Log => -1.0 - 1e-9,
            TermPower::Power(p) => *p,
        }
    }
}

impl fmt::Display for TermPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermPower::Log => f.write_str("log"),
            TermPower::Power(p) => write!(f, "{p}"),
        }
    }
}

/// `coefficient * t^power`; for `Log` the coefficient is the term value itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionTerm {
    pub power: TermPower,
    pub coefficient: Complex64,
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion {
    pub kind: ExpansionKind,
    pub t: f64,
    pub terms: Vec<ExpansionTerm>,
    pub remainder_abscissa: f64,
    pub remainder_value: Option<Complex64>,
    pub remainder_error: f64,
}

impl AsymptoticExpansion {
    pub fn regular_part(&self) -> Complex64 {
        self.terms.iter().map(|t| t.value).sum()
    }

    /// Regular part plus remainder.
    pub fn total(&self) -> Complex64 {
        self.regular_part() + self.remainder_value.unwrap_or_default()
    }

    fn sorted(mut self) -> Self {
        self.terms.sort_by(|a, b| a.power.order().total_cmp(&b.power.order()));
        self
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

fn power_term(k: i32, coefficient: f64, t: f64) -> ExpansionTerm {
    ExpansionTerm {
        power: TermPower::Power(k as f64),
        coefficient: Complex64::new(coefficient, 0.0),
        value: Complex64::new(coefficient * t.powi(k), 0.0),
    }
}

fn negative_t(t: f64) -> Result<f64> {
    if !(t < 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("expansion needs t < 0, got {t}")));
    }
    Ok(-t)
}

// (1/2 pi i) int_{Re s = c} Gamma(-s) K(-s) F^{(s)}(0) y^s ds
fn remainder(kind: KernelKind, f: &TestFunction, y: f64, c: f64) -> Result<(Complex64, f64)> {
    let k = KernelSpec::new(kind).with_abscissa(c);
    let r = VerticalContour::new(c).integrate_adaptive(|s| mother_integrand(&k, f, s, y), MAX_HEIGHT)?;
    Ok((r.value, r.error))
}

/// `sum_{n <= N} F^{(n)}(0) t^n / n!` with the remainder on `Re(s) = N + 1/2`.
pub fn taylor_maclaurin(f: &TestFunction, t: f64, n: usize) -> Result<AsymptoticExpansion> {
    if !(t <= 0.0) {
        return Err(Error::Domain(format!("Taylor expansion needs t <= 0, got {t}")));
    }
    let c = n as f64 + 0.5;
    if t == 0.0 {
        return Ok(AsymptoticExpansion {
            kind: ExpansionKind::Taylor,
            t,
            terms: vec![power_term(0, f.deriv_at_0(0), t)],
            remainder_abscissa: c,
            remainder_value: Some(Complex64::new(0.0, 0.0)),
            remainder_error: 0.0,
        });
    }
    let terms = (0..=n)
        .map(|k| power_term(k as i32, f.deriv_at_0(k) / factorial(k), t))
        .collect();
    let (rem, err) = remainder(KernelKind::Identity, f, -t, c)?;
    Ok(AsymptoticExpansion {
        kind: ExpansionKind::Taylor,
        t,
        terms,
        remainder_abscissa: c,
        remainder_value: Some(rem),
        remainder_error: err,
    })
}

/// `(1/N!) int_0^t F^{(N+1)}(u) (t - u)^N du`.
pub fn taylor_remainder_integral(f: &TestFunction, t: f64, n: usize) -> f64 {
    let rule = gauss_legendre(32);
    let panels = (t.abs().ceil() as usize * 4).max(4);
    rule.integrate_panels(|u| f.deriv_fn(n + 1, u) * (t - u).powi(n as i32), 0.0, t, panels) / factorial(n)
}

fn zeta_at_negative_integers(n: usize) -> Result<Vec<f64>> {
    let o = EvalOptions::default();
    (0..n)
        .map(|k| zeta(Complex64::new(-(k as f64), 0.0), &o).map(|z| z.re))
        .collect()
}

/// `-F^{(-1)}(0)/t + sum_{k < 2N} zeta(-k) F^{(k)}(0) t^k / k!` with the remainder on `Re(s) = 2N`.
pub fn euler_maclaurin(f: &TestFunction, t: f64, n: usize) -> Result<AsymptoticExpansion> {
    let y = negative_t(t)?;
    if n < 1 {
        return Err(Error::InvalidArgument(
            "Euler-Maclaurin order must be at least 1".into(),
        ));
    }
    let z = zeta_at_negative_integers(2 * n)?;
    let mut terms = vec![power_term(-1, -f.integral()?, t)];
    for (k, zk) in z.iter().enumerate() {
        terms.push(power_term(k as i32, zk * f.deriv_at_0(k) / factorial(k), t));
    }
    let c = 2.0 * n as f64;
    let (rem, err) = remainder(KernelKind::Zeta, f, y, c)?;
    Ok(AsymptoticExpansion {
        kind: ExpansionKind::EulerMaclaurin,
        t,
        terms,
        remainder_abscissa: c,
        remainder_value: Some(rem),
        remainder_error: err,
    }
    .sorted())
}

/// Log-type term `-(1/t) int_0^inf F(-u) (ln(u/-t) + 2 gamma) du`.
pub fn voronoi_log_term(f: &TestFunction, t: f64) -> Result<f64> {
    let y = negative_t(t)?;
    let a = f.log_moment()?;
    let b = f.integral()?;
    Ok((a - b * y.ln() + 2.0 * EULER_GAMMA * b) / y)
}

/// Log term, `F(0)/4` and `zeta(-k)^2 F^{(k)}(0) t^k / k!` for odd `k < 2N`; remainder on `Re(s) = 2N`.
pub fn euler_voronoi(f: &TestFunction, t: f64, n: usize) -> Result<AsymptoticExpansion> {
    let y = negative_t(t)?;
    if n < 1 {
        return Err(Error::InvalidArgument("Euler-Voronoi order must be at least 1".into()));
    }
    let log = voronoi_log_term(f, t)?;
    let mut terms = vec![ExpansionTerm {
        power: TermPower::Log,
        coefficient: Complex64::new(log, 0.0),
        value: Complex64::new(log, 0.0),
    }];
    let z = zeta_at_negative_integers(2 * n)?;
    for (k, zk) in z.iter().enumerate() {
        if k == 0 || k % 2 == 1 {
            terms.push(power_term(k as i32, zk * zk * f.deriv_at_0(k) / factorial(k), t));
        }
    }
    let c = 2.0 * n as f64;
    let (rem, err) = remainder(KernelKind::ZetaSquared, f, y, c)?;
    Ok(AsymptoticExpansion {
        kind: ExpansionKind::EulerVoronoi,
        t,
        terms,
        remainder_abscissa: c,
        remainder_value: Some(rem),
        remainder_error: err,
    }
    .sorted())
}

/// `-(pi/4t) F^{(-1)}(0) - F(0)/4` with the remainder on `Re(s) = 1/2`.
pub fn euler_circle(f: &TestFunction, t: f64) -> Result<AsymptoticExpansion> {
    euler_circle_at(f, t, 0.5)
}

/// As [`euler_circle`] with the remainder on `Re(s) = c`, `c > 0`.
pub fn euler_circle_at(f: &TestFunction, t: f64, c: f64) -> Result<AsymptoticExpansion> {
    let y = negative_t(t)?;
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "Euler-Circle remainder needs c > 0, got {c}"
        )));
    }
    let terms = vec![
        power_term(-1, -PI / 4.0 * f.integral()?, t),
        power_term(0, -0.25 * f.deriv_at_0(0), t),
    ];
    let (rem, err) = remainder(KernelKind::ZetaL4, f, y, c)?;
    Ok(AsymptoticExpansion {
        kind: ExpansionKind::EulerCircle,
        t,
        terms,
        remainder_abscissa: c,
        remainder_value: Some(rem),
        remainder_error: err,
    })
}

/// Function with derivatives of every order on an interval, for the finite formula.
pub trait SmoothFunction: Sync {
    fn deriv(&self, k: usize, u: f64) -> f64;

    fn value(&self, u: f64) -> f64 {
        self.deriv(0, u)
    }
}

/// Polynomial with ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial(pub Vec<f64>);

impl SmoothFunction for Polynomial {
    fn deriv(&self, k: usize, u: f64) -> f64 {
        let mut acc = 0.0;
        for (i, c) in self.0.iter().enumerate().skip(k).rev() {
            let falling: f64 = ((i - k + 1)..=i).map(|j| j as f64).product();
            acc = acc * u + c * falling;
        }
        acc
    }
}

/// `G(u) = F(-u)` for a test function `F`.
#[derive(Debug, Clone)]
pub struct OneSided<'a>(pub &'a TestFunction);

impl SmoothFunction for OneSided<'_> {
    fn deriv(&self, k: usize, u: f64) -> f64 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sign * self.0.deriv_fn(k, -u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteEulerMaclaurin {
    pub integral: f64,
    pub corrections: f64,
    pub remainder: f64,
    /// `integral + corrections + remainder`.
    pub value: f64,
    /// `(G(p) + G(q))/2 + sum_{p<n<q} G(n)`.
    pub trapezoid: f64,
}

// Bernoulli polynomial B_m on [0, 1)
fn bernoulli_poly(m: usize, x: f64) -> f64 {
    let b = bernoulli_numbers(m);
    let mut binom = 1.0;
    let mut acc = 0.0;
    for (k, bk) in b.iter().enumerate().take(m + 1) {
        acc += binom * bk * x.powi((m - k) as i32);
        binom *= (m - k) as f64 / (k + 1) as f64;
    }
    acc
}

fn bernoulli_numbers(m: usize) -> Vec<f64> {
    // B_0..B_m with B_1 = -1/2, from sum_{k<=n} C(n+1, k) B_k = 0
    let mut b = vec![0.0; m + 1];
    b[0] = 1.0;
    for n in 1..=m {
        let mut s = 0.0;
        let mut binom = 1.0; // C(n+1, 0)
        for (k, bk) in b.iter().enumerate().take(n) {
            s += binom * bk;
            binom *= (n + 1 - k) as f64 / (k + 1) as f64;
        }
        b[n] = -s / (n + 1) as f64;
    }
    b
}

/// `int_p^q G + sum_{k<=N} B_{2k}/(2k)! (G^{(2k-1)}(q) - G^{(2k-1)}(p)) + R`,
/// `R = int_p^q G^{(2N+1)}(u) P_{2N+1}(u) du / (2N+1)!` with the periodic Bernoulli function.
pub fn euler_maclaurin_finite(g: &dyn SmoothFunction, p: i64, q: i64, n: usize) -> Result<FiniteEulerMaclaurin> {
    if p >= q {
        return Err(Error::InvalidArgument(format!("need p < q, got p = {p}, q = {q}")));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let rule = gauss_legendre(32);
    let mut integral = 0.0;
    let mut remainder = 0.0;
    let order = 2 * n + 1;
    for j in p..q {
        let lo = j as f64;
        integral += rule.integrate(|u| g.value(u), lo, lo + 1.0);
        remainder += rule.integrate(|u| g.deriv(order, u) * bernoulli_poly(order, u - lo), lo, lo + 1.0);
    }
    remainder /= factorial(order);
    let b = bernoulli_numbers(2 * n);
    let (pf, qf) = (p as f64, q as f64);
    let corrections: f64 = (1..=n)
        .map(|k| b[2 * k] / factorial(2 * k) * (g.deriv(2 * k - 1, qf) - g.deriv(2 * k - 1, pf)))
        .sum();
    let trapezoid = 0.5 * (g.value(pf) + g.value(qf)) + ((p + 1)..q).map(|j| g.value(j as f64)).sum::<f64>();
    Ok(FiniteEulerMaclaurin {
        integral,
        corrections,
        remainder,
        value: integral + corrections + remainder,
        trapezoid,
    })
}

/// `(-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}`, equal to `B_{2k} / (2k)!`.
pub fn bernoulli_ratio(k: usize) -> Result<f64> {
    let z = zeta(Complex64::new(2.0 * k as f64, 0.0), &EvalOptions::default())?.re;
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * 2.0 * z / (2.0 * PI).powi(2 * k as i32))
}

/// The two series of the Euler-Mobius-Poisson identity with truncation data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusPoissonSides {
    pub fourier_side: Complex64,
    pub direct_side: Complex64,
    pub fourier_terms: usize,
    pub direct_terms: usize,
    pub fourier_tail: f64,
    pub direct_tail: f64,
}

impl MobiusPoissonSides {
    /// `fourier_side - direct_side`, the contour integral of the identity.
    pub fn defect(&self) -> Complex64 {
        self.fourier_side - self.direct_side
    }
}

// largest k with (2k)! finite
const MAX_SERIES_TERMS: usize = 85;

// sum_{k>=1} a_k / zeta(2k+1); `total` is sum_{k>=1} a_k when known, used to sum
// a_k (1/zeta - 1) instead
fn zeta_odd_series(
    a: impl Fn(usize) -> Result<Complex64>,
    total: Option<Complex64>,
    k_max: usize,
    what: &str,
) -> Result<(Complex64, usize, f64)> {
    let mut sum = total.unwrap_or_default();
    let mut small = 0;
    let mut last = f64::INFINITY;
    for k in 1..=k_max {
        let x = 2.0 * k as f64 + 1.0;
        let zm1 = zeta_minus_one(x)?;
        let w = match total {
            Some(_) => -zm1 / (1.0 + zm1),
            None => 1.0 / (1.0 + zm1),
        };
        let term = a(k)? * w;
        sum += term;
        last = term.norm();
        if last <= 1e-17 * sum.norm().max(1e-300) || last == 0.0 {
            small += 1;
            if small >= 3 {
                return Ok((sum, k, last));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Convergence(format!(
        "{what} series still at term size {last:e} after {k_max} terms"
    )))
}

/// Fourier and direct series of the Euler-Mobius-Poisson identity at angle `theta`.
///
/// Needs `|Re theta| + alpha < pi/2`, `alpha` from the decay certificate; at most `k_max` terms.
pub fn euler_mobius_poisson_sides(f: &TestFunction, theta: Complex64, k_max: usize) -> Result<MobiusPoissonSides> {
    let alpha = f.decay().alpha;
    if !(theta.re.abs() + alpha < 0.5 * PI) {
        return Err(Error::InvalidArgument(format!(
            "needs |Re(theta)| + alpha < pi/2, got |Re(theta)| = {}, alpha = {alpha}",
            theta.re.abs()
        )));
    }
    if k_max < 1 {
        return Err(Error::InvalidArgument("need at least one term".into()));
    }
    let k_max = k_max.min(MAX_SERIES_TERMS);
    let i = Complex64::new(0.0, 1.0);
    let e = (i * theta).exp();
    // (1/2 pi) hat F^{(2k)}(0) e^{(2k+1) i theta} / (2k)!
    let b = |k: usize| -> Result<Complex64> {
        Ok(f.fourier_deriv_at_0(2 * k)? / factorial(2 * k) * e.powi(2 * k as i32 + 1) / (2.0 * PI))
    };
    let b_total = f.fourier_analytic(e).map(|v| e * (v - f.fourier(0.0)) / (2.0 * PI));
    let (fourier_side, fourier_terms, fourier_tail) = zeta_odd_series(b, b_total, k_max, "Fourier")?;
    let w = 2.0 * PI / e;
    // F^{(2k)}(0) (2 pi e^{-i theta})^{2k} / (2k)!
    let a = |k: usize| -> Result<Complex64> { Ok(f.deriv_at_0(2 * k) / factorial(2 * k) * w.powi(2 * k as i32)) };
    let a_total = f.analytic(w).map(|v| v - f.deriv_at_0(0));
    let (direct_side, direct_terms, direct_tail) = zeta_odd_series(a, a_total, k_max, "direct")?;
    Ok(MobiusPoissonSides {
        fourier_side,
        direct_side,
        fourier_terms,
        direct_terms,
        fourier_tail,
        direct_tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractional::gaussian;

    #[test]
    fn taylor_at_zero() {
        let e = taylor_maclaurin(&gaussian(), 0.0, 5).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.total().re, 1.0);
        assert_eq!(e.remainder_value, Some(Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn taylor_reproduces_value_and_classical_remainder() {
        let g = gaussian();
        let e = taylor_maclaurin(&g, -0.5, 6).unwrap();
        assert!((e.total().re - (-0.125f64).exp()).abs() < 1e-9);
        let classical = taylor_remainder_integral(&g, -0.5, 6);
        assert!((e.remainder_value.unwrap().re - classical).abs() < 1e-8);
    }

    #[test]
    fn euler_maclaurin_structure() {
        let e = euler_maclaurin(&gaussian(), -1.0, 3).unwrap();
        let powers: Vec<String> = e.terms.iter().map(|t| t.power.to_string()).collect();
        assert_eq!(powers, ["-1", "0", "1", "2", "3", "4", "5"]);
        assert!((e.terms[1].coefficient.re + 0.5).abs() < 1e-15);
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(6);
        assert_eq!(b[1], -0.5);
        assert!((b[2] - 1.0 / 6.0).abs() < 1e-15);
        assert!((b[4] + 1.0 / 30.0).abs() < 1e-15);
        assert!((bernoulli_ratio(1).unwrap() - 1.0 / 12.0).abs() < 1e-15);
        assert!((bernoulli_ratio(2).unwrap() + 1.0 / 720.0).abs() < 1e-16);
        assert!((bernoulli_poly(2, 0.25) - (0.0625 - 0.25 + 1.0 / 6.0)).abs() < 1e-15);
    }

    #[test]
    fn polynomial_derivatives() {
        let p = Polynomial(vec![1.0, 2.0, 3.0]);
        assert_eq!(p.deriv(0, 2.0), 17.0);
        assert_eq!(p.deriv(1, 2.0), 14.0);
        assert_eq!(p.deriv(2, 2.0), 6.0);
        assert_eq!(p.deriv(3, 2.0), 0.0);
    }

    #[test]
    fn finite_form_polynomial_exact() {
        let r = euler_maclaurin_finite(&Polynomial(vec![0.0, 0.0, 1.0]), 0, 10, 1).unwrap();
        assert_eq!(r.remainder, 0.0);
        assert!((r.value - r.trapezoid).abs() < 1e-12);
        assert_eq!(r.trapezoid, 335.0);
    }

    #[test]
    fn mobius_poisson_precondition() {
        let g = gaussian();
        assert!(euler_mobius_poisson_sides(&g, Complex64::new(0.9, 0.0), 200).is_err());
        assert!(euler_mobius_poisson_sides(&crate::fractional::sech2(), Complex64::new(0.0, 0.0), 200).is_err());
    }

    #[test]
    fn mobius_poisson_oracle_sides() {
        let s = euler_mobius_poisson_sides(&gaussian(), Complex64::new(0.0, 0.0), 200).unwrap();
        assert!((s.fourier_side.re + 0.12515106563136755).abs() < 1e-14);
        assert!((s.direct_side.re + 0.12515673894206508).abs() < 1e-12);
    }
}
