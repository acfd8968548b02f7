use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use super::zeros::{zero_avoiding_height, ZetaZero};
use crate::arithmetic::ArithmeticTables;
use crate::error::{Error, Result};
use crate::fractional::TestFunction;
use crate::special::{ln_cos_pi, ln_gamma, zeta_minus_one};
use crate::summation::{mobius_direct_series, mobius_fourier_series, Formula, SummationReport};

/// Distance within which `s` is matched to a tabulated zero.
pub const ZERO_MATCH: f64 = 1e-9;
/// Partial-sum growth factor counted as a jump by [`is_divergent`].
pub const JUMP_FACTOR: f64 = 2.0;
/// Consecutive jumps that flag divergence.
pub const JUMP_RUN: usize = 5;
/// Spacing of the indices `N` of the heights `T_N` sampled by [`zero_side_partials`].
pub const DEFAULT_STRIDE: usize = 20;

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// `2^s pi^{s/2} Gamma(s/2) / (4 cos(pi s/2) Gamma(s) zeta'(s))`, computed through logarithms.
fn t_coefficient(s: Complex64, zeta_prime: Complex64) -> Result<Complex64> {
    let ln = s * 2f64.ln() + 0.5 * s * PI.ln() + ln_gamma(0.5 * s)? - 4f64.ln() - ln_cos_pi(0.5 * s) - ln_gamma(s)?;
    Ok(ln.exp() / zeta_prime)
}

/// `T(rho)` of the zero-side series of the theta identity.
pub fn t_rho(z: &ZetaZero) -> Result<Complex64> {
    t_coefficient(z.rho(), z.zeta_prime)
}

/// `C(s) = i 2^s pi^{s/2} Gamma(s/2) / (cos(pi s/2) Gamma(s) zeta'(s))` at a tabulated zero
/// or its conjugate.
pub fn c_function(s: Complex64, zeros: &[ZetaZero]) -> Result<Complex64> {
    for z in zeros {
        let rho = z.rho();
        if (s - rho).norm() <= ZERO_MATCH {
            return Ok(4.0 * i() * t_coefficient(rho, z.zeta_prime)?);
        }
        if (s - rho.conj()).norm() <= ZERO_MATCH {
            return Ok(4.0 * i() * t_coefficient(rho.conj(), z.zeta_prime.conj())?);
        }
    }
    Err(Error::NotAZero(s))
}

/// Both sides of the theta identity with their last-term magnitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaSides {
    /// `i sum_{rho in Z+} T(rho) sinh(gamma theta)`.
    pub zero_side: Complex64,
    /// `sum_{k=1}^{K} (-1)^k pi^k / (k! zeta(2k+1)) sin((2k + 1/2) theta)`.
    pub series_side: Complex64,
    pub zero_last: f64,
    pub series_last: f64,
}

/// Theta identity over `zeros` (taken as the truncation) and `k` series terms.
///
/// Fails with [`Error::Convergence`] unless `|Re theta| < pi/4`.
pub fn theta_identity_sides(theta: Complex64, zeros: &[ZetaZero], k: usize) -> Result<ThetaSides> {
    if !(theta.re.abs() < FRAC_PI_4) {
        return Err(Error::Convergence(format!(
            "zero side diverges for |Re theta| >= pi/4, got theta = {theta}"
        )));
    }
    let mut zero_side = Complex64::new(0.0, 0.0);
    let mut zero_last = 0.0;
    for z in zeros {
        let term = i() * t_rho(z)? * (z.gamma * theta).sinh();
        zero_side += term;
        zero_last = term.norm();
    }
    let mut series_side = Complex64::new(0.0, 0.0);
    let mut series_last = 0.0;
    let mut coef = 1.0;
    for j in 1..=k {
        coef *= -PI / j as f64;
        let z = 1.0 + zeta_minus_one(2.0 * j as f64 + 1.0)?;
        let term = coef / z * ((2.0 * j as f64 + 0.5) * theta).sin();
        series_side += term;
        series_last = term.norm();
    }
    Ok(ThetaSides {
        zero_side,
        series_side,
        zero_last,
        series_last,
    })
}

/// Zeros with ordinate at most `height`.
pub fn zeros_below(zeros: &[ZetaZero], height: f64) -> &[ZetaZero] {
    let n = zeros.partition_point(|z| z.gamma <= height);
    &zeros[..n]
}

/// Zero-side partial sums at the heights `T_N`, `N = stride, 2 stride, ...` within the table.
pub fn zero_side_partials(theta: Complex64, zeros: &[ZetaZero], stride: usize) -> Result<Vec<(f64, Complex64)>> {
    if stride == 0 {
        return Err(Error::InvalidArgument("stride must be positive".into()));
    }
    let mut out = Vec::new();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut used = 0;
    let mut n = stride;
    while let Ok(h) = zero_avoiding_height(n, zeros) {
        let upto = zeros_below(zeros, h).len();
        for z in &zeros[used..upto] {
            sum += i() * t_rho(z)? * (z.gamma * theta).sinh();
        }
        used = upto;
        out.push((h, sum));
        n += stride;
    }
    Ok(out)
}

/// True when [`JUMP_RUN`] consecutive partial-sum magnitudes each grow by more than [`JUMP_FACTOR`].
pub fn is_divergent(partials: &[(f64, Complex64)]) -> bool {
    let mut run = 0;
    for w in partials.windows(2) {
        if w[1].1.norm() > JUMP_FACTOR * w[0].1.norm() {
            run += 1;
            if run >= JUMP_RUN {
                return true;
            }
        } else {
            run = 0;
        }
    }
    false
}

/// Smallest `A` with `|F^{(-s)}(0)| <= A 2^{|sigma|/2} e^{alpha |tau|}` on a grid.
pub fn fit_growth_constant(
    f: &TestFunction,
    alpha: f64,
    sigma: (f64, f64),
    tau: (f64, f64),
    points: usize,
) -> Result<f64> {
    if points < 2 {
        return Err(Error::InvalidArgument("grid needs at least two points per axis".into()));
    }
    let step = |(lo, hi): (f64, f64), k: usize| lo + (hi - lo) * k as f64 / (points - 1) as f64;
    let mut a: f64 = 0.0;
    for j in 0..points {
        let x = step(sigma, j);
        for k in 0..points {
            let t = step(tau, k);
            let v = f.frac_at_0(-Complex64::new(x, t))?.norm();
            a = a.max(v / (2f64.powf(0.5 * x.abs()) * (alpha * t.abs()).exp()));
        }
    }
    Ok(a)
}

/// Symmetrized zero-sum identity at `z = sqrt(2 pi) y`.
///
/// Left: `sqrt z sum_rho F^{(-rho)}(0) y^{-rho} / (2 cos(pi rho/2) zeta'(rho))` over the zeros
/// and their conjugates. Right: `sqrt z` times the Mobius series defect at `y`.
pub fn zero_sum_check(
    tables: &ArithmeticTables,
    f: &TestFunction,
    z: f64,
    zeros: &[ZetaZero],
    tol: f64,
) -> Result<SummationReport> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidArgument(format!("z must be positive, got {z}")));
    }
    let y = z / (2.0 * PI).sqrt();
    let root = z.sqrt();
    let mut sum = 0.0;
    let mut last = 0.0;
    for zero in zeros {
        let rho = zero.rho();
        let scale = (-rho * y.ln() - ln_cos_pi(0.5 * rho)).exp() / (2.0 * zero.zeta_prime);
        let term = 2.0 * (f.frac_at_0(-rho)? * scale).re;
        sum += term;
        last = term.abs();
    }
    let fourier = mobius_fourier_series(tables, f, y, tol)?;
    let direct = mobius_direct_series(tables, f, y, tol)?;
    let lhs = root * sum;
    let rhs = root * (fourier.value - direct.value);
    Ok(SummationReport {
        formula: Formula::ZeroSum,
        y,
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        lhs_tail_bound: root * last,
        rhs_tail_bound: root * (fourier.tail + direct.tail),
        terms_used: zeros.len() + fourier.terms + direct.terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::default_tables;
    use crate::fixtures;
    use crate::fractional::gaussian;
    use crate::rh::default_zeros;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn oracle(name: &str, x: f64) -> Complex64 {
        fixtures::lookup(&fixtures::load("oracle.tsv").unwrap(), name, x).unwrap()
    }

    #[test]
    fn theta_sides_match_oracle() {
        let z = &default_zeros().unwrap()[..100];
        for th in [0.3, 0.5] {
            let s = theta_identity_sides(c(th, 0.0), z, 25).unwrap();
            assert!((s.series_side - oracle("eq30_series_K25", th)).norm() < 1e-15, "{s:?}");
            assert!((s.zero_side - oracle("eq30_zero_side_100", th)).norm() < 1e-12, "{s:?}");
        }
        let s = theta_identity_sides(c(0.0, 0.0), z, 25).unwrap();
        assert_eq!(s.zero_side.norm() + s.series_side.norm(), 0.0);
        assert!(theta_identity_sides(c(1.0, 0.0), z, 25).is_err());
    }

    #[test]
    fn c_function_symmetries() {
        let z = default_zeros().unwrap();
        for zero in z {
            let rho = zero.rho();
            let v = c_function(rho, z).unwrap();
            assert!(v.im.abs() <= 1e-9 * v.norm(), "{rho} {v}");
            let w = c_function(1.0 - rho, z).unwrap();
            assert!((v + w).norm() <= 1e-9 * v.norm());
        }
        assert!(matches!(c_function(c(0.5, 15.0), z), Err(Error::NotAZero(_))));
    }

    #[test]
    fn divergence_detector() {
        let z = &default_zeros().unwrap()[..100];
        let p = zero_side_partials(c(1.0, 0.0), z, DEFAULT_STRIDE).unwrap();
        assert!(is_divergent(&p));
        let p = zero_side_partials(c(0.5, 0.0), z, DEFAULT_STRIDE).unwrap();
        assert!(!is_divergent(&p));
    }

    #[test]
    fn zero_sum_defect_at_unit_scale() {
        let z = &default_zeros().unwrap()[..100];
        let r = zero_sum_check(default_tables(), &gaussian(), (2.0 * PI).sqrt(), z, 1e-16).unwrap();
        assert!((r.y - 1.0).abs() < 1e-15);
        let want = (2.0 * PI).sqrt().sqrt() * oracle("mobius_defect_y1_zerosum100", 1.0).re;
        assert!((r.lhs - want).abs() < 1e-12, "{r:?}");
        assert!(r.residual < 1e-12, "{r:?}");
    }
}
