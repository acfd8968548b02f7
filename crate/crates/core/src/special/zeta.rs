use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::gamma::{gamma, rgamma, sin_pi, POLE_RADIUS};
use crate::error::{Error, Result};
use crate::quadrature::cvz_alternating;

/// Largest CVZ length before (3 + sqrt 8)^n overflows.
const CVZ_MAX_TERMS: usize = 400;

/// Accuracy and branch controls for zeta-type evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub reflection_cutoff: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-16,
            max_terms: CVZ_MAX_TERMS,
            reflection_cutoff: 0.5,
        }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 16 {
            return Err(Error::InvalidArgument(format!(
                "max_terms must be at least 16, got {}",
                self.max_terms
            )));
        }
        Ok(())
    }

    fn terms_for(&self, s: Complex64) -> usize {
        let t = s.im.abs();
        let budget = -self.rel_tol.ln() + 0.5 * PI * t + (3.0 + 6.0 * t).ln() + 2.0;
        let n = (budget / (3.0 + 8f64.sqrt()).ln()).ceil() as usize;
        n.clamp(16, self.max_terms.min(CVZ_MAX_TERMS))
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cexpm1(z: Complex64) -> Complex64 {
    let em1 = z.re.exp_m1();
    let half = (0.5 * z.im).sin();
    c(em1 * z.im.cos() - 2.0 * half * half, z.re.exp() * z.im.sin())
}

// sum_{k>=0} (-1)^k (k+1)^{-s}
fn eta(s: Complex64, opts: &EvalOptions) -> Complex64 {
    let n = opts.terms_for(s);
    let a: Vec<Complex64> = (0..n).map(|k| (-s * ((k + 1) as f64).ln()).exp()).collect();
    cvz_alternating(&a)
}

fn zeta_direct(s: Complex64, opts: &EvalOptions) -> Complex64 {
    // 1 - 2^{1-s} without cancellation near s = 1
    let denom = -cexpm1((1.0 - s) * LN_2);
    eta(s, opts) / denom
}

fn zeta_reflected(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    let w = 1.0 - s;
    let factor = (s * LN_2 + (s - 1.0) * PI.ln()).exp() * sin_pi(0.5 * s) * gamma(w)?;
    Ok(factor * zeta_direct(w, opts))
}

/// Riemann zeta on the complex plane.
pub fn zeta(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    opts.validate()?;
    if (s - 1.0).norm() < POLE_RADIUS {
        return Err(Error::Pole(s));
    }
    let left = s.re < opts.reflection_cutoff && s.norm() >= 0.25;
    // eta / (1 - 2^{1-s}) is 0/0 near s = 1 + 2 pi i k / ln 2
    let near_eta_zero = !left && (s - 1.0).norm() > 0.5 && cexpm1((1.0 - s) * LN_2).norm() < 0.1 && s.re < 2.0;
    if left || near_eta_zero {
        zeta_reflected(s, opts)
    } else {
        Ok(zeta_direct(s, opts))
    }
}

/// zeta(x) - 1 for real x > 1 with full relative accuracy.
pub fn zeta_minus_one(x: f64) -> Result<f64> {
    if x <= 1.0 {
        return Err(Error::Domain(format!("zeta_minus_one needs x > 1, got {x}")));
    }
    if x < 8.0 {
        return Ok(zeta(c(x, 0.0), &EvalOptions::default())?.re - 1.0);
    }
    // direct sum from n = 2; the tail beyond M is bounded by an Euler-Maclaurin estimate
    let m = 64usize;
    let mut s = 0.0;
    for n in (2..=m).rev() {
        s += (n as f64).powf(-x);
    }
    let mf = m as f64;
    let tail = mf.powf(1.0 - x) / (x - 1.0) - 0.5 * mf.powf(-x) + x * mf.powf(-x - 1.0) / 12.0;
    Ok(s + tail)
}

/// Dirichlet L-function of the nontrivial character mod 4.
pub fn dirichlet_l4(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    opts.validate()?;
    if s.re >= 0.0 {
        Ok(l4_direct(s, opts))
    } else {
        // L(s) = 2^{1-2s} pi^{s-1/2} Gamma(1 - s/2) / Gamma((1+s)/2) L(1-s)
        let factor =
            ((1.0 - 2.0 * s) * LN_2 + (s - 0.5) * PI.ln()).exp() * gamma(1.0 - 0.5 * s)? * rgamma(0.5 * (1.0 + s));
        if factor == c(0.0, 0.0) {
            return Ok(factor);
        }
        Ok(factor * l4_direct(1.0 - s, opts))
    }
}

fn l4_direct(s: Complex64, opts: &EvalOptions) -> Complex64 {
    let n = opts.terms_for(s);
    let a: Vec<Complex64> = (0..n).map(|k| (-s * ((2 * k + 1) as f64).ln()).exp()).collect();
    cvz_alternating(&a)
}

/// Completed zeta pi^{-s/2} Gamma(s/2) zeta(s).
pub fn xi(s: Complex64) -> Result<Complex64> {
    let opts = EvalOptions::default();
    Ok((-0.5 * s * PI.ln()).exp() * gamma(0.5 * s)? * zeta(s, &opts)?)
}

/// Completed L-function 2^s pi^{-(s+1)/2} Gamma((s+1)/2) L(s, chi_4).
pub fn xi4(s: Complex64) -> Result<Complex64> {
    let opts = EvalOptions::default();
    let h = 0.5 * (s + 1.0);
    Ok((s * LN_2 - h * PI.ln()).exp() * gamma(h)? * dirichlet_l4(s, &opts)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> Complex64 {
        zeta(c(re, im), &EvalOptions::default()).unwrap()
    }

    #[test]
    fn special_values() {
        assert!((z(2.0, 0.0).re - PI * PI / 6.0).abs() < 1e-15);
        assert!((z(0.0, 0.0).re + 0.5).abs() < 1e-15);
        assert_eq!(z(-2.0, 0.0), c(0.0, 0.0));
        assert!((z(-1.0, 0.0).re + 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn pole_at_one() {
        assert!(matches!(
            zeta(c(1.0, 0.0), &EvalOptions::default()),
            Err(Error::Pole(_))
        ));
        assert!(zeta(c(1.0 + 1e-6, 0.0), &EvalOptions::default()).is_ok());
    }

    #[test]
    fn near_pole_laurent() {
        let h = 1e-5;
        let v = z(1.0 + h, 0.0).re;
        let euler = 0.5772156649015329;
        assert!((v - 1.0 / h - euler).abs() < 1e-7);
    }

    #[test]
    fn eta_denominator_zero_region() {
        // s = 1 + 2 pi i / ln 2 is a zero of 1 - 2^{1-s}; zeta is finite there
        let t = 2.0 * PI / LN_2;
        let a = z(1.0, t);
        let b = z(1.0, t + 1e-3);
        assert!((a - b).norm() < 1e-2);
    }

    #[test]
    fn l4_special_values() {
        let o = EvalOptions::default();
        let l1 = dirichlet_l4(c(1.0, 0.0), &o).unwrap();
        assert!((l1.re - PI / 4.0).abs() < 1e-15);
        let l0 = dirichlet_l4(c(0.0, 0.0), &o).unwrap();
        assert!((l0.re - 0.5).abs() < 1e-15);
        assert_eq!(dirichlet_l4(c(-1.0, 0.0), &o).unwrap(), c(0.0, 0.0));
        // L(-2) = E_2 / 2 = -1/2
        let lm2 = dirichlet_l4(c(-2.0, 0.0), &o).unwrap();
        assert!((lm2.re + 0.5).abs() < 1e-14, "{lm2}");
    }

    #[test]
    fn zeta_minus_one_small_and_large() {
        let v = zeta_minus_one(3.0).unwrap();
        assert!((v - 0.2020569031595943).abs() < 1e-15);
        let v = zeta_minus_one(41.0).unwrap();
        let want: f64 = (2..10).map(|n| (n as f64).powi(-41)).sum();
        assert!((v / want - 1.0).abs() < 1e-14);
    }

    #[test]
    fn options_validation() {
        let bad = EvalOptions {
            max_terms: 4,
            ..EvalOptions::default()
        };
        assert!(zeta(c(2.0, 0.0), &bad).is_err());
    }

    #[test]
    fn xi_critical_line_real() {
        let v = xi(c(0.5, 0.0)).unwrap();
        assert!(v.im.abs() < 1e-15);
        let v = xi(c(0.5, 14.0)).unwrap();
        assert!(v.im.abs() < 1e-12 * v.norm().max(1e-30));
    }
}
