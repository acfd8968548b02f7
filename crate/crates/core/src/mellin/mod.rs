//! Mellin transforms, vertical-line inversion and the kernel-weighted contour integrand
//! `Gamma(-s) K(-s) F^{(s)}(0) y^s` with its residues.

mod contour;

pub use contour::{LineIntegral, RectangleIntegral, RectanglePath, VerticalContour};

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fractional::{gamma_frac, TestFunction};
use crate::quadrature::{exp_sinh, DeOptions};
use crate::special::{dirichlet_l4, gamma, zeta, EvalOptions, EULER_GAMMA, POLE_RADIUS};

// distance below which a pole counts as lying on a rectangle edge
const BOUNDARY_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    Identity,
    Zeta,
    ZetaSquared,
    ZetaL4,
    Mobius,
}

impl KernelKind {
    pub const ALL: [KernelKind; 5] = [
        KernelKind::Identity,
        KernelKind::Zeta,
        KernelKind::ZetaSquared,
        KernelKind::ZetaL4,
        KernelKind::Mobius,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Identity => "identity",
            KernelKind::Zeta => "zeta",
            KernelKind::ZetaSquared => "zeta-squared",
            KernelKind::ZetaL4 => "zeta-l4",
            KernelKind::Mobius => "mobius",
        }
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KernelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown kernel {s:?}")))
    }
}

/// A Dirichlet kernel with the abscissa of its contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub canonical_abscissa: f64,
}

impl KernelSpec {
    pub fn new(kind: KernelKind) -> Self {
        let canonical_abscissa = match kind {
            KernelKind::Zeta | KernelKind::Mobius => -1.5,
            _ => -0.5,
        };
        Self {
            kind,
            canonical_abscissa,
        }
    }

    pub fn with_abscissa(self, c: f64) -> Self {
        Self {
            canonical_abscissa: c,
            ..self
        }
    }

    /// Line on which the integral is the plain weighted sum `sum w_n F(n y)`.
    pub fn summation_abscissa(&self) -> f64 {
        match self.kind {
            KernelKind::Identity => -0.5,
            _ => -1.5,
        }
    }

    /// `K(s)`.
    pub fn kernel(&self, s: Complex64) -> Result<Complex64> {
        let o = EvalOptions::default();
        match self.kind {
            KernelKind::Identity => Ok(Complex64::new(1.0, 0.0)),
            KernelKind::Zeta => zeta(s, &o),
            KernelKind::ZetaSquared => zeta(s, &o).map(|z| z * z),
            KernelKind::ZetaL4 => Ok(zeta(s, &o)? * dirichlet_l4(s, &o)?),
            KernelKind::Mobius => {
                // (2 pi)^{-s} / zeta(1 - s); zero at s = 0
                if s.norm() < POLE_RADIUS {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                Ok((-s * (2.0 * PI).ln()).exp() / zeta(1.0 - s, &o)?)
            }
        }
    }
}

/// `M[F](s) = int_0^inf v^{s-1} F(v) dv` for `Re(s) > 0`.
pub fn mellin_transform(f: &TestFunction, s: Complex64) -> Result<Complex64> {
    if !(s.re > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "Mellin transform needs Re(s) > 0, got {s}"
        )));
    }
    let p = s - 1.0;
    let r = exp_sinh(
        |v: f64| (p * v.ln()).exp() * f.value(v),
        0.0,
        &DeOptions::with_tol(1e-13, 1e-13),
    )?;
    Ok(r.value)
}

/// `(1/2 pi i) int_{c - iT}^{c + iT} G(s) v^{-s} ds`.
pub fn inverse_mellin_line<G>(g: G, v: f64, contour: &VerticalContour) -> Result<LineIntegral>
where
    G: Fn(Complex64) -> Result<Complex64> + Sync,
{
    if !(v > 0.0) {
        return Err(Error::Domain(format!("inverse Mellin needs v > 0, got {v}")));
    }
    let lv = v.ln();
    contour.integrate(|s| Ok(g(s)? * (-s * lv).exp()))
}

/// `Gamma(-s) K(-s) F^{(s)}(0) y^s`.
pub fn mother_integrand(k: &KernelSpec, f: &TestFunction, s: Complex64, y: f64) -> Result<Complex64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("y must be positive, got {y}")));
    }
    Ok(gamma_frac(f, s)? * k.kernel(-s)? * (s * y.ln()).exp())
}

/// `(1/2 pi i) int_{Re s = c} Gamma(-s) K(-s) F^{(s)}(0) y^s ds`.
pub fn mother_line(k: &KernelSpec, f: &TestFunction, y: f64, contour: &VerticalContour) -> Result<LineIntegral> {
    contour.integrate(|s| mother_integrand(k, f, s, y))
}

/// A pole of the mother integrand together with minus its residue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleTerm {
    pub location: Complex64,
    pub contribution: Complex64,
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

/// Poles of the integrand with `a < Re(s) < b`, `|Im s| < height`, each with `-Res`.
///
/// The sum of contributions equals `I(a) - I(b)` for lines `Re(s) = a` and `Re(s) = b`.
pub fn pole_terms(k: &KernelSpec, f: &TestFunction, path: &RectanglePath, y: f64) -> Result<Vec<PoleTerm>> {
    path.validate()?;
    let o = EvalOptions::default();
    let ly = y.ln();
    let real = |re: f64| Complex64::new(re, 0.0);
    let mut candidates: Vec<f64> = Vec::new();
    let k_lo = path.a.ceil().max(0.0) as i64;
    let k_hi = path.b.floor() as i64;
    candidates.extend((k_lo..=k_hi).map(|j| j as f64));
    if k.kind != KernelKind::Identity && k.kind != KernelKind::Mobius {
        candidates.push(-1.0);
    }
    if k.kind == KernelKind::Mobius {
        let mut m = 1;
        while -(2.0 * m as f64 + 1.0) > path.a - 1.0 {
            candidates.push(-(2.0 * m as f64 + 1.0));
            m += 1;
        }
    }
    for &p in &candidates {
        if (p - path.a).abs() < BOUNDARY_GAP || (p - path.b).abs() < BOUNDARY_GAP {
            return Err(Error::PoleOnBoundary(p));
        }
    }
    let inside = |re: f64| re > path.a && re < path.b;
    let mut out = Vec::new();
    for j in k_lo.max(0)..=k_hi {
        let kk = j as usize;
        if !inside(j as f64) {
            continue;
        }
        let weight = match k.kind {
            KernelKind::Mobius if kk == 0 => continue,
            _ => k.kernel(real(-(j as f64)))?,
        };
        let dk = f.deriv_at_0(kk);
        let c = weight * dk * (-y).powi(j as i32) / factorial(kk);
        out.push(PoleTerm {
            location: real(j as f64),
            contribution: c,
        });
    }
    match k.kind {
        KernelKind::Zeta | KernelKind::ZetaL4 if inside(-1.0) => {
            let l1 = if k.kind == KernelKind::ZetaL4 { PI / 4.0 } else { 1.0 };
            out.push(PoleTerm {
                location: real(-1.0),
                contribution: real(l1 * f.integral()? / y),
            });
        }
        KernelKind::ZetaSquared if inside(-1.0) => {
            let a = f.log_moment()?;
            let b = f.integral()?;
            out.push(PoleTerm {
                location: real(-1.0),
                contribution: real((a - b * ly + 2.0 * EULER_GAMMA * b) / y),
            });
        }
        KernelKind::Mobius => {
            // trivial zeros of zeta(1 + s) at s = -2m - 1
            let mut m = 1usize;
            loop {
                let s0 = -(2.0 * m as f64 + 1.0);
                if s0 <= path.a {
                    break;
                }
                if inside(s0) {
                    let z = zeta(real(2.0 * m as f64 + 1.0), &o)?.re;
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    let fm = f.frac_at_0(real(s0))?;
                    let res = 2.0 * sign * fm / (2.0 * PI * z * y.powi(2 * m as i32 + 1));
                    out.push(PoleTerm {
                        location: real(s0),
                        contribution: -res,
                    });
                }
                m += 1;
            }
            // nontrivial zeros of zeta(1 + s) on Re(s) = -1/2
            if inside(-0.5) {
                let zeros = crate::rh::default_zeros()?;
                let last = zeros.last().map(|z| z.gamma).unwrap_or(0.0);
                if path.height > last {
                    return Err(Error::Capacity {
                        requested: path.height.ceil() as usize,
                        budget: last.floor() as usize,
                    });
                }
                let lp = (2.0 * PI * y).ln();
                for z in zeros.iter().take_while(|z| z.gamma < path.height + BOUNDARY_GAP) {
                    if (z.gamma - path.height).abs() < BOUNDARY_GAP {
                        return Err(Error::PoleOnBoundary(-0.5));
                    }
                    for (rho, zp) in [(z.rho(), z.zeta_prime), (z.rho().conj(), z.zeta_prime.conj())] {
                        let s0 = rho - 1.0;
                        let res = gamma_frac(f, s0)? * (s0 * lp).exp() / zp;
                        out.push(PoleTerm {
                            location: s0,
                            contribution: -res,
                        });
                    }
                }
            }
        }
        _ => {}
    }
    out.sort_by(|p, q| {
        p.location
            .re
            .total_cmp(&q.location.re)
            .then(p.location.im.total_cmp(&q.location.im))
    });
    Ok(out)
}

/// `-(sum of residues)` inside the rectangle, i.e. `I(a) - I(b)`.
pub fn rectangle_residue_sum(k: &KernelSpec, f: &TestFunction, path: &RectanglePath, y: f64) -> Result<Complex64> {
    Ok(pole_terms(k, f, path, y)?.iter().map(|p| p.contribution).sum())
}

/// Counterclockwise quadrature of the mother integrand around the rectangle.
pub fn rectangle_quadrature(
    k: &KernelSpec,
    f: &TestFunction,
    path: &RectanglePath,
    y: f64,
) -> Result<RectangleIntegral> {
    path.integrate(|s| mother_integrand(k, f, s, y))
}

/// Both sides of `int_0^inf x^{s-1} F(-x) dx = pi / sin(pi s) Phi(-s)`, `Phi(s) = F^{(s)}(0) / Gamma(s+1)`.
pub fn ramanujan_check(f: &TestFunction, s: Complex64) -> Result<(Complex64, Complex64)> {
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "Ramanujan check needs 0 < Re(s) < 1, got {s}"
        )));
    }
    let phi = crate::fractional::frac_deriv(f, -s)?.value / gamma(1.0 - s)?;
    let lhs = PI / crate::special::sin_pi(s) * phi;
    let rhs = mellin_transform(f, s)?;
    Ok((lhs, rhs))
}
