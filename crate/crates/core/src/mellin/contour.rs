use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;

const PANEL_HEIGHT: f64 = 2.0;
const PANEL_ORDER: usize = 32;
const CHECK_ORDER: usize = 16;
// tails below this are accepted regardless of the integral
const TAIL_FLOOR: f64 = 1e-16;

/// Truncated vertical line `Re(s) = c`, `|Im s| <= T`, split into Gauss-Legendre panels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerticalContour {
    pub abscissa: f64,
    pub height: f64,
    /// Total node count over all panels.
    pub nodes: usize,
    /// Largest accepted ratio of end-panel magnitude to the integral.
    pub tail_tol: f64,
}

/// `(1/2 pi i) int g ds` with a node-halving error estimate and a tail estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineIntegral {
    pub value: Complex64,
    pub error: f64,
    pub tail: f64,
}

impl VerticalContour {
    pub const DEFAULT_HEIGHT: f64 = 60.0;

    pub fn new(abscissa: f64) -> Self {
        Self::with_height(abscissa, Self::DEFAULT_HEIGHT)
    }

    pub fn with_height(abscissa: f64, height: f64) -> Self {
        let panels = (2.0 * height / PANEL_HEIGHT).ceil().max(1.0) as usize;
        Self {
            abscissa,
            height,
            nodes: panels * PANEL_ORDER,
            tail_tol: 1e-8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.height > 0.0 && self.height.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "contour height must be positive, got {}",
                self.height
            )));
        }
        if self.nodes < 64 {
            return Err(Error::InvalidArgument(format!(
                "contour needs at least 64 nodes, got {}",
                self.nodes
            )));
        }
        if !self.abscissa.is_finite() {
            return Err(Error::InvalidArgument("abscissa must be finite".into()));
        }
        Ok(())
    }

    fn panels(&self) -> usize {
        (2.0 * self.height / PANEL_HEIGHT).ceil().max(1.0) as usize
    }

    /// Integral without the tail test.
    pub fn integrate_unchecked<G>(&self, g: G) -> Result<LineIntegral>
    where
        G: Fn(Complex64) -> Result<Complex64> + Sync,
    {
        self.validate()?;
        let panels = self.panels();
        let order = (self.nodes / panels).max(2 * CHECK_ORDER);
        let h = 2.0 * self.height / panels as f64;
        let fine = gauss_legendre(order);
        let coarse = gauss_legendre(CHECK_ORDER);
        let c = self.abscissa;
        let parts: Vec<(Complex64, Complex64)> = (0..panels)
            .into_par_iter()
            .map(|k| {
                let lo = -self.height + h * k as f64;
                let rule = |r: &crate::quadrature::GaussLegendre| -> Result<Complex64> {
                    let half = 0.5 * h;
                    let mid = lo + half;
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (x, w) in r.nodes().iter().zip(r.weights()) {
                        acc += g(Complex64::new(c, mid + half * x))? * *w;
                    }
                    Ok(acc * half)
                };
                Ok((rule(fine)?, rule(coarse)?))
            })
            .collect::<Result<_>>()?;
        let mut value = Complex64::new(0.0, 0.0);
        let mut error = 0.0;
        for (f, q) in &parts {
            value += f;
            error += (f - q).norm();
        }
        let tail = parts[0].0.norm() + parts[panels - 1].0.norm();
        // ds = i dtau, so (1/2 pi i) int g ds = (1/2 pi) int g dtau
        let scale = 1.0 / (2.0 * PI);
        Ok(LineIntegral {
            value: value * scale,
            error: error * scale,
            tail: tail * scale,
        })
    }

    /// Integral, failing with [`Error::Tail`] when the end panels are not negligible.
    pub fn integrate<G>(&self, g: G) -> Result<LineIntegral>
    where
        G: Fn(Complex64) -> Result<Complex64> + Sync,
    {
        let r = self.integrate_unchecked(g)?;
        if r.tail > self.tail_tol * r.value.norm() && r.tail > TAIL_FLOOR {
            return Err(Error::Tail {
                tail: r.tail,
                total: r.value.norm(),
            });
        }
        Ok(r)
    }

    /// Raise the height by half until the tail test passes or `max_height` is reached.
    pub fn integrate_adaptive<G>(&self, g: G, max_height: f64) -> Result<LineIntegral>
    where
        G: Fn(Complex64) -> Result<Complex64> + Sync,
    {
        let mut contour = *self;
        loop {
            match contour.integrate(&g) {
                Err(Error::Tail { .. }) if contour.height * 1.5 <= max_height => {
                    contour = Self {
                        tail_tol: self.tail_tol,
                        ..Self::with_height(self.abscissa, contour.height * 1.5)
                    };
                }
                other => return other,
            }
        }
    }
}

/// Counterclockwise rectangle through `a - iT, b - iT, b + iT, a + iT`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectanglePath {
    pub a: f64,
    pub b: f64,
    pub height: f64,
}

/// Edge contributions `(1/2 pi i) int g ds` of a counterclockwise rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangleIntegral {
    pub right: Complex64,
    pub top: Complex64,
    pub left: Complex64,
    pub bottom: Complex64,
}

impl RectangleIntegral {
    pub fn total(&self) -> Complex64 {
        self.right + self.top + self.left + self.bottom
    }

    pub fn horizontal(&self) -> Complex64 {
        self.top + self.bottom
    }
}

impl RectanglePath {
    pub fn new(a: f64, b: f64, height: f64) -> Result<Self> {
        let p = Self { a, b, height };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a < self.b) {
            return Err(Error::InvalidArgument(format!(
                "rectangle needs a < b, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        if !(self.height > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "rectangle height must be positive, got {}",
                self.height
            )));
        }
        Ok(())
    }

    /// Quadrature around the rectangle.
    pub fn integrate<G>(&self, g: G) -> Result<RectangleIntegral>
    where
        G: Fn(Complex64) -> Result<Complex64> + Sync,
    {
        self.validate()?;
        let up = |c: f64| VerticalContour::with_height(c, self.height).integrate_unchecked(&g);
        let right = up(self.b)?.value;
        let left = -up(self.a)?.value;
        let horizontal = |im: f64| -> Result<Complex64> {
            let width = self.b - self.a;
            let panels = (width / PANEL_HEIGHT).ceil().max(1.0) as usize;
            let h = width / panels as f64;
            let rule = gauss_legendre(PANEL_ORDER);
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..panels {
                let lo = self.a + h * k as f64;
                let half = 0.5 * h;
                for (x, w) in rule.nodes().iter().zip(rule.weights()) {
                    acc += g(Complex64::new(lo + half + half * x, im))? * (*w * half);
                }
            }
            // ds = dx along the edge; (1/2 pi i)
            Ok(acc / Complex64::new(0.0, 2.0 * PI))
        };
        let bottom = horizontal(-self.height)?;
        let top = -horizontal(self.height)?;
        Ok(RectangleIntegral {
            right,
            top,
            left,
            bottom,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    #[test]
    fn gamma_inverse_mellin_gives_exponential() {
        // (1/2 pi i) int_{Re s = 1} Gamma(s) v^{-s} ds = e^{-v}
        let c = VerticalContour::new(1.0);
        let r = c.integrate(gamma).unwrap();
        assert!((r.value.re - (-1f64).exp()).abs() < 1e-12, "{:?}", r);
        assert!(r.value.im.abs() < 1e-14);
        assert!(r.error < 1e-10);
    }

    #[test]
    fn tail_detection() {
        let c = VerticalContour::with_height(1.0, 4.0);
        assert!(matches!(c.integrate(gamma), Err(Error::Tail { .. })));
        let r = c.integrate_adaptive(gamma, 200.0).unwrap();
        assert!((r.value.re - (-1f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn validation() {
        let mut c = VerticalContour::new(0.5);
        c.nodes = 10;
        assert!(c.validate().is_err());
        assert!(RectanglePath::new(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn rectangle_encloses_gamma_pole() {
        // residue of Gamma at 0 is 1
        let p = RectanglePath::new(-0.5, 0.5, 30.0).unwrap();
        let r = p.integrate(gamma).unwrap();
        assert!((r.total() - 1.0).norm() < 1e-10, "{:?}", r.total());
        assert!(r.horizontal().norm() < 1e-15);
    }
}
