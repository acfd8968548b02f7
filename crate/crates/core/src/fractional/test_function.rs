use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use super::frac_deriv;
use crate::error::{Error, Result};
use crate::quadrature::{exp_sinh, DeOptions};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type DerivFn = Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>;
type ComplexFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;
type IndexFn = Arc<dyn Fn(usize) -> f64 + Send + Sync>;

/// Growth certificate `|F^{(-s)}(0)| <= A 2^{|sigma|/2} e^{alpha |tau|}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayCertificate {
    pub a: f64,
    pub alpha: f64,
}

#[derive(Default)]
struct Moments {
    integral: OnceLock<f64>,
    log_moment: OnceLock<f64>,
    second_moment: OnceLock<f64>,
}

/// Even, rapidly decreasing test function, given on `t <= 0`.
#[derive(Clone)]
pub struct TestFunction {
    name: String,
    deriv: DerivFn,
    fourier: RealFn,
    fourier_deriv0: Option<IndexFn>,
    frac_closed: Option<ComplexFn>,
    analytic: Option<ComplexFn>,
    fourier_analytic: Option<ComplexFn>,
    majorant: RealFn,
    fourier_majorant: RealFn,
    curvature: f64,
    decay: DecayCertificate,
    moments: Arc<Moments>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("frac_closed", &self.frac_closed.is_some())
            .field("analytic", &self.analytic.is_some())
            .field("curvature", &self.curvature)
            .field("decay", &self.decay)
            .finish()
    }
}

/// Builder for [`TestFunction`]; derivatives and the Fourier transform are required.
pub struct TestFunctionBuilder {
    name: String,
    deriv: DerivFn,
    fourier: RealFn,
    fourier_deriv0: Option<IndexFn>,
    frac_closed: Option<ComplexFn>,
    analytic: Option<ComplexFn>,
    fourier_analytic: Option<ComplexFn>,
    majorant: Option<RealFn>,
    fourier_majorant: Option<RealFn>,
    curvature: Option<f64>,
    decay: DecayCertificate,
}

impl TestFunctionBuilder {
    /// `deriv(k, t)` is the k-th derivative for `t <= 0`; `fourier(x)` is `int F(u) e^{-ixu} du`.
    pub fn new(
        name: impl Into<String>,
        deriv: impl Fn(usize, f64) -> f64 + Send + Sync + 'static,
        fourier: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            deriv: Arc::new(deriv),
            fourier: Arc::new(fourier),
            fourier_deriv0: None,
            frac_closed: None,
            analytic: None,
            fourier_analytic: None,
            majorant: None,
            fourier_majorant: None,
            curvature: None,
            decay: DecayCertificate {
                a: 1.0,
                alpha: std::f64::consts::FRAC_PI_2,
            },
        }
    }

    /// Closed form of `F^{(-s)}(0)`.
    pub fn frac_closed(mut self, f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        self.frac_closed = Some(Arc::new(f));
        self
    }

    /// Holomorphic extension of the even function.
    pub fn analytic(mut self, f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        self.analytic = Some(Arc::new(f));
        self
    }

    /// Holomorphic extension of the Fourier transform.
    pub fn fourier_analytic(mut self, f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        self.fourier_analytic = Some(Arc::new(f));
        self
    }

    /// Exact `hat F^{(k)}(0)`.
    pub fn fourier_deriv0(mut self, f: impl Fn(usize) -> f64 + Send + Sync + 'static) -> Self {
        self.fourier_deriv0 = Some(Arc::new(f));
        self
    }

    /// Nonincreasing bound on `|F(x)|` for `x >= 0`.
    pub fn majorant(mut self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.majorant = Some(Arc::new(f));
        self
    }

    /// Nonincreasing bound on `|hat F(x)|` for `x >= 0`.
    pub fn fourier_majorant(mut self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.fourier_majorant = Some(Arc::new(f));
        self
    }

    /// Bound on `sup |F''|`.
    pub fn curvature(mut self, c: f64) -> Self {
        self.curvature = Some(c);
        self
    }

    pub fn decay(mut self, a: f64, alpha: f64) -> Self {
        self.decay = DecayCertificate { a, alpha };
        self
    }

    pub fn build(self) -> Result<TestFunction> {
        let deriv = self.deriv.clone();
        let fourier = self.fourier.clone();
        let majorant = self
            .majorant
            .ok_or_else(|| Error::InvalidArgument(format!("test function {} needs a majorant", self.name)))?;
        let fourier_majorant = self.fourier_majorant.unwrap_or_else(|| {
            let f = fourier.clone();
            Arc::new(move |x: f64| f(x).abs())
        });
        let curvature = match self.curvature {
            Some(c) => c,
            None => {
                // sampled sup |F''| on [0, 10] with a safety factor
                let m = (0..=4000)
                    .map(|k| deriv(2, -(k as f64) * 0.0025).abs())
                    .fold(0.0, f64::max);
                1.05 * m
            }
        };
        Ok(TestFunction {
            name: self.name,
            deriv: self.deriv,
            fourier: self.fourier,
            fourier_deriv0: self.fourier_deriv0,
            frac_closed: self.frac_closed,
            analytic: self.analytic,
            fourier_analytic: self.fourier_analytic,
            majorant,
            fourier_majorant,
            curvature,
            decay: self.decay,
            moments: Arc::new(Moments::default()),
        })
    }
}

impl TestFunction {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// `F(t)` for any real t (even extension).
    pub fn value(&self, t: f64) -> f64 {
        (self.deriv)(0, -t.abs())
    }

    /// k-th derivative at any real t, from the even extension.
    pub fn deriv_fn(&self, k: usize, t: f64) -> f64 {
        if t <= 0.0 {
            (self.deriv)(k, t)
        } else if k % 2 == 0 {
            (self.deriv)(k, -t)
        } else {
            -(self.deriv)(k, -t)
        }
    }

    pub fn deriv_at_0(&self, k: usize) -> f64 {
        if k % 2 == 1 {
            0.0
        } else {
            (self.deriv)(k, 0.0)
        }
    }

    /// `hat F(x) = int F(u) e^{-ixu} du`, real and even.
    pub fn fourier(&self, x: f64) -> f64 {
        (self.fourier)(x.abs())
    }

    /// `hat F^{(k)}(0) = (-1)^{k/2} 2 int_0^inf u^k F(u) du` for even k.
    pub fn fourier_deriv_at_0(&self, k: usize) -> Result<f64> {
        if k % 2 == 1 {
            return Ok(0.0);
        }
        if let Some(f) = &self.fourier_deriv0 {
            return Ok(f(k));
        }
        let r = exp_sinh(
            |u: f64| u.powi(k as i32) * self.value(u),
            0.0,
            &DeOptions::with_tol(1e-300, 1e-14),
        )?;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        Ok(2.0 * sign * r.value)
    }

    pub fn has_frac_closed(&self) -> bool {
        self.frac_closed.is_some()
    }

    /// Closed-form `F^{(-s)}(0)` when the model provides one.
    pub fn frac_closed(&self, s: Complex64) -> Option<Complex64> {
        self.frac_closed.as_ref().map(|f| f(s))
    }

    /// `F^{(s)}(0)`: closed form if present, else quadrature.
    pub fn frac_at_0(&self, s: Complex64) -> Result<Complex64> {
        match &self.frac_closed {
            Some(f) => Ok(f(-s)),
            None => Ok(frac_deriv(self, s)?.value),
        }
    }

    pub fn analytic(&self, z: Complex64) -> Option<Complex64> {
        self.analytic.as_ref().map(|f| f(z))
    }

    pub fn fourier_analytic(&self, z: Complex64) -> Option<Complex64> {
        self.fourier_analytic.as_ref().map(|f| f(z))
    }

    pub fn majorant(&self, x: f64) -> f64 {
        (self.majorant)(x.abs())
    }

    pub fn fourier_majorant(&self, x: f64) -> f64 {
        (self.fourier_majorant)(x.abs())
    }

    /// Bound on `sup |F''|`.
    pub fn curvature(&self) -> f64 {
        self.curvature
    }

    /// Bound on `sup |hat F''|`, namely `int u^2 |F(u)| du`.
    pub fn fourier_curvature(&self) -> f64 {
        *self.moments.second_moment.get_or_init(|| {
            exp_sinh(
                |u: f64| u * u * self.value(u).abs(),
                0.0,
                &DeOptions::with_tol(1e-300, 1e-14),
            )
            .map(|r| 2.0 * r.value)
            .unwrap_or(f64::INFINITY)
        })
    }

    pub fn decay(&self) -> DecayCertificate {
        self.decay
    }

    /// `F^{(-1)}(0) = int_0^inf F(-u) du`, cached.
    pub fn integral(&self) -> Result<f64> {
        if let Some(v) = self.moments.integral.get() {
            return Ok(*v);
        }
        let r = exp_sinh(|u: f64| self.value(u), 0.0, &DeOptions::with_tol(1e-300, 1e-15))?;
        Ok(*self.moments.integral.get_or_init(|| r.value))
    }

    /// `int_0^inf F(-u) ln u du`, cached.
    pub fn log_moment(&self) -> Result<f64> {
        if let Some(v) = self.moments.log_moment.get() {
            return Ok(*v);
        }
        let r = exp_sinh(|u: f64| self.value(u) * u.ln(), 0.0, &DeOptions::with_tol(1e-15, 1e-14))?;
        Ok(*self.moments.log_moment.get_or_init(|| r.value))
    }

    /// `G(t) = F(lambda t)`.
    pub fn rescaled(&self, lambda: f64) -> Result<TestFunction> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "scale must be positive and finite, got {lambda}"
            )));
        }
        let deriv = self.deriv.clone();
        let fourier = self.fourier.clone();
        let mut b = TestFunctionBuilder::new(
            format!("{}*{}", self.name, lambda),
            move |k, t| lambda.powi(k as i32) * deriv(k, lambda * t),
            move |x| fourier(x / lambda) / lambda,
        )
        .curvature(lambda * lambda * self.curvature)
        .decay(self.decay.a, self.decay.alpha);
        let m = self.majorant.clone();
        b = b.majorant(move |x| m(lambda * x));
        let m = self.fourier_majorant.clone();
        b = b.fourier_majorant(move |x| m(x / lambda) / lambda);
        if let Some(f) = self.fourier_deriv0.clone() {
            b = b.fourier_deriv0(move |k| f(k) / lambda.powi(k as i32 + 1));
        }
        if let Some(f) = self.frac_closed.clone() {
            b = b.frac_closed(move |s| (-s * lambda.ln()).exp() * f(s));
        }
        if let Some(f) = self.analytic.clone() {
            b = b.analytic(move |z| f(z * lambda));
        }
        if let Some(f) = self.fourier_analytic.clone() {
            b = b.fourier_analytic(move |z| f(z / lambda) / lambda);
        }
        b.build()
    }

    /// Same function with the closed-form fractional derivative removed (forces quadrature).
    pub fn without_closed_form(&self) -> TestFunction {
        let mut g = self.clone();
        g.frac_closed = None;
        g.name = format!("{}-quadrature", self.name);
        g.moments = Arc::new(Moments::default());
        g
    }
}
