//! Numerical integration and series acceleration.

mod accel;
mod double_exp;
mod gauss;

use std::ops::{Add, AddAssign, Mul, Sub};

use num_complex::Complex64;

pub use accel::cvz_alternating;
pub use double_exp::{exp_sinh, tanh_sinh, DeOptions};
pub use gauss::{gauss_legendre, GaussLegendre};

/// Values that quadrature rules can accumulate.
pub trait Scalar:
    Copy + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + AddAssign + std::fmt::Debug
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Integral estimate with an error estimate and evaluation count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}
