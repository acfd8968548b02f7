//! Gamma, zeta, L(s, chi_4), completed functions and Bessel functions.

mod bessel;
mod gamma;
mod zeta;

pub use bessel::{bessel_j0, bessel_k0, bessel_y0, EULER_GAMMA};
pub use gamma::{
    cos_pi, cos_pi_real, gamma, gamma_real, ln_cos_pi, ln_gamma, ln_sin_pi, rgamma, sin_pi, sin_pi_real,
    LANCZOS_COEFFS, LANCZOS_G, POLE_RADIUS,
};
pub use zeta::{dirichlet_l4, xi, xi4, zeta, zeta_minus_one, EvalOptions};

use num_complex::Complex64;

use crate::error::Result;

/// zeta at a real point with default options.
pub fn zeta_real(x: f64) -> Result<f64> {
    zeta(Complex64::new(x, 0.0), &EvalOptions::default()).map(|z| z.re)
}
