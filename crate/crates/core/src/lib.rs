//! Numerical engine for summation formulae derived from one contour integral.
//!
//! A test function `F` on `t <= 0` (extended evenly) is paired with a Dirichlet
//! kernel `K`; the integral `(1/2 pi i) int Gamma(-s) K(-s) F^{(s)}(0) y^s ds` is
//! evaluated once through residues (an asymptotic expansion) and once through
//! Mellin inversion (a summation formula).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arithmetic;
pub mod error;
pub mod expansions;
pub mod fixtures;
pub mod fractional;
pub mod mellin;
pub mod quadrature;
pub mod rh;
pub mod special;
pub mod summation;

pub use num_complex::Complex64;

pub use error::{Error, Result};
