//! Identities over the nontrivial zeros of zeta, conditional on the Riemann hypothesis.

mod explicit;
mod zeros;

pub use explicit::{
    c_function, fit_growth_constant, is_divergent, t_rho, theta_identity_sides, zero_side_partials, zero_sum_check,
    zeros_below, ThetaSides, DEFAULT_STRIDE, JUMP_FACTOR, JUMP_RUN, ZERO_MATCH,
};

pub use zeros::{check_zero_gap, default_zeros, load_zeros, parse_zeros, zero_avoiding_height, ZetaZero};
