//! Special functions used by the spectral engine.
//!
//! Everything here works in `f64`. Gamma ratios go through [`ln_gamma`] so that
//! large arguments never overflow before they cancel.

mod bessel;
mod gamma;
mod hyper;
pub mod quad;
mod zeta;

pub use bessel::{bessel_i, ln_bessel_i, ln_bessel_series};
pub use gamma::{
    ln_abs_gamma_sq, ln_binomial, ln_factorial, ln_gamma, ln_pochhammer, log_binomial, lgamma,
    pochhammer,
};
pub use hyper::{hypergeometric, HyperSeriesSpec};
pub use zeta::{hurwitz_zeta, ZetaValue};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("{func}: argument {x} is outside the domain")]
    Domain { func: &'static str, x: f64 },
    #[error("denominator parameter {b} hits a pole before the series terminates")]
    DenominatorPole { b: f64 },
    #[error("{p}F{q} series diverges at z = {z}")]
    Divergent { p: usize, q: usize, z: f64 },
    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },
    #[error("{func} overflows f64 at argument {x}")]
    Overflow { func: &'static str, x: f64 },
}

/// Returns `Some(m)` when `a == -m` for a non-negative integer `m`.
pub fn nonpositive_integer(a: f64) -> Option<u64> {
    if a <= 0.0 && a.fract() == 0.0 && a > -1e15 {
        Some((-a) as u64)
    } else {
        None
    }
}
