//! Thin wrappers over `rand_distr` that accept the degenerate parameter
//! values the Gibbs steps can produce (p = 0, λ = 0, ...).

use rand::Rng;
use rand_distr::{Beta, Binomial, Distribution, Gamma, Hypergeometric, Normal, Poisson};

pub(crate) fn beta<R: Rng + ?Sized>(a: f64, b: f64, rng: &mut R) -> f64 {
    Beta::new(a, b).expect("validated beta parameters").sample(rng)
}

/// Gamma with the given shape and scale.
pub(crate) fn gamma<R: Rng + ?Sized>(shape: f64, scale: f64, rng: &mut R) -> f64 {
    Gamma::new(shape, scale).expect("validated gamma parameters").sample(rng)
}

pub(crate) fn normal<R: Rng + ?Sized>(mean: f64, var: f64, rng: &mut R) -> f64 {
    Normal::new(mean, var.sqrt()).expect("validated normal parameters").sample(rng)
}

pub(crate) fn binomial<R: Rng + ?Sized>(n: u64, p: f64, rng: &mut R) -> u64 {
    Binomial::new(n, p.clamp(0.0, 1.0)).expect("binomial probability in [0, 1]").sample(rng)
}

pub(crate) fn poisson<R: Rng + ?Sized>(lambda: f64, rng: &mut R) -> u64 {
    if lambda <= 0.0 {
        return 0;
    }
    Poisson::new(lambda).expect("finite poisson mean").sample(rng) as u64
}

/// Mass Γ(x+r)/(Γ(r)x!) p^x (1-p)^r, drawn as a gamma mixture of Poissons.
pub(crate) fn negative_binomial<R: Rng + ?Sized>(r: f64, p: f64, rng: &mut R) -> u64 {
    if p <= 0.0 {
        return 0;
    }
    let lambda = gamma(r, p / (1.0 - p), rng);
    poisson(lambda, rng)
}

/// Number of marked items in a sample of `draws` from `total` items of which `marked` are marked.
pub(crate) fn hypergeometric<R: Rng + ?Sized>(total: u64, marked: u64, draws: u64, rng: &mut R) -> u64 {
    Hypergeometric::new(total, marked, draws).expect("draws within population").sample(rng)
}

pub(crate) fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random::<f64>()
}
