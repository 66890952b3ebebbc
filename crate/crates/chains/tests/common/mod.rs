#![allow(dead_code)]

use gibbs_chains::{ChainKind, ChainSpec};
use gibbs_models::{ConjugatePair, LocationPair, Model};

pub fn spec(model: impl Into<Model>, kind: ChainKind) -> ChainSpec {
    ChainSpec::new(model.into(), kind).unwrap()
}

pub fn bb(n: u64, a: f64, b: f64) -> ConjugatePair {
    ConjugatePair::beta_binomial(n, a, b).unwrap()
}

pub fn pg(a: f64, alpha: f64) -> ConjugatePair {
    ConjugatePair::poisson_gamma(a, alpha).unwrap()
}

pub fn loc_bin(n1: u64, n2: u64, p: f64) -> LocationPair {
    LocationPair::binomial(n1, n2, p).unwrap()
}

/// Upper 1e-4 quantile of χ²(df), Wilson–Hilferty.
pub fn chi2_critical(df: usize) -> f64 {
    let d = df.max(1) as f64;
    let z = 3.719;
    d * (1.0 - 2.0 / (9.0 * d) + z * (2.0 / (9.0 * d)).sqrt()).powi(3)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

pub fn binom(n: u64, k: u64) -> f64 {
    (0..k).map(|i| (n - i) as f64 / (i + 1) as f64).product()
}
