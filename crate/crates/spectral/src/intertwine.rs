use gibbs_models::{ConjugateFamily, LocationFamily, Model, Support};
use gibbs_specfun::quad::{expect_beta, expect_gamma, expect_normal, integrate_real_line, QuadResult};
use serde::Serialize;

use crate::catalog::{entry, moment_obstruction, Entry};
use crate::{Coordinate, SpectralError};

const QUAD_TOL: f64 = 1e-12;

/// Normalized worst deviations from the two intertwining identities
/// E_θ[p_k(X)] = η_k q_k(θ) and E_x[q_k(θ)] = μ_k p_k(x), with p_k, q_k monic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntertwiningResidual {
    pub k: u64,
    pub likelihood_side: f64,
    pub posterior_side: f64,
}

impl IntertwiningResidual {
    pub fn max(&self) -> f64 {
        self.likelihood_side.max(self.posterior_side)
    }
}

/// Monic polynomial of degree k in the state variable.
fn monic(e: &Entry, k: u64) -> Result<impl Fn(f64) -> f64 + '_, SpectralError> {
    let lead = e.basis.leading_coefficient(k)? * e.scale.powi(-(k as i32));
    let basis = &e.basis;
    Ok(move |v: f64| basis.eval(k, (v - e.shift) / e.scale).unwrap_or(f64::NAN) / lead)
}

/// Evenly spread grid points inside both supports.
pub fn intertwining_grid(model: &Model, points: usize) -> (Vec<f64>, Vec<f64>) {
    fn grid(s: Support, points: usize, center: f64, spread: f64) -> Vec<f64> {
        let t = |i: usize| if points <= 1 { 0.5 } else { i as f64 / (points - 1) as f64 };
        match s {
            Support::Integers { lo, hi } => {
                let mut v: Vec<f64> = (0..points).map(|i| (lo as f64 + t(i) * (hi - lo) as f64).round()).collect();
                v.dedup();
                v
            }
            Support::Naturals => {
                let mut v: Vec<f64> = (0..points).map(|i| (t(i) * 2.0 * spread).round()).collect();
                v.dedup();
                v
            }
            Support::Interval { lo, hi } if hi.is_finite() => (0..points).map(|i| lo + t(i) * (hi - lo)).collect(),
            Support::Interval { .. } | Support::Positive => (0..points).map(|i| spread * (0.05 + 2.0 * t(i))).collect(),
            Support::Real => (0..points).map(|i| center + spread * (4.0 * t(i) - 2.0)).collect(),
        }
    }
    let (center, spread) = match model {
        Model::Conjugate(c) => match *c.family() {
            ConjugateFamily::PoissonGamma { a, alpha } => (0.0, (a * alpha).max(1.0) * 2.0),
            ConjugateFamily::GaussianGaussian { v, tau2, sigma2 } => (v, (tau2 + sigma2).sqrt()),
            _ => (0.0, 1.0),
        },
        Model::Location(l) => match *l.family() {
            LocationFamily::Poisson { n1, mu, .. } => (0.0, (n1 * mu).max(1.0) * 2.0),
            LocationFamily::NegBinomial { n1, p, .. } => (0.0, (n1 * p / (1.0 - p)).max(1.0) * 2.0),
            LocationFamily::Normal { n1, mu, v, .. } => (n1 * mu, (n1 * v).sqrt()),
            LocationFamily::Gamma { n1, alpha, .. } => (0.0, n1 * alpha),
            _ => (0.0, 1.0),
        },
        Model::Disk(_) => (0.0, 1.0),
    };
    (grid(model.theta_support(), points, center, spread), grid(model.x_support(), points, center, spread))
}

/// Checks the two intertwining identities at degree k on the given grids.
///
/// Each side is max |expectation - coefficient × dual| over its grid divided
/// by the grid sup of |coefficient × dual|. Finite discrete expectations are
/// exact sums; the rest use the quadrature rules of the weight at hand.
pub fn intertwining_residual(
    model: &Model,
    k: u64,
    theta_grid: &[f64],
    x_grid: &[f64],
) -> Result<IntertwiningResidual, SpectralError> {
    if let Some(msg) = moment_obstruction(model) {
        return Err(SpectralError::CatalogMiss(msg));
    }
    if matches!(model, Model::Disk(_)) {
        return Err(SpectralError::Unsupported("disk: the intertwining identities are stated for exponential families".into()));
    }
    for s in [model.x_support(), model.theta_support()] {
        if let Some(c) = s.size() {
            if k >= c {
                return Err(SpectralError::InvalidInput(format!("degree {k} needs k < {c}")));
            }
        }
    }
    if k == 0 {
        return Ok(IntertwiningResidual { k, likelihood_side: 0.0, posterior_side: 0.0 });
    }
    let ex = entry(model, Coordinate::X)?;
    let et = entry(model, Coordinate::Theta)?;
    let (eta, mu) = match model {
        Model::Conjugate(c) => c.lead_coefficients(k)?,
        _ => (1.0, ex.eigenvalues.value(k)),
    };
    let p = monic(&ex, k)?;
    let q = monic(&et, k)?;

    let mut worst = 0.0f64;
    let mut sup = 0.0f64;
    for &t in theta_grid {
        let lhs = expect_given_theta(model, t, &p)?;
        let rhs = eta * q(t);
        finite(lhs, rhs, "theta", t)?;
        worst = worst.max((lhs - rhs).abs());
        sup = sup.max(rhs.abs());
    }
    let likelihood_side = if sup > 0.0 { worst / sup } else { worst };

    let mut worst = 0.0f64;
    let mut sup = 0.0f64;
    for &x in x_grid {
        let lhs = expect_given_x(model, x, &q)?;
        let rhs = mu * p(x);
        finite(lhs, rhs, "x", x)?;
        worst = worst.max((lhs - rhs).abs());
        sup = sup.max(rhs.abs());
    }
    let posterior_side = if sup > 0.0 { worst / sup } else { worst };
    Ok(IntertwiningResidual { k, likelihood_side, posterior_side })
}

fn finite(lhs: f64, rhs: f64, name: &str, at: f64) -> Result<(), SpectralError> {
    if lhs.is_finite() && rhs.is_finite() {
        Ok(())
    } else {
        Err(SpectralError::InvalidInput(format!("non-finite expectation at {name} = {at}")))
    }
}

fn quad(r: QuadResult) -> Result<f64, SpectralError> {
    if r.value.is_finite() {
        Ok(r.value)
    } else {
        Err(SpectralError::Quadrature(format!("non-finite value (error estimate {})", r.error)))
    }
}

/// Σ_{v ≥ lo} f(v) w(v) over a discrete range. Infinite ranges stop past the
/// mode once the weights fall below 1e-20 of the accumulated mass; every
/// weight used here is unimodal with a geometric or faster tail.
fn discrete_sum(lo: u64, hi: Option<u64>, w: impl Fn(f64) -> f64, f: &dyn Fn(f64) -> f64) -> f64 {
    let mut total = 0.0;
    let mut mass = 0.0;
    let mut prev = 0.0;
    let mut v = lo;
    loop {
        let p = w(v as f64);
        mass += p;
        total += p * f(v as f64);
        if hi == Some(v) || (p <= prev && p < 1e-20 * mass) || v > lo + 10_000_000 {
            return total;
        }
        prev = p;
        v += 1;
    }
}

/// E[f(X) | θ].
fn expect_given_theta(model: &Model, t: f64, f: &dyn Fn(f64) -> f64) -> Result<f64, SpectralError> {
    let like = |x: f64| model.likelihood(t, x).map(|d| d.value).unwrap_or(0.0);
    Ok(match model {
        Model::Conjugate(c) => match *c.family() {
            ConjugateFamily::BetaBinomial { n, .. } => discrete_sum(0, Some(n), like, f),
            ConjugateFamily::PoissonGamma { .. } => discrete_sum(0, None, like, f),
            ConjugateFamily::GaussianGaussian { sigma2, .. } => quad(expect_normal(f, t, sigma2, QUAD_TOL))?,
            _ => unreachable!("moment obstruction handled by the caller"),
        },
        Model::Location(l) => match *l.family() {
            LocationFamily::Binomial { n2, .. } => discrete_sum(t as u64, Some(t as u64 + n2), like, f),
            LocationFamily::Poisson { .. } | LocationFamily::NegBinomial { .. } => discrete_sum(t as u64, None, like, f),
            LocationFamily::Normal { n2, mu, v, .. } => quad(expect_normal(f, t + n2 * mu, n2 * v, QUAD_TOL))?,
            LocationFamily::Gamma { n2, alpha, .. } => quad(expect_gamma(|e| f(t + e), n2, alpha, QUAD_TOL))?,
            LocationFamily::HyperbolicCauchyLog => {
                let g = |e: f64| l.noise_density(e).map(|d| d.value).unwrap_or(0.0);
                quad(integrate_real_line(|e| g(e) * f(t + e), 0.0, 1.0, QUAD_TOL))?
            }
        },
        Model::Disk(_) => unreachable!("disk rejected by the caller"),
    })
}

/// E[f(θ) | x].
fn expect_given_x(model: &Model, x: f64, f: &dyn Fn(f64) -> f64) -> Result<f64, SpectralError> {
    let post = |t: f64| model.posterior_density(t, x).map(|d| d.value).unwrap_or(0.0);
    Ok(match model {
        Model::Conjugate(c) => match *c.family() {
            ConjugateFamily::BetaBinomial { n, alpha, beta } => {
                quad(expect_beta(f, alpha + x, beta + n as f64 - x, QUAD_TOL))?
            }
            ConjugateFamily::PoissonGamma { a, alpha } => {
                quad(expect_gamma(f, a + x, alpha / (1.0 + alpha), QUAD_TOL))?
            }
            ConjugateFamily::GaussianGaussian { sigma2, v, tau2 } => {
                let s = sigma2 + tau2;
                quad(expect_normal(f, (tau2 * x + sigma2 * v) / s, sigma2 * tau2 / s, QUAD_TOL))?
            }
            _ => unreachable!("moment obstruction handled by the caller"),
        },
        Model::Location(l) => match *l.family() {
            LocationFamily::Binomial { n1, .. } => discrete_sum(0, Some(n1.min(x as u64)), post, f),
            LocationFamily::Poisson { .. } | LocationFamily::NegBinomial { .. } => {
                discrete_sum(0, Some(x as u64), post, f)
            }
            LocationFamily::Normal { n1, n2, v, .. } => {
                let n = n1 + n2;
                quad(expect_normal(f, n1 * x / n, n1 * n2 * v / n, QUAD_TOL))?
            }
            LocationFamily::Gamma { n1, n2, .. } => quad(expect_beta(|u| f(x * u), n1, n2, QUAD_TOL))?,
            LocationFamily::HyperbolicCauchyLog => quad(integrate_real_line(|t| post(t) * f(t), 0.5 * x, 1.0, QUAD_TOL))?,
        },
        Model::Disk(_) => unreachable!("disk rejected by the caller"),
    })
}
