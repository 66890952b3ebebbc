use std::f64::consts::PI;

use gibbs_models::{ConjugateFamily, LocationFamily, Model};
use gibbs_specfun::{lgamma, ln_bessel_series, ln_binomial};
use rand::Rng;
use rand_distr::{Distribution, Gamma, Geometric, Poisson};

use crate::{posterior_plain, ChainError, ChainKind, ChainSpec, State};

/// Transition density k(from, to) with respect to counting measure (discrete
/// coordinates) or Lebesgue measure (continuous ones).
///
/// Marginal chains use closed forms where they exist; the two systematic
/// scans are products of the conditionals. The random scan has no density
/// (it keeps one coordinate fixed) and is rejected.
pub fn kernel_density(chain: &ChainSpec, from: State, to: State) -> Result<f64, ChainError> {
    chain.check_state(from)?;
    chain.check_state(to)?;
    let m = chain.model();
    match (chain.kind(), from, to) {
        (ChainKind::XChain, State::Single(x), State::Single(y)) => x_kernel(m, x, y),
        (ChainKind::ThetaChain, State::Single(t), State::Single(s)) => theta_kernel(m, t, s),
        (ChainKind::BivariateKTilde, State::Pair { x, .. }, State::Pair { x: x2, theta: t2 }) => {
            Ok(posterior_plain(m, t2, x)? * m.likelihood(t2, x2)?.value)
        }
        (ChainKind::BivariateK, State::Pair { theta, .. }, State::Pair { x: x2, theta: t2 }) => {
            Ok(m.likelihood(theta, x2)?.value * posterior_plain(m, t2, x2)?)
        }
        (kind, _, _) => Err(unsupported(m, kind)),
    }
}

fn unsupported(m: &Model, kind: ChainKind) -> ChainError {
    ChainError::Unsupported(format!("{} {}: no closed-form transition density", m.name(), kind.name()))
}

fn ln_normal(x: f64, mean: f64, var: f64) -> f64 {
    -0.5 * (2.0 * PI * var).ln() - (x - mean) * (x - mean) / (2.0 * var)
}

fn ln_beta_fn(a: f64, b: f64) -> f64 {
    lgamma(a) + lgamma(b) - lgamma(a + b)
}

/// Γ(x+r)/(Γ(r)x!) p^x (1-p)^r
fn ln_nb(x: f64, r: f64, p: f64) -> f64 {
    lgamma(x + r) - lgamma(r) - lgamma(x + 1.0) + x * p.ln() + r * (1.0 - p).ln()
}

fn log_sum_exp(terms: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = terms.filter(|t| *t > f64::NEG_INFINITY).collect();
    let top = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + v.iter().map(|t| (t - top).exp()).sum::<f64>().ln()
}

fn x_kernel(m: &Model, x: f64, y: f64) -> Result<f64, ChainError> {
    match m {
        Model::Conjugate(c) => match *c.family() {
            ConjugateFamily::BetaBinomial { n, alpha, beta } => {
                let n = n as f64;
                let ln = ln_binomial(n, y) + ln_beta_fn(alpha + x + y, beta + 2.0 * n - x - y)
                    - ln_beta_fn(alpha + x, beta + n - x);
                Ok(ln.exp())
            }
            // θ′ ~ Gamma(a+x, α/(α+1)) mixed over Poisson: NB(a+x, α/(2α+1))
            ConjugateFamily::PoissonGamma { a, alpha } => Ok(ln_nb(y, a + x, alpha / (2.0 * alpha + 1.0)).exp()),
            ConjugateFamily::GaussianGaussian { sigma2, v, tau2 } => {
                let s = sigma2 + tau2;
                let a = tau2 / s;
                Ok(ln_normal(y, a * x + (1.0 - a) * v, sigma2 * (sigma2 + 2.0 * tau2) / s).exp())
            }
            _ => Err(unsupported(m, ChainKind::XChain)),
        },
        Model::Location(l) => match *l.family() {
            LocationFamily::Binomial { .. } | LocationFamily::Poisson { .. } | LocationFamily::NegBinomial { .. } => {
                // Σ_θ π(θ|x) g(y - θ); θ ≤ min(x, y) since the noise is nonnegative
                let hi = x.min(y) as u64;
                let ln = log_sum_exp((0..=hi).map(|t| {
                    let t = t as f64;
                    match (m.posterior_density(t, x), l.noise_density(y - t)) {
                        (Ok(p), Ok(g)) => p.value.ln() + g.value.ln(),
                        _ => f64::NEG_INFINITY,
                    }
                }));
                Ok(ln.exp())
            }
            LocationFamily::Normal { n1, n2, mu, v } => {
                let n = n1 + n2;
                Ok(ln_normal(y, n1 * x / n + n2 * mu, n1 * n2 * v / n + n2 * v).exp())
            }
            _ => Err(unsupported(m, ChainKind::XChain)),
        },
        Model::Disk(_) => Err(unsupported(m, ChainKind::XChain)),
    }
}

fn theta_kernel(m: &Model, t: f64, s: f64) -> Result<f64, ChainError> {
    match m {
        Model::Conjugate(c) => match *c.family() {
            ConjugateFamily::BetaBinomial { n, .. } => {
                let ln = log_sum_exp((0..=n).map(|x| {
                    let x = x as f64;
                    m.likelihood(t, x).map(|d| d.value.ln()).unwrap_or(f64::NEG_INFINITY)
                        + posterior_plain(m, s, x).map(f64::ln).unwrap_or(f64::NEG_INFINITY)
                }));
                Ok(ln.exp())
            }
            ConjugateFamily::PoissonGamma { a, alpha } => Ok(poisson_gamma_theta_kernel(a, alpha, t, s)),
            ConjugateFamily::GaussianGaussian { sigma2, v, tau2 } => {
                let sum = sigma2 + tau2;
                let a = tau2 / sum;
                let var = sigma2 * tau2 * (sigma2 + 2.0 * tau2) / (sum * sum);
                Ok(ln_normal(s, a * t + (1.0 - a) * v, var).exp())
            }
            _ => Err(unsupported(m, ChainKind::ThetaChain)),
        },
        Model::Location(l) => match *l.family() {
            LocationFamily::Binomial { n2, .. } => {
                // x = θ + ε with ε ∈ 0..=n₂
                let ln = log_sum_exp((0..=n2).map(|e| {
                    let x = t + e as f64;
                    l.noise_density(e as f64).map(|d| d.value.ln()).unwrap_or(f64::NEG_INFINITY)
                        + m.posterior_density(s, x).map(|d| d.value.ln()).unwrap_or(f64::NEG_INFINITY)
                }));
                Ok(ln.exp())
            }
            LocationFamily::Normal { n1, n2, mu, v } => {
                let n = n1 + n2;
                let q = n1 / n;
                Ok(ln_normal(s, q * (t + n2 * mu), q * q * n2 * v + n1 * n2 * v / n).exp())
            }
            _ => Err(unsupported(m, ChainKind::ThetaChain)),
        },
        Model::Disk(_) => Err(unsupported(m, ChainKind::ThetaChain)),
    }
}

/// Σ_x Poisson(x; θ) Gamma(θ′; a+x, scale σ) with σ = α/(α+1):
/// e^{-θ-θ′/σ} σ^{-a} θ′^{a-1} z^{-(a-1)/2} I_{a-1}(2√z), z = θθ′/σ.
fn poisson_gamma_theta_kernel(a: f64, alpha: f64, t: f64, s: f64) -> f64 {
    let sigma = alpha / (alpha + 1.0);
    if s <= 0.0 {
        return if a < 1.0 { f64::INFINITY } else if a == 1.0 { (-t).exp() / sigma } else { 0.0 };
    }
    let base = -t - s / sigma - a * sigma.ln() + (a - 1.0) * s.ln();
    let z = t * s / sigma;
    // z^{-(a-1)/2} I_{a-1}(2√z) = Σ_j z^j / (j! Γ(a+j)), valid for every a > 0
    let series = ln_bessel_series(a, z).expect("finite Bessel argument");
    (base + series).exp()
}

/// One Poisson/Gamma x-chain step written as a branching process with
/// immigration: each of the x individuals leaves a geometric number of
/// offspring and NB(a, p) immigrants arrive, p = α/(2α+1).
pub fn branching_step<R: Rng + ?Sized>(a: f64, alpha: f64, x: u64, rng: &mut R) -> u64 {
    let p = alpha / (2.0 * alpha + 1.0);
    let offspring = Geometric::new(1.0 - p).expect("p < 1");
    let born: u64 = (0..x).map(|_| offspring.sample(rng)).sum();
    let lambda = Gamma::new(a, p / (1.0 - p)).expect("a > 0").sample(rng);
    let immigrants = if lambda > 0.0 { Poisson::new(lambda).expect("finite mean").sample(rng) as u64 } else { 0 };
    born + immigrants
}
