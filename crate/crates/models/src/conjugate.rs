use std::f64::consts::PI;

use gibbs_specfun::quad::expect_beta;
use gibbs_specfun::{ln_abs_gamma_sq, ln_factorial, ln_pochhammer, lgamma, pochhammer};
use rand::Rng;

use crate::{positive, sample, Density, ModelError, ReferenceMeasure, Support};

/// The six quadratic-variance likelihoods with their conjugate priors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConjugateFamily {
    /// Binomial(n, θ) with θ ~ Beta(α, β).
    BetaBinomial { n: u64, alpha: f64, beta: f64 },
    /// Poisson(θ) with θ ~ Gamma(shape a, scale α).
    PoissonGamma { a: f64, alpha: f64 },
    /// Γ(x+r)/(Γ(r)x!) θ^x (1-θ)^r with θ ~ Beta(α, β).
    NegBinomialBeta { r: f64, alpha: f64, beta: f64 },
    /// N(θ, σ²) with θ ~ N(v, τ²).
    GaussianGaussian { sigma2: f64, v: f64, tau2: f64 },
    /// Gamma(shape a, scale θ) with θ ~ InvGamma(b, c).
    GammaGamma { a: f64, b: f64, c: f64 },
    /// Average of r hyperbolic secant variates with mean θ, skew-t prior.
    HyperbolicSkewT { r: f64, delta: f64, rho: f64 },
}

/// Which version of the posterior lead coefficients to report.
///
/// `Printed` follows the moment table literally: (β+r-k)_k for the negative
/// binomial, (a+b-k)_k for the gamma, and k!, 1/(r^k (r+ρ-k-1)_k) for the
/// hyperbolic. `Corrected` is what the posteriors actually give:
/// 1/(β+r-k)_k, 1/(a+b-k)_k, and (r)_k/r^k, r^k/(r+ρ-k-1)_k. The two agree
/// on the other families and on the hyperbolic at r = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeadReading {
    #[default]
    Corrected,
    Printed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugatePair {
    family: ConjugateFamily,
    // ln ∫ e^{ρδu} cos^{ρ-2}u du for the hyperbolic prior, zero otherwise
    prior_norm: f64,
}

impl ConjugatePair {
    pub fn new(family: ConjugateFamily) -> Result<Self, ModelError> {
        use ConjugateFamily::*;
        match family {
            BetaBinomial { n, alpha, beta } => {
                if n == 0 {
                    return Err(ModelError::InvalidParameter { name: "n", value: 0.0, reason: "must be at least 1" });
                }
                positive("alpha", alpha)?;
                positive("beta", beta)?;
            }
            PoissonGamma { a, alpha } => {
                positive("a", a)?;
                positive("alpha", alpha)?;
            }
            NegBinomialBeta { r, alpha, beta } => {
                positive("r", r)?;
                positive("alpha", alpha)?;
                positive("beta", beta)?;
            }
            GaussianGaussian { sigma2, v, tau2 } => {
                positive("sigma2", sigma2)?;
                if !v.is_finite() {
                    return Err(ModelError::InvalidParameter { name: "v", value: v, reason: "must be finite" });
                }
                positive("tau2", tau2)?;
            }
            GammaGamma { a, b, c } => {
                positive("a", a)?;
                positive("b", b)?;
                positive("c", c)?;
            }
            HyperbolicSkewT { r, delta, rho } => {
                positive("r", r)?;
                if !delta.is_finite() {
                    return Err(ModelError::InvalidParameter { name: "delta", value: delta, reason: "must be finite" });
                }
                // the prior normalizer has Γ(ρ/2 - 1/2) in the denominator
                if !(rho > 1.0 && rho.is_finite()) {
                    return Err(ModelError::InvalidParameter { name: "rho", value: rho, reason: "must exceed 1" });
                }
            }
        }
        let prior_norm = match family {
            HyperbolicSkewT { delta, rho, .. } => ln_cos_integral(rho * delta, rho - 2.0),
            _ => 0.0,
        };
        Ok(ConjugatePair { family, prior_norm })
    }

    pub fn beta_binomial(n: u64, alpha: f64, beta: f64) -> Result<Self, ModelError> {
        Self::new(ConjugateFamily::BetaBinomial { n, alpha, beta })
    }
    pub fn poisson_gamma(a: f64, alpha: f64) -> Result<Self, ModelError> {
        Self::new(ConjugateFamily::PoissonGamma { a, alpha })
    }
    pub fn neg_binomial_beta(r: f64, alpha: f64, beta: f64) -> Result<Self, ModelError> {
        Self::new(ConjugateFamily::NegBinomialBeta { r, alpha, beta })
    }
    pub fn gaussian(sigma2: f64, v: f64, tau2: f64) -> Result<Self, ModelError> {
        Self::new(ConjugateFamily::GaussianGaussian { sigma2, v, tau2 })
    }
    pub fn gamma_gamma(a: f64, b: f64, c: f64) -> Result<Self, ModelError> {
        Self::new(ConjugateFamily::GammaGamma { a, b, c })
    }
    pub fn hyperbolic(r: f64, delta: f64, rho: f64) -> Result<Self, ModelError> {
        Self::new(ConjugateFamily::HyperbolicSkewT { r, delta, rho })
    }

    pub fn family(&self) -> &ConjugateFamily {
        &self.family
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            ConjugateFamily::BetaBinomial { .. } => "beta-binomial",
            ConjugateFamily::PoissonGamma { .. } => "poisson-gamma",
            ConjugateFamily::NegBinomialBeta { .. } => "negative-binomial-beta",
            ConjugateFamily::GaussianGaussian { .. } => "gaussian",
            ConjugateFamily::GammaGamma { .. } => "gamma-gamma",
            ConjugateFamily::HyperbolicSkewT { .. } => "hyperbolic-skew-t",
        }
    }

    pub fn x_support(&self) -> Support {
        match self.family {
            ConjugateFamily::BetaBinomial { n, .. } => Support::Integers { lo: 0, hi: n },
            ConjugateFamily::PoissonGamma { .. } | ConjugateFamily::NegBinomialBeta { .. } => Support::Naturals,
            ConjugateFamily::GaussianGaussian { .. } | ConjugateFamily::HyperbolicSkewT { .. } => Support::Real,
            ConjugateFamily::GammaGamma { .. } => Support::Positive,
        }
    }

    pub fn theta_support(&self) -> Support {
        match self.family {
            ConjugateFamily::BetaBinomial { .. } => Support::Interval { lo: 0.0, hi: 1.0 },
            ConjugateFamily::NegBinomialBeta { .. } => Support::Interval { lo: 0.0, hi: 1.0 - f64::EPSILON / 2.0 },
            ConjugateFamily::PoissonGamma { .. } => Support::Interval { lo: 0.0, hi: f64::INFINITY },
            ConjugateFamily::GaussianGaussian { .. } | ConjugateFamily::HyperbolicSkewT { .. } => Support::Real,
            ConjugateFamily::GammaGamma { .. } => Support::Positive,
        }
    }

    fn x_measure(&self) -> ReferenceMeasure {
        if self.x_support().is_discrete() {
            ReferenceMeasure::Counting
        } else {
            ReferenceMeasure::Lebesgue
        }
    }

    pub fn ln_likelihood(&self, theta: f64, x: f64) -> Result<f64, ModelError> {
        self.theta_support().check("theta", theta)?;
        self.x_support().check("x", x)?;
        Ok(match self.family {
            ConjugateFamily::BetaBinomial { n, .. } => {
                let n = n as f64;
                ln_choose(n, x) + xlogy(x, theta) + xlogy(n - x, 1.0 - theta)
            }
            ConjugateFamily::PoissonGamma { .. } => -theta + xlogy(x, theta) - ln_factorial(x as u64),
            ConjugateFamily::NegBinomialBeta { r, .. } => ln_nb_mass(x, r, theta),
            ConjugateFamily::GaussianGaussian { sigma2, .. } => ln_normal(x, theta, sigma2),
            ConjugateFamily::GammaGamma { a, .. } => (a - 1.0) * x.ln() - x / theta - a * theta.ln() - lgamma(a),
            ConjugateFamily::HyperbolicSkewT { r, .. } => {
                let u = theta.atan();
                hyperbolic_ln_const(r, x)? + r * u.cos().ln() + r * x * u
            }
        })
    }

    pub fn likelihood(&self, theta: f64, x: f64) -> Result<Density, ModelError> {
        Ok(Density::ln(self.ln_likelihood(theta, x)?, self.x_measure()))
    }

    pub fn prior_density(&self, theta: f64) -> Result<Density, ModelError> {
        self.theta_support().check("theta", theta)?;
        let ln = match self.family {
            ConjugateFamily::BetaBinomial { alpha, beta, .. } | ConjugateFamily::NegBinomialBeta { alpha, beta, .. } => {
                ln_beta_density(theta, alpha, beta)
            }
            ConjugateFamily::PoissonGamma { a, alpha } => ln_gamma_density(theta, a, alpha),
            ConjugateFamily::GaussianGaussian { v, tau2, .. } => ln_normal(theta, v, tau2),
            ConjugateFamily::GammaGamma { b, c, .. } => ln_inv_gamma_density(theta, b, c),
            ConjugateFamily::HyperbolicSkewT { delta, rho, .. } => {
                let u = theta.atan();
                rho * delta * u + rho * u.cos().ln() - self.prior_norm
            }
        };
        Ok(Density::ln(ln, ReferenceMeasure::Lebesgue))
    }

    pub fn ln_marginal(&self, x: f64) -> Result<f64, ModelError> {
        self.x_support().check("x", x)?;
        Ok(match self.family {
            ConjugateFamily::BetaBinomial { n, alpha, beta } => {
                let k = x as u64;
                ln_choose(n as f64, x) + ln_pochhammer(alpha, k) + ln_pochhammer(beta, n - k)
                    - ln_pochhammer(alpha + beta, n)
            }
            ConjugateFamily::PoissonGamma { a, alpha } => {
                // negative binomial with r = a, success probability α/(α+1)
                ln_nb_mass(x, a, alpha / (alpha + 1.0))
            }
            ConjugateFamily::NegBinomialBeta { r, alpha, beta } => {
                lgamma(x + r) - lgamma(r) - ln_factorial(x as u64) + ln_beta_fn(alpha + x, beta + r)
                    - ln_beta_fn(alpha, beta)
            }
            ConjugateFamily::GaussianGaussian { sigma2, v, tau2 } => ln_normal(x, v, sigma2 + tau2),
            ConjugateFamily::GammaGamma { a, b, c } => {
                (a - 1.0) * x.ln() + b * c.ln() + lgamma(a + b) - lgamma(a) - lgamma(b) - (a + b) * (x + c).ln()
            }
            ConjugateFamily::HyperbolicSkewT { r, delta, rho } => {
                hyperbolic_ln_const(r, x)? + ln_cos_integral(rho * delta + r * x, rho + r - 2.0) - self.prior_norm
            }
        })
    }

    /// f_θ(x)/m(x), a density with respect to the prior.
    pub fn posterior_density(&self, theta: f64, x: f64) -> Result<Density, ModelError> {
        let ln = self.ln_likelihood(theta, x)? - self.ln_marginal(x)?;
        Ok(Density::ln(ln, ReferenceMeasure::Prior))
    }

    pub fn sample_likelihood<R: Rng + ?Sized>(&self, theta: f64, rng: &mut R) -> Result<f64, ModelError> {
        self.theta_support().check("theta", theta)?;
        Ok(match self.family {
            ConjugateFamily::BetaBinomial { n, .. } => sample::binomial(n, theta, rng) as f64,
            ConjugateFamily::PoissonGamma { .. } => sample::poisson(theta, rng) as f64,
            ConjugateFamily::NegBinomialBeta { r, .. } => sample::negative_binomial(r, theta, rng) as f64,
            ConjugateFamily::GaussianGaussian { sigma2, .. } => sample::normal(theta, sigma2, rng),
            ConjugateFamily::GammaGamma { a, .. } => sample::gamma(a, theta, rng),
            ConjugateFamily::HyperbolicSkewT { .. } => return Err(hyperbolic_sampling()),
        })
    }

    pub fn sample_posterior<R: Rng + ?Sized>(&self, x: f64, rng: &mut R) -> Result<f64, ModelError> {
        self.x_support().check("x", x)?;
        Ok(match self.family {
            ConjugateFamily::BetaBinomial { n, alpha, beta } => sample::beta(alpha + x, beta + n as f64 - x, rng),
            ConjugateFamily::PoissonGamma { a, alpha } => sample::gamma(a + x, alpha / (alpha + 1.0), rng),
            ConjugateFamily::NegBinomialBeta { r, alpha, beta } => {
                // keep θ < 1 so the next likelihood draw is defined
                sample::beta(alpha + x, beta + r, rng).min(1.0 - f64::EPSILON / 2.0)
            }
            ConjugateFamily::GaussianGaussian { sigma2, v, tau2 } => {
                let s = sigma2 + tau2;
                sample::normal((tau2 * x + sigma2 * v) / s, sigma2 * tau2 / s, rng)
            }
            ConjugateFamily::GammaGamma { a, b, c } => (x + c) / sample::gamma(a + b, 1.0, rng),
            ConjugateFamily::HyperbolicSkewT { .. } => return Err(hyperbolic_sampling()),
        })
    }

    /// Quadratic coefficient v₂ of σ²(m) = v₀ + v₁m + v₂m² for the likelihood in its mean parametrization.
    pub fn v2(&self) -> f64 {
        match self.family {
            ConjugateFamily::BetaBinomial { n, .. } => -1.0 / n as f64,
            ConjugateFamily::PoissonGamma { .. } | ConjugateFamily::GaussianGaussian { .. } => 0.0,
            ConjugateFamily::NegBinomialBeta { r, .. } => 1.0 / r,
            ConjugateFamily::GammaGamma { a, .. } => 1.0 / a,
            ConjugateFamily::HyperbolicSkewT { r, .. } => 1.0 / r,
        }
    }

    /// b_k = Π_{i<k} (1 + i v₂).
    pub fn morris_b(&self, k: u64) -> f64 {
        let v2 = self.v2();
        (0..k).map(|i| 1.0 + i as f64 * v2).product()
    }

    /// (η_k, μ_k) with the corrected reading.
    pub fn lead_coefficients(&self, k: u64) -> Result<(f64, f64), ModelError> {
        self.lead_coefficients_with(k, LeadReading::Corrected)
    }

    /// η_k: lead coefficient of E_θ(X^k) in the likelihood parameter;
    /// μ_k: lead coefficient of E_x(θ^k) in x. The negative binomial uses θ/(1-θ) in place of θ.
    pub fn lead_coefficients_with(&self, k: u64, reading: LeadReading) -> Result<(f64, f64), ModelError> {
        let kf = k as f64;
        let fail = |condition: String| Err(ModelError::MomentNonexistence { family: self.name(), k, condition });
        match self.family {
            ConjugateFamily::BetaBinomial { n, alpha, beta } => {
                if k > n {
                    return fail(format!("k <= n = {n}"));
                }
                Ok((pochhammer(n as f64 - kf + 1.0, k), 1.0 / pochhammer(alpha + beta + n as f64, k)))
            }
            ConjugateFamily::PoissonGamma { alpha, .. } => Ok((1.0, (alpha / (alpha + 1.0)).powi(k as i32))),
            ConjugateFamily::GaussianGaussian { sigma2, tau2, .. } => Ok((1.0, (tau2 / (tau2 + sigma2)).powi(k as i32))),
            ConjugateFamily::NegBinomialBeta { r, beta, .. } => {
                if kf >= beta + r {
                    return fail(format!("k < beta + r = {}", beta + r));
                }
                let p = pochhammer(beta + r - kf, k);
                Ok((pochhammer(r, k), if reading == LeadReading::Printed { p } else { 1.0 / p }))
            }
            ConjugateFamily::GammaGamma { a, b, .. } => {
                if kf >= a + b {
                    return fail(format!("k < a + b = {}", a + b));
                }
                let p = pochhammer(a + b - kf, k);
                Ok((pochhammer(a, k), if reading == LeadReading::Printed { p } else { 1.0 / p }))
            }
            ConjugateFamily::HyperbolicSkewT { r, rho, .. } => {
                if kf >= r + rho - 1.0 {
                    return fail(format!("k < r + rho - 1 = {}", r + rho - 1.0));
                }
                let p = pochhammer(r + rho - kf - 1.0, k);
                let rk = r.powi(k as i32);
                Ok(match reading {
                    LeadReading::Printed => ((1..=k).map(|i| i as f64).product(), 1.0 / (rk * p)),
                    LeadReading::Corrected => (pochhammer(r, k) / rk, rk / p),
                })
            }
        }
    }
}

fn hyperbolic_sampling() -> ModelError {
    ModelError::Unsupported("hyperbolic-skew-t: sampling is not implemented; use densities only".into())
}

/// ln of r 2^{r-2} |Γ(r/2 + irx/2)|² / (π Γ(r)), the density of the mean of r variates at θ = 0.
fn hyperbolic_ln_const(r: f64, x: f64) -> Result<f64, ModelError> {
    if r.fract() != 0.0 {
        return Err(ModelError::Unsupported(format!(
            "hyperbolic-skew-t: density needs integer r, got {r}"
        )));
    }
    let g = ln_abs_gamma_sq(r / 2.0, r * x / 2.0).expect("r/2 is a half-integer");
    Ok((r - 2.0) * std::f64::consts::LN_2 + g - PI.ln() + r.ln() - lgamma(r))
}

/// ln ∫_{-π/2}^{π/2} e^{bu} cos^ν u du, ν > -1.
///
/// Integer ν uses π Γ(ν+1) / (2^ν |Γ(1 + ν/2 + ib/2)|²); other ν go through
/// Beta(ν+1, ν+1) quadrature in s = u/π + 1/2.
pub(crate) fn ln_cos_integral(b: f64, nu: f64) -> f64 {
    if nu.fract() == 0.0 {
        let g = ln_abs_gamma_sq(1.0 + nu / 2.0, b / 2.0).expect("half-integer argument");
        return PI.ln() + lgamma(nu + 1.0) - nu * std::f64::consts::LN_2 - g;
    }
    let shift = b.abs() * PI / 2.0;
    let e = expect_beta(
        |s: f64| {
            let core = (PI * s).sin() / (s * (1.0 - s));
            let core = if core.is_finite() { core } else { PI };
            (b * (PI * s - PI / 2.0) - shift + nu * core.ln()).exp()
        },
        nu + 1.0,
        nu + 1.0,
        1e-13,
    );
    PI.ln() + ln_beta_fn(nu + 1.0, nu + 1.0) + e.value.ln() + shift
}

pub(crate) fn xlogy(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

pub(crate) fn ln_choose(n: f64, k: f64) -> f64 {
    gibbs_specfun::ln_binomial(n, k)
}

pub(crate) fn ln_beta_fn(a: f64, b: f64) -> f64 {
    lgamma(a) + lgamma(b) - lgamma(a + b)
}

/// Mass Γ(x+r)/(Γ(r)x!) p^x (1-p)^r.
pub(crate) fn ln_nb_mass(x: f64, r: f64, p: f64) -> f64 {
    lgamma(x + r) - lgamma(r) - ln_factorial(x as u64) + xlogy(x, p) + r * (-p).ln_1p()
}

pub(crate) fn ln_normal(x: f64, mean: f64, var: f64) -> f64 {
    -0.5 * (x - mean).powi(2) / var - 0.5 * (2.0 * PI * var).ln()
}

pub(crate) fn ln_beta_density(t: f64, a: f64, b: f64) -> f64 {
    xlogy(a - 1.0, t) + xlogy(b - 1.0, 1.0 - t) - ln_beta_fn(a, b)
}

/// Gamma(shape, scale) density.
pub(crate) fn ln_gamma_density(t: f64, shape: f64, scale: f64) -> f64 {
    xlogy(shape - 1.0, t) - t / scale - lgamma(shape) - shape * scale.ln()
}

/// Inverse gamma with density c^b t^{-(b+1)} e^{-c/t} / Γ(b).
pub(crate) fn ln_inv_gamma_density(t: f64, b: f64, c: f64) -> f64 {
    b * c.ln() - (b + 1.0) * t.ln() - c / t - lgamma(b)
}
