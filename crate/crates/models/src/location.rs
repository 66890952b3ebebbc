use std::f64::consts::{LN_2, PI};

use gibbs_specfun::{ln_factorial, lgamma, pochhammer};
use rand::Rng;

use crate::conjugate::{
    ln_beta_density, ln_choose, ln_gamma_density, ln_nb_mass, ln_normal, xlogy,
};
use crate::{positive, probability, sample, Density, ModelError, ReferenceMeasure, Support};

/// x = θ + ε with θ ~ π the sum of n₁ copies and ε ~ g the sum of n₂ copies
/// of one quadratic-variance family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocationFamily {
    /// π = Bin(n₁, p), g = Bin(n₂, p).
    Binomial { n1: u64, n2: u64, p: f64 },
    /// π = Poisson(μn₁), g = Poisson(μn₂).
    Poisson { n1: f64, n2: f64, mu: f64 },
    /// π = NB(n₁, p), g = NB(n₂, p), NB(r, p) having mass Γ(x+r)/(Γ(r)x!) p^x (1-p)^r.
    NegBinomial { n1: f64, n2: f64, p: f64 },
    /// π = N(n₁μ, n₁v), g = N(n₂μ, n₂v).
    Normal { n1: f64, n2: f64, mu: f64, v: f64 },
    /// π = Gamma(n₁, scale α), g = Gamma(n₂, scale α).
    Gamma { n1: f64, n2: f64, alpha: f64 },
    /// π = g = 1/(2 cosh(πx/2)), the law of (2/π) log|C| for C standard Cauchy.
    HyperbolicCauchyLog,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocationPair {
    family: LocationFamily,
}

impl LocationPair {
    pub fn new(family: LocationFamily) -> Result<Self, ModelError> {
        use LocationFamily::*;
        match family {
            Binomial { n1, n2, p } => {
                if n1 == 0 {
                    return Err(ModelError::InvalidParameter { name: "n1", value: 0.0, reason: "must be at least 1" });
                }
                if n2 == 0 {
                    return Err(ModelError::InvalidParameter { name: "n2", value: 0.0, reason: "must be at least 1" });
                }
                probability("p", p)?;
            }
            Poisson { n1, n2, mu } => {
                positive("n1", n1)?;
                positive("n2", n2)?;
                positive("mu", mu)?;
            }
            NegBinomial { n1, n2, p } => {
                positive("n1", n1)?;
                positive("n2", n2)?;
                probability("p", p)?;
            }
            Normal { n1, n2, mu, v } => {
                positive("n1", n1)?;
                positive("n2", n2)?;
                if !mu.is_finite() {
                    return Err(ModelError::InvalidParameter { name: "mu", value: mu, reason: "must be finite" });
                }
                positive("v", v)?;
            }
            Gamma { n1, n2, alpha } => {
                positive("n1", n1)?;
                positive("n2", n2)?;
                positive("alpha", alpha)?;
            }
            HyperbolicCauchyLog => {}
        }
        Ok(LocationPair { family })
    }

    pub fn binomial(n1: u64, n2: u64, p: f64) -> Result<Self, ModelError> {
        Self::new(LocationFamily::Binomial { n1, n2, p })
    }
    pub fn poisson(n1: f64, n2: f64, mu: f64) -> Result<Self, ModelError> {
        Self::new(LocationFamily::Poisson { n1, n2, mu })
    }
    pub fn neg_binomial(n1: f64, n2: f64, p: f64) -> Result<Self, ModelError> {
        Self::new(LocationFamily::NegBinomial { n1, n2, p })
    }
    pub fn normal(n1: f64, n2: f64, mu: f64, v: f64) -> Result<Self, ModelError> {
        Self::new(LocationFamily::Normal { n1, n2, mu, v })
    }
    pub fn gamma(n1: f64, n2: f64, alpha: f64) -> Result<Self, ModelError> {
        Self::new(LocationFamily::Gamma { n1, n2, alpha })
    }
    pub fn hyperbolic_cauchy_log() -> Self {
        LocationPair { family: LocationFamily::HyperbolicCauchyLog }
    }

    pub fn family(&self) -> &LocationFamily {
        &self.family
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            LocationFamily::Binomial { .. } => "location-binomial",
            LocationFamily::Poisson { .. } => "location-poisson",
            LocationFamily::NegBinomial { .. } => "location-negative-binomial",
            LocationFamily::Normal { .. } => "location-normal",
            LocationFamily::Gamma { .. } => "location-gamma",
            LocationFamily::HyperbolicCauchyLog => "location-hyperbolic",
        }
    }

    /// (n₁, n₂) as reals; the hyperbolic instance has n₁ = n₂ = 1.
    pub fn sizes(&self) -> (f64, f64) {
        match self.family {
            LocationFamily::Binomial { n1, n2, .. } => (n1 as f64, n2 as f64),
            LocationFamily::Poisson { n1, n2, .. }
            | LocationFamily::NegBinomial { n1, n2, .. }
            | LocationFamily::Normal { n1, n2, .. }
            | LocationFamily::Gamma { n1, n2, .. } => (n1, n2),
            LocationFamily::HyperbolicCauchyLog => (1.0, 1.0),
        }
    }

    pub fn x_support(&self) -> Support {
        match self.family {
            LocationFamily::Binomial { n1, n2, .. } => Support::Integers { lo: 0, hi: n1 + n2 },
            LocationFamily::Poisson { .. } | LocationFamily::NegBinomial { .. } => Support::Naturals,
            LocationFamily::Normal { .. } | LocationFamily::HyperbolicCauchyLog => Support::Real,
            LocationFamily::Gamma { .. } => Support::Positive,
        }
    }

    pub fn theta_support(&self) -> Support {
        match self.family {
            LocationFamily::Binomial { n1, .. } => Support::Integers { lo: 0, hi: n1 },
            _ => self.x_support(),
        }
    }

    /// Support of the noise ε.
    fn noise_support(&self) -> Support {
        match self.family {
            LocationFamily::Binomial { n2, .. } => Support::Integers { lo: 0, hi: n2 },
            LocationFamily::Gamma { .. } => Support::Interval { lo: 0.0, hi: f64::INFINITY },
            _ => self.x_support(),
        }
    }

    fn measure(&self) -> ReferenceMeasure {
        if self.x_support().is_discrete() {
            ReferenceMeasure::Counting
        } else {
            ReferenceMeasure::Lebesgue
        }
    }

    /// Log density of the sum of `size` copies, the family member π (size n₁), g (n₂) or m (n₁+n₂).
    fn ln_member(&self, size: f64, t: f64) -> f64 {
        match self.family {
            LocationFamily::Binomial { p, .. } => ln_choose(size, t) + xlogy(t, p) + xlogy(size - t, 1.0 - p),
            LocationFamily::Poisson { mu, .. } => {
                let lam = mu * size;
                -lam + xlogy(t, lam) - ln_factorial(t as u64)
            }
            LocationFamily::NegBinomial { p, .. } => ln_nb_mass(t, size, p),
            LocationFamily::Normal { mu, v, .. } => ln_normal(t, size * mu, size * v),
            LocationFamily::Gamma { alpha, .. } => ln_gamma_density(t, size, alpha),
            LocationFamily::HyperbolicCauchyLog => {
                if size == 1.0 {
                    -LN_2 - ln_cosh(PI * t / 2.0)
                } else {
                    // density of the sum of two copies: x / (2 sinh(πx/2))
                    ln_sinhc_inv(PI * t / 2.0) - PI.ln()
                }
            }
        }
    }

    /// g(ε), the noise density.
    pub fn noise_density(&self, eps: f64) -> Result<Density, ModelError> {
        if !self.noise_support().contains(eps) {
            return Ok(Density { value: 0.0, measure: self.measure() });
        }
        Ok(Density::ln(self.ln_member(self.sizes().1, eps), self.measure()))
    }

    /// f_θ(x) = g(x - θ).
    pub fn likelihood(&self, theta: f64, x: f64) -> Result<Density, ModelError> {
        self.theta_support().check("theta", theta)?;
        self.x_support().check("x", x)?;
        self.noise_density(x - theta)
    }

    pub fn prior_density(&self, theta: f64) -> Result<Density, ModelError> {
        self.theta_support().check("theta", theta)?;
        Ok(Density::ln(self.ln_member(self.sizes().0, theta), self.measure()))
    }

    /// m = π * g, the same family with size n₁ + n₂.
    pub fn ln_marginal(&self, x: f64) -> Result<f64, ModelError> {
        self.x_support().check("x", x)?;
        let (n1, n2) = self.sizes();
        Ok(self.ln_member(n1 + n2, x))
    }

    /// π(θ|x) with respect to counting or Lebesgue measure in θ.
    pub fn posterior_density(&self, theta: f64, x: f64) -> Result<Density, ModelError> {
        self.theta_support().check("theta", theta)?;
        self.x_support().check("x", x)?;
        let measure = self.measure();
        if !self.noise_support().contains(x - theta) {
            return Ok(Density { value: 0.0, measure });
        }
        let (n1, n2) = self.sizes();
        let ln = match self.family {
            LocationFamily::Binomial { .. } => {
                ln_choose(n1, theta) + ln_choose(n2, x - theta) - ln_choose(n1 + n2, x)
            }
            LocationFamily::Poisson { .. } => {
                let q = n1 / (n1 + n2);
                ln_choose(x, theta) + xlogy(theta, q) + xlogy(x - theta, 1.0 - q)
            }
            LocationFamily::NegBinomial { .. } => {
                // beta-binomial(x; n₁, n₂)
                ln_choose(x, theta) + lgamma(n1 + n2) + lgamma(theta + n1) + lgamma(x - theta + n2)
                    - lgamma(x + n1 + n2)
                    - lgamma(n1)
                    - lgamma(n2)
            }
            LocationFamily::Normal { v, .. } => {
                let n = n1 + n2;
                ln_normal(theta, n1 * x / n, n1 * n2 * v / n)
            }
            LocationFamily::Gamma { .. } => ln_beta_density(theta / x, n1, n2) - x.ln(),
            LocationFamily::HyperbolicCauchyLog => {
                self.ln_member(1.0, theta) + self.ln_member(1.0, x - theta) - self.ln_member(2.0, x)
            }
        };
        Ok(Density::ln(ln, measure))
    }

    pub fn sample_noise<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let (_, n2) = self.sizes();
        match self.family {
            LocationFamily::Binomial { n2, p, .. } => sample::binomial(n2, p, rng) as f64,
            LocationFamily::Poisson { mu, .. } => sample::poisson(mu * n2, rng) as f64,
            LocationFamily::NegBinomial { p, .. } => sample::negative_binomial(n2, p, rng) as f64,
            LocationFamily::Normal { mu, v, .. } => sample::normal(n2 * mu, n2 * v, rng),
            LocationFamily::Gamma { alpha, .. } => sample::gamma(n2, alpha, rng),
            LocationFamily::HyperbolicCauchyLog => {
                let c = (PI * (sample::uniform(rng) - 0.5)).tan();
                2.0 / PI * c.abs().ln()
            }
        }
    }

    /// x = θ + ε.
    pub fn sample_likelihood<R: Rng + ?Sized>(&self, theta: f64, rng: &mut R) -> Result<f64, ModelError> {
        self.theta_support().check("theta", theta)?;
        Ok(theta + self.sample_noise(rng))
    }

    pub fn sample_posterior<R: Rng + ?Sized>(&self, x: f64, rng: &mut R) -> Result<f64, ModelError> {
        self.x_support().check("x", x)?;
        let (n1, n2) = self.sizes();
        Ok(match self.family {
            LocationFamily::Binomial { n1, n2, .. } => sample::hypergeometric(n1 + n2, n1, x as u64, rng) as f64,
            LocationFamily::Poisson { .. } => sample::binomial(x as u64, n1 / (n1 + n2), rng) as f64,
            LocationFamily::NegBinomial { .. } => {
                let q = sample::beta(n1, n2, rng);
                sample::binomial(x as u64, q, rng) as f64
            }
            LocationFamily::Normal { v, .. } => {
                let n = n1 + n2;
                sample::normal(n1 * x / n, n1 * n2 * v / n, rng)
            }
            LocationFamily::Gamma { .. } => x * sample::beta(n1, n2, rng),
            LocationFamily::HyperbolicCauchyLog => x / 2.0 + hyperbolic_offset(x, sample::uniform(rng)),
        })
    }

    /// Coefficient c of m² in the per-copy variance function.
    pub fn quadratic_coefficient(&self) -> f64 {
        match self.family {
            LocationFamily::Binomial { .. } => -1.0,
            LocationFamily::Poisson { .. } | LocationFamily::Normal { .. } => 0.0,
            LocationFamily::NegBinomial { .. } | LocationFamily::Gamma { .. } | LocationFamily::HyperbolicCauchyLog => 1.0,
        }
    }

    /// b_k = Π_{i<k} (1 + ic/n₁)/(1 + ic/(n₁+n₂)).
    pub fn morris_b(&self, k: u64) -> f64 {
        let (n1, n2) = self.sizes();
        let c = self.quadratic_coefficient();
        (0..k).map(|i| (1.0 + i as f64 * c / n1) / (1.0 + i as f64 * c / (n1 + n2))).product()
    }

    /// (η_k, μ_k) = (1, β_k).
    pub fn lead_coefficients(&self, k: u64) -> Result<(f64, f64), ModelError> {
        let (n1, n2) = self.sizes();
        let n = n1 + n2;
        let kf = k as f64;
        let mu = match self.family {
            LocationFamily::Binomial { .. } => {
                if kf > n {
                    return Err(ModelError::MomentNonexistence {
                        family: self.name(),
                        k,
                        condition: format!("k <= n1 + n2 = {n}"),
                    });
                }
                if kf > n1 {
                    0.0
                } else {
                    (0..k).map(|i| (n1 - i as f64) / (n - i as f64)).product()
                }
            }
            LocationFamily::Poisson { .. } | LocationFamily::Normal { .. } => (n1 / n).powi(k as i32),
            LocationFamily::NegBinomial { .. } | LocationFamily::Gamma { .. } => pochhammer(n1, k) / pochhammer(n, k),
            LocationFamily::HyperbolicCauchyLog => 1.0 / (kf + 1.0),
        };
        Ok((1.0, mu))
    }
}

/// Draw s = θ - x/2 from the density ∝ 1/(cosh(πs) + cosh(πx/2)) by inverting its CDF.
///
/// With b = π|x|/2 and u = πs, ∫ du/(cosh u + cosh b) = log(cosh((u+b)/2)/cosh((u-b)/2)) / sinh b,
/// so F(u) = (y + b)/(2b) with tanh(u/2) = tanh(y/2)/tanh(b/2).
fn hyperbolic_offset(x: f64, v: f64) -> f64 {
    let b = PI * x.abs() / 2.0;
    let w = if b < 1e-6 {
        // limit b → 0: tanh(u/2) = 2v - 1
        2.0 * v - 1.0
    } else {
        let y = b * (2.0 * v - 1.0);
        (y / 2.0).tanh() / (b / 2.0).tanh()
    };
    2.0 * w.clamp(-1.0 + 1e-16, 1.0 - 1e-16).atanh() / PI
}

fn ln_cosh(y: f64) -> f64 {
    let y = y.abs();
    y + (-2.0 * y).exp().ln_1p() - LN_2
}

/// ln(y / sinh y), continuous at 0.
fn ln_sinhc_inv(y: f64) -> f64 {
    let y = y.abs();
    if y < 1e-4 {
        -y * y / 6.0
    } else {
        y.ln() - y - (-(-2.0 * y).exp()).ln_1p() + LN_2
    }
}
