//! The six quadratic-variance families in their natural parametrization:
//! M(θ) = log ∫ e^{xθ} μ(dx), m = M′, σ² = M″ = v₀ + v₁m + v₂m².

use crate::ModelError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NefFamily {
    /// μ = binomial coefficients C(n, x).
    Binomial { n: f64 },
    Poisson,
    /// μ(x) = Γ(x+r)/(Γ(r)x!).
    NegativeBinomial { r: f64 },
    /// μ = N(0, σ²).
    Normal { sigma2: f64 },
    /// μ(dx) = x^{r-1}/Γ(r) dx.
    Gamma { r: f64 },
    /// Convolution power r of the hyperbolic secant law, M = -r log cos θ.
    Hyperbolic { r: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaturalMoments {
    /// M(θ)
    pub cumulant: f64,
    /// m(θ) = M′(θ)
    pub mean: f64,
    /// σ²(θ) = M″(θ)
    pub variance: f64,
}

impl NefFamily {
    /// Natural parameter range (open interval).
    pub fn domain(&self) -> (f64, f64) {
        match self {
            NefFamily::NegativeBinomial { .. } | NefFamily::Gamma { .. } => (f64::NEG_INFINITY, 0.0),
            NefFamily::Hyperbolic { .. } => (-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// (v₀, v₁, v₂).
    pub fn variance_coefficients(&self) -> (f64, f64, f64) {
        match *self {
            NefFamily::Binomial { n } => (0.0, 1.0, -1.0 / n),
            NefFamily::Poisson => (0.0, 1.0, 0.0),
            NefFamily::NegativeBinomial { r } => (0.0, 1.0, 1.0 / r),
            NefFamily::Normal { sigma2 } => (sigma2, 0.0, 0.0),
            NefFamily::Gamma { r } => (0.0, 0.0, 1.0 / r),
            NefFamily::Hyperbolic { r } => (r, 0.0, 1.0 / r),
        }
    }
}

pub fn natural_parametrization(family: NefFamily, theta: f64) -> Result<NaturalMoments, ModelError> {
    let (lo, hi) = family.domain();
    if !(theta > lo && theta < hi) {
        return Err(ModelError::OutOfSupport { what: "theta", value: theta });
    }
    let scale = match family {
        NefFamily::Binomial { n } => n,
        NefFamily::NegativeBinomial { r } | NefFamily::Gamma { r } | NefFamily::Hyperbolic { r } => r,
        NefFamily::Normal { sigma2 } => sigma2,
        NefFamily::Poisson => 1.0,
    };
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(ModelError::InvalidParameter { name: "r", value: scale, reason: "must be positive and finite" });
    }
    let e = theta.exp();
    Ok(match family {
        NefFamily::Binomial { n } => {
            let p = 1.0 / (1.0 + (-theta).exp());
            NaturalMoments { cumulant: n * theta.exp().ln_1p(), mean: n * p, variance: n * p * (1.0 - p) }
        }
        NefFamily::Poisson => NaturalMoments { cumulant: e, mean: e, variance: e },
        NefFamily::NegativeBinomial { r } => {
            let d = -theta.exp_m1();
            NaturalMoments { cumulant: -r * d.ln(), mean: r * e / d, variance: r * e / (d * d) }
        }
        NefFamily::Normal { sigma2 } => {
            NaturalMoments { cumulant: sigma2 * theta * theta / 2.0, mean: sigma2 * theta, variance: sigma2 }
        }
        NefFamily::Gamma { r } => {
            NaturalMoments { cumulant: -r * (-theta).ln(), mean: -r / theta, variance: r / (theta * theta) }
        }
        NefFamily::Hyperbolic { r } => {
            let c = theta.cos();
            NaturalMoments { cumulant: -r * c.ln(), mean: r * theta.tan(), variance: r / (c * c) }
        }
    })
}
