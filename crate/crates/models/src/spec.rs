use serde::{Deserialize, Serialize};

use crate::{ConjugatePair, DiskModel, LocationPair, Model, ModelError};

/// JSON form `{"model": <name>, "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", content = "params", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelSpec {
    BetaBinomial(BetaBinomialParams),
    PoissonGamma(PoissonGammaParams),
    NegativeBinomialBeta(NegBinomialBetaParams),
    Gaussian(GaussianParams),
    GammaGamma(GammaGammaParams),
    HyperbolicSkewT(HyperbolicParams),
    LocationBinomial(LocBinomialParams),
    LocationPoisson(LocPoissonParams),
    LocationNegativeBinomial(LocNegBinomialParams),
    LocationNormal(LocNormalParams),
    LocationGamma(LocGammaParams),
    LocationHyperbolic(Empty),
    Disk(Empty),
}

macro_rules! params {
    ($name:ident { $($field:ident : $ty:ty),* }) => {
        #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
        #[serde(deny_unknown_fields)]
        pub struct $name { $(pub $field: $ty),* }
    };
}

params!(BetaBinomialParams { n: u64, alpha: f64, beta: f64 });
params!(PoissonGammaParams { a: f64, alpha: f64 });
params!(NegBinomialBetaParams { r: f64, alpha: f64, beta: f64 });
params!(GaussianParams { sigma2: f64, v: f64, tau2: f64 });
params!(GammaGammaParams { a: f64, b: f64, c: f64 });
params!(HyperbolicParams { r: f64, delta: f64, rho: f64 });
params!(LocBinomialParams { n1: u64, n2: u64, p: f64 });
params!(LocPoissonParams { n1: f64, n2: f64, mu: f64 });
params!(LocNegBinomialParams { n1: f64, n2: f64, p: f64 });
params!(LocNormalParams { n1: f64, n2: f64, mu: f64, v: f64 });
params!(LocGammaParams { n1: f64, n2: f64, alpha: f64 });
params!(Empty {});

impl ModelSpec {
    /// Validates parameters and builds the model; the error names the first bad field.
    pub fn build(&self) -> Result<Model, ModelError> {
        use ModelSpec::*;
        Ok(match self {
            BetaBinomial(p) => ConjugatePair::beta_binomial(p.n, p.alpha, p.beta)?.into(),
            PoissonGamma(p) => ConjugatePair::poisson_gamma(p.a, p.alpha)?.into(),
            NegativeBinomialBeta(p) => ConjugatePair::neg_binomial_beta(p.r, p.alpha, p.beta)?.into(),
            Gaussian(p) => ConjugatePair::gaussian(p.sigma2, p.v, p.tau2)?.into(),
            GammaGamma(p) => ConjugatePair::gamma_gamma(p.a, p.b, p.c)?.into(),
            HyperbolicSkewT(p) => ConjugatePair::hyperbolic(p.r, p.delta, p.rho)?.into(),
            LocationBinomial(p) => LocationPair::binomial(p.n1, p.n2, p.p)?.into(),
            LocationPoisson(p) => LocationPair::poisson(p.n1, p.n2, p.mu)?.into(),
            LocationNegativeBinomial(p) => LocationPair::neg_binomial(p.n1, p.n2, p.p)?.into(),
            LocationNormal(p) => LocationPair::normal(p.n1, p.n2, p.mu, p.v)?.into(),
            LocationGamma(p) => LocationPair::gamma(p.n1, p.n2, p.alpha)?.into(),
            LocationHyperbolic(_) => LocationPair::hyperbolic_cauchy_log().into(),
            Disk(_) => DiskModel.into(),
        })
    }
}

impl From<&Model> for ModelSpec {
    fn from(m: &Model) -> ModelSpec {
        use crate::{ConjugateFamily as C, LocationFamily as L};
        use ModelSpec::*;
        match m {
            Model::Conjugate(c) => match *c.family() {
                C::BetaBinomial { n, alpha, beta } => BetaBinomial(BetaBinomialParams { n, alpha, beta }),
                C::PoissonGamma { a, alpha } => PoissonGamma(PoissonGammaParams { a, alpha }),
                C::NegBinomialBeta { r, alpha, beta } => NegativeBinomialBeta(NegBinomialBetaParams { r, alpha, beta }),
                C::GaussianGaussian { sigma2, v, tau2 } => Gaussian(GaussianParams { sigma2, v, tau2 }),
                C::GammaGamma { a, b, c } => GammaGamma(GammaGammaParams { a, b, c }),
                C::HyperbolicSkewT { r, delta, rho } => HyperbolicSkewT(HyperbolicParams { r, delta, rho }),
            },
            Model::Location(l) => match *l.family() {
                L::Binomial { n1, n2, p } => LocationBinomial(LocBinomialParams { n1, n2, p }),
                L::Poisson { n1, n2, mu } => LocationPoisson(LocPoissonParams { n1, n2, mu }),
                L::NegBinomial { n1, n2, p } => LocationNegativeBinomial(LocNegBinomialParams { n1, n2, p }),
                L::Normal { n1, n2, mu, v } => LocationNormal(LocNormalParams { n1, n2, mu, v }),
                L::Gamma { n1, n2, alpha } => LocationGamma(LocGammaParams { n1, n2, alpha }),
                L::HyperbolicCauchyLog => LocationHyperbolic(Empty {}),
            },
            Model::Disk(_) => Disk(Empty {}),
        }
    }
}
