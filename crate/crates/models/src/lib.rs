//! Statistical models behind the two-component Gibbs samplers.
//!
//! A model is a pair (f_θ, π): a likelihood and a prior. Everything the
//! chains need is exposed through [`Model`]: the marginal m, the posterior,
//! and exact samplers for both conditionals.
//!
//! States are `f64` throughout; discrete models require integral values.

mod conjugate;
mod disk;
mod location;
pub mod natural;
mod sample;
mod spec;

pub use conjugate::{ConjugateFamily, ConjugatePair, LeadReading};
pub use disk::DiskModel;
pub use location::{LocationFamily, LocationPair};
pub use spec::ModelSpec;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("parameter {name} = {value}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },
    #[error("{what} = {value} is outside the support")]
    OutOfSupport { what: &'static str, value: f64 },
    #[error("{family}: moment of order {k} does not exist (needs {condition})")]
    MomentNonexistence { family: &'static str, k: u64, condition: String },
    #[error("{0}")]
    Unsupported(String),
    #[error("model description: {0}")]
    Spec(String),
}

/// Where a variable lives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    /// {lo, ..., hi}
    Integers { lo: u64, hi: u64 },
    /// {0, 1, 2, ...}
    Naturals,
    /// [lo, hi] or (lo, hi); endpoints are accepted.
    Interval { lo: f64, hi: f64 },
    Positive,
    Real,
}

impl Support {
    pub fn contains(&self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match *self {
            Support::Integers { lo, hi } => x.fract() == 0.0 && x >= lo as f64 && x <= hi as f64,
            Support::Naturals => x.fract() == 0.0 && x >= 0.0,
            Support::Interval { lo, hi } => x >= lo && x <= hi,
            Support::Positive => x > 0.0,
            Support::Real => true,
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, Support::Integers { .. } | Support::Naturals)
    }

    /// Number of points, when finite.
    pub fn size(&self) -> Option<u64> {
        match *self {
            Support::Integers { lo, hi } => Some(hi - lo + 1),
            _ => None,
        }
    }

    pub(crate) fn check(&self, what: &'static str, x: f64) -> Result<(), ModelError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(ModelError::OutOfSupport { what, value: x })
        }
    }
}

/// Measure a density value is taken with respect to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceMeasure {
    Counting,
    Lebesgue,
    /// The prior π(dθ); used by conjugate-pair posteriors as in π(θ|x) = f_θ(x)/m(x).
    Prior,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Density {
    pub value: f64,
    pub measure: ReferenceMeasure,
}

impl Density {
    pub(crate) fn ln(ln_value: f64, measure: ReferenceMeasure) -> Density {
        Density { value: ln_value.exp(), measure }
    }
}

/// Any model the samplers can run on.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Conjugate(ConjugatePair),
    Location(LocationPair),
    Disk(DiskModel),
}

macro_rules! dispatch {
    ($self:ident, $m:ident => $body:expr) => {
        match $self {
            Model::Conjugate($m) => $body,
            Model::Location($m) => $body,
            Model::Disk($m) => $body,
        }
    };
}

impl Model {
    pub fn from_json(text: &str) -> Result<Model, ModelError> {
        let spec: ModelSpec = serde_json::from_str(text).map_err(|e| ModelError::Spec(e.to_string()))?;
        spec.build()
    }

    /// The JSON form; `Model::from_json` of its serialization rebuilds `self`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ModelSpec::from(self)).expect("model specs serialize")
    }

    pub fn name(&self) -> &'static str {
        dispatch!(self, m => m.name())
    }

    pub fn x_support(&self) -> Support {
        dispatch!(self, m => m.x_support())
    }

    pub fn theta_support(&self) -> Support {
        dispatch!(self, m => m.theta_support())
    }

    /// f_θ(x) with respect to counting or Lebesgue measure.
    pub fn likelihood(&self, theta: f64, x: f64) -> Result<Density, ModelError> {
        dispatch!(self, m => m.likelihood(theta, x))
    }

    /// Density of the prior with respect to counting or Lebesgue measure.
    pub fn prior_density(&self, theta: f64) -> Result<Density, ModelError> {
        dispatch!(self, m => m.prior_density(theta))
    }

    pub fn marginal(&self, x: f64) -> Result<f64, ModelError> {
        Ok(self.ln_marginal(x)?.exp())
    }

    pub fn ln_marginal(&self, x: f64) -> Result<f64, ModelError> {
        dispatch!(self, m => m.ln_marginal(x))
    }

    /// π(θ|x); see [`Density::measure`] for the reference measure.
    pub fn posterior_density(&self, theta: f64, x: f64) -> Result<Density, ModelError> {
        dispatch!(self, m => m.posterior_density(theta, x))
    }

    pub fn sample_likelihood<R: Rng + ?Sized>(&self, theta: f64, rng: &mut R) -> Result<f64, ModelError> {
        dispatch!(self, m => m.sample_likelihood(theta, rng))
    }

    pub fn sample_posterior<R: Rng + ?Sized>(&self, x: f64, rng: &mut R) -> Result<f64, ModelError> {
        dispatch!(self, m => m.sample_posterior(x, rng))
    }

    /// c = #supp m(x); `None` when infinite.
    pub fn support_size(&self) -> Option<u64> {
        self.x_support().size()
    }
}

impl From<ConjugatePair> for Model {
    fn from(m: ConjugatePair) -> Self {
        Model::Conjugate(m)
    }
}

impl From<LocationPair> for Model {
    fn from(m: LocationPair) -> Self {
        Model::Location(m)
    }
}

impl From<DiskModel> for Model {
    fn from(m: DiskModel) -> Self {
        Model::Disk(m)
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<(), ModelError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter { name, value, reason: "must be positive and finite" })
    }
}

pub(crate) fn probability(name: &'static str, value: f64) -> Result<(), ModelError> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter { name, value, reason: "must lie in (0, 1)" })
    }
}
