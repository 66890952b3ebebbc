//! The Markov chains a two-component Gibbs sampler induces.
//!
//! From a joint law f_θ(x)π(θ) the systematic scan produces a chain on pairs;
//! tracking one coordinate gives the x-chain (stationary law m) or the
//! θ-chain (stationary law π). Both marginal chains are reversible.

mod format;
mod kernel;
mod matrix;
mod simulate;

pub use format::format_real;
pub use kernel::{branching_step, kernel_density};
pub use matrix::{exact_distribution, exact_matrix, StochasticMatrix};
pub use simulate::{simulate, simulate_with, write_traces_csv, Bin, Histogram, SimOptions, Simulation, Trace};

use gibbs_models::{Model, ModelError, ReferenceMeasure};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChainError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Unsupported(String),
    #[error("state {0} is not valid for this chain")]
    BadState(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainKind {
    /// x → θ′ ~ π(·|x) → x′ ~ f_θ′.
    XChain,
    /// θ → x ~ f_θ → θ′ ~ π(·|x).
    ThetaChain,
    /// (x, θ) → x′ ~ f_θ, then θ′ ~ π(·|x′).
    BivariateK,
    /// (x, θ) → θ′ ~ π(·|x), then x′ ~ f_θ′.
    BivariateKTilde,
    /// Refresh one coordinate chosen by a fair coin.
    RandomScan,
}

impl ChainKind {
    pub const ALL: [ChainKind; 5] = [
        ChainKind::XChain,
        ChainKind::ThetaChain,
        ChainKind::BivariateK,
        ChainKind::BivariateKTilde,
        ChainKind::RandomScan,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ChainKind::XChain => "x-chain",
            ChainKind::ThetaChain => "theta-chain",
            ChainKind::BivariateK => "bivariate-k",
            ChainKind::BivariateKTilde => "bivariate-k-tilde",
            ChainKind::RandomScan => "random-scan",
        }
    }

    pub fn parse(s: &str) -> Option<ChainKind> {
        ChainKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Whether states are (x, θ) pairs.
    pub fn is_joint(&self) -> bool {
        matches!(self, ChainKind::BivariateK | ChainKind::BivariateKTilde | ChainKind::RandomScan)
    }
}

/// A state: one coordinate for the marginal chains, a pair otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum State {
    Single(f64),
    Pair { x: f64, theta: f64 },
}

impl State {
    /// The coordinate the chain is compared against its stationary law in:
    /// θ for the θ-chain, x otherwise.
    pub fn observed(&self) -> f64 {
        match *self {
            State::Single(v) => v,
            State::Pair { x, .. } => x,
        }
    }

    /// Decimal rendering; pairs are written `x;θ`.
    pub fn render(&self) -> String {
        match *self {
            State::Single(v) => format_real(v),
            State::Pair { x, theta } => format!("{};{}", format_real(x), format_real(theta)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    model: Model,
    kind: ChainKind,
}

impl ChainSpec {
    pub fn new(model: Model, kind: ChainKind) -> Result<Self, ChainError> {
        if matches!(model, Model::Disk(_)) && !matches!(kind, ChainKind::XChain | ChainKind::RandomScan) {
            return Err(ChainError::Unsupported(format!(
                "disk: only x-chain and random-scan are defined (the two coordinates are symmetric), got {}",
                kind.name()
            )));
        }
        Ok(ChainSpec { model, kind })
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    /// Rejects states outside the chain's state space.
    pub fn check_state(&self, state: State) -> Result<(), ChainError> {
        let ok = match (self.kind, state) {
            (ChainKind::XChain, State::Single(x)) => self.model.x_support().contains(x),
            (ChainKind::ThetaChain, State::Single(t)) => self.model.theta_support().contains(t),
            (k, State::Pair { x, theta }) if k.is_joint() => {
                self.model.x_support().contains(x) && self.model.theta_support().contains(theta)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(ChainError::BadState(format!("{} for {} {}", state.render(), self.model.name(), self.kind.name())))
        }
    }

    /// One exact transition.
    pub fn step<R: Rng + ?Sized>(&self, state: State, rng: &mut R) -> Result<State, ChainError> {
        self.check_state(state)?;
        let m = &self.model;
        Ok(match (self.kind, state) {
            (ChainKind::XChain, State::Single(x)) => {
                let t = m.sample_posterior(x, rng)?;
                State::Single(m.sample_likelihood(t, rng)?)
            }
            (ChainKind::ThetaChain, State::Single(t)) => {
                let x = m.sample_likelihood(t, rng)?;
                State::Single(m.sample_posterior(x, rng)?)
            }
            (ChainKind::BivariateK, State::Pair { theta, .. }) => {
                let x = m.sample_likelihood(theta, rng)?;
                State::Pair { x, theta: m.sample_posterior(x, rng)? }
            }
            (ChainKind::BivariateKTilde, State::Pair { x, .. }) => {
                let theta = m.sample_posterior(x, rng)?;
                State::Pair { x: m.sample_likelihood(theta, rng)?, theta }
            }
            (ChainKind::RandomScan, State::Pair { x, theta }) => {
                if rng.random::<bool>() {
                    State::Pair { x: m.sample_likelihood(theta, rng)?, theta }
                } else {
                    State::Pair { x, theta: m.sample_posterior(x, rng)? }
                }
            }
            _ => unreachable!("checked by check_state"),
        })
    }

    /// Density of the stationary law of the observed coordinate: m for x, π for θ.
    pub fn stationary_density(&self, v: f64) -> Result<f64, ChainError> {
        Ok(match self.kind {
            ChainKind::ThetaChain => self.model.prior_density(v)?.value,
            _ => self.model.marginal(v)?,
        })
    }
}

/// Posterior density with respect to counting or Lebesgue measure,
/// undoing the prior-relative convention of the conjugate pairs.
pub(crate) fn posterior_plain(m: &Model, theta: f64, x: f64) -> Result<f64, ModelError> {
    let d = m.posterior_density(theta, x)?;
    Ok(match d.measure {
        ReferenceMeasure::Prior => d.value * m.prior_density(theta)?.value,
        _ => d.value,
    })
}
