use gibbs_models::{ConjugateFamily, LocationFamily, Model};
use rayon::prelude::*;

use crate::{kernel_density, ChainError, ChainKind, ChainSpec, State};

/// Stationary tail mass allowed outside a truncation window.
pub const TRUNCATION_TAIL: f64 = 1e-14;

/// A finite (or truncated) transition matrix with its stationary vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    dim: usize,
    entries: Vec<f64>,
    stationary: Vec<f64>,
    states: Vec<State>,
    truncation_bound: f64,
    reversible: bool,
}

impl StochasticMatrix {
    /// Builds a matrix from rows; `reversible` records whether detailed balance is expected.
    pub fn new(rows: Vec<Vec<f64>>, stationary: Vec<f64>, states: Vec<State>, reversible: bool) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "square matrix");
        assert_eq!(stationary.len(), dim);
        assert_eq!(states.len(), dim);
        StochasticMatrix { dim, entries: rows.concat(), stationary, states, truncation_bound: 0.0, reversible }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// m restricted to the window; for truncated chains it sums to 1 - tail.
    pub fn stationary(&self) -> &[f64] {
        &self.stationary
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn index_of(&self, s: State) -> Option<usize> {
        self.states.iter().position(|t| *t == s)
    }

    /// Twice the stationary mass cut off by the truncation window (0 for finite chains).
    pub fn truncation_bound(&self) -> f64 {
        self.truncation_bound
    }

    pub fn is_reversible(&self) -> bool {
        self.reversible
    }

    pub fn max_row_sum_error(&self) -> f64 {
        (0..self.dim).map(|i| (self.row(i).iter().sum::<f64>() - 1.0).abs()).fold(0.0, f64::max)
    }

    /// max |m_i K_ij - m_j K_ji|.
    pub fn detailed_balance_residual(&self) -> f64 {
        let m = &self.stationary;
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                worst = worst.max((m[i] * self.get(i, j) - m[j] * self.get(j, i)).abs());
            }
        }
        worst
    }

    /// max_j |(mᵀK)_j - m_j|.
    pub fn stationarity_residual(&self) -> f64 {
        let mk = self.left_apply(&self.stationary);
        mk.iter().zip(&self.stationary).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// vᵀK
    pub fn left_apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0.0 {
                continue;
            }
            for (o, k) in out.iter_mut().zip(self.row(i)) {
                *o += vi * k;
            }
        }
        out
    }

    /// K g
    pub fn apply(&self, g: &[f64]) -> Vec<f64> {
        (0..self.dim).map(|i| self.row(i).iter().zip(g).map(|(k, x)| k * x).sum()).collect()
    }
}

/// ℓ-step distribution from `start` by repeated vector-matrix products.
pub fn exact_distribution(matrix: &StochasticMatrix, start: usize, ell: usize) -> Vec<f64> {
    let mut v = vec![0.0; matrix.dim()];
    v[start] = 1.0;
    for _ in 0..ell {
        v = matrix.left_apply(&v);
    }
    v
}

/// Transition matrix of a chain with finite state space, or a truncation of
/// one whose stationary law has geometric tails.
///
/// Finite: Beta/Binomial x-chain (n+1 states), location Binomial x-chain
/// (N+1), θ-chain (n₁+1) and the three joint chains on pairs. Truncated to
/// {0..T} with stationary tail below 1e-14: Poisson/Gamma x-chain and the
/// location Poisson and negative binomial x-chains. Marginal-chain rows are
/// renormalized.
pub fn exact_matrix(chain: &ChainSpec) -> Result<StochasticMatrix, ChainError> {
    let m = chain.model();
    let unsupported = || {
        ChainError::Unsupported(format!(
            "{} {}: no finite or truncatable state space",
            m.name(),
            chain.kind().name()
        ))
    };
    match (m, chain.kind()) {
        (Model::Conjugate(c), ChainKind::XChain) => match c.family() {
            ConjugateFamily::BetaBinomial { n, .. } => marginal_matrix(chain, *n, 0.0),
            ConjugateFamily::PoissonGamma { .. } => truncated(chain),
            _ => Err(unsupported()),
        },
        (Model::Location(l), kind) => match (*l.family(), kind) {
            (LocationFamily::Binomial { n1, n2, .. }, ChainKind::XChain) => marginal_matrix(chain, n1 + n2, 0.0),
            (LocationFamily::Binomial { n1, .. }, ChainKind::ThetaChain) => marginal_matrix(chain, n1, 0.0),
            (LocationFamily::Binomial { n1, n2, .. }, k) if k.is_joint() => Ok(joint_matrix(chain, n1, n2)),
            (LocationFamily::Poisson { .. } | LocationFamily::NegBinomial { .. }, ChainKind::XChain) => truncated(chain),
            _ => Err(unsupported()),
        },
        _ => Err(unsupported()),
    }
}

fn marginal_matrix(chain: &ChainSpec, top: u64, tail: f64) -> Result<StochasticMatrix, ChainError> {
    let states: Vec<State> = (0..=top).map(|i| State::Single(i as f64)).collect();
    let rows: Result<Vec<Vec<f64>>, ChainError> = states
        .par_iter()
        .map(|&from| {
            let mut row = states.iter().map(|&to| kernel_density(chain, from, to)).collect::<Result<Vec<f64>, _>>()?;
            // also absorbs the rounding of the closed forms, which would otherwise
            // leak mass over thousands of steps
            let s: f64 = row.iter().sum();
            row.iter_mut().for_each(|k| *k /= s);
            Ok(row)
        })
        .collect();
    let stationary = states
        .iter()
        .map(|s| chain.stationary_density(s.observed()))
        .collect::<Result<Vec<f64>, _>>()?;
    let mut out = StochasticMatrix::new(rows?, stationary, states, true);
    out.truncation_bound = 2.0 * tail;
    Ok(out)
}

/// Cut at the first T whose stationary tail is below the threshold.
fn truncated(chain: &ChainSpec) -> Result<StochasticMatrix, ChainError> {
    let mut masses = Vec::new();
    let mut head = 0.0;
    // walk past the bulk until the mass is negligible on its own
    for x in 0.. {
        let p = chain.stationary_density(x as f64)?;
        masses.push(p);
        head += p;
        if p < 1e-30 && head > 0.5 {
            break;
        }
        if x > 5_000_000 {
            return Err(ChainError::Unsupported("stationary law too spread out to truncate".into()));
        }
    }
    // tails summed from the far end, where the terms are smallest
    let mut tail = 0.0;
    let mut top = masses.len() - 1;
    for (x, p) in masses.iter().enumerate().rev() {
        if tail + p >= TRUNCATION_TAIL {
            top = x;
            break;
        }
        tail += p;
    }
    marginal_matrix(chain, top as u64, tail)
}

fn joint_matrix(chain: &ChainSpec, n1: u64, n2: u64) -> StochasticMatrix {
    let m = chain.model();
    let mut states = Vec::new();
    for x in 0..=n1 + n2 {
        for t in x.saturating_sub(n2)..=x.min(n1) {
            states.push(State::Pair { x: x as f64, theta: t as f64 });
        }
    }
    let post = |t: f64, x: f64| m.posterior_density(t, x).map(|d| d.value).unwrap_or(0.0);
    let like = |t: f64, x: f64| m.likelihood(t, x).map(|d| d.value).unwrap_or(0.0);
    let kind = chain.kind();
    let rows: Vec<Vec<f64>> = states
        .par_iter()
        .map(|&from| {
            let State::Pair { x, theta } = from else { unreachable!() };
            states
                .iter()
                .map(|&to| {
                    let State::Pair { x: x2, theta: t2 } = to else { unreachable!() };
                    match kind {
                        ChainKind::BivariateKTilde => post(t2, x) * like(t2, x2),
                        ChainKind::BivariateK => like(theta, x2) * post(t2, x2),
                        _ => {
                            let refresh_x = if t2 == theta { like(theta, x2) } else { 0.0 };
                            let refresh_t = if x2 == x { post(t2, x) } else { 0.0 };
                            0.5 * (refresh_x + refresh_t)
                        }
                    }
                })
                .collect()
        })
        .collect();
    let stationary = states
        .iter()
        .map(|s| {
            let State::Pair { x, theta } = *s else { unreachable!() };
            m.prior_density(theta).map(|d| d.value).unwrap_or(0.0) * like(theta, x)
        })
        .collect();
    StochasticMatrix::new(rows, stationary, states, kind == ChainKind::RandomScan)
}
