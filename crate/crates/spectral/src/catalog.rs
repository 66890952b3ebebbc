use std::f64::consts::FRAC_PI_2;

use gibbs_chains::{ChainKind, ChainSpec, State};
use gibbs_models::{ConjugateFamily, LocationFamily, Model, ModelError, Support};
use gibbs_orthopoly::PolyBasis;
use gibbs_specfun::ln_pochhammer;
use serde::Serialize;

use crate::SpectralError;

/// Which coordinate a marginal chain moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coordinate {
    X,
    Theta,
}

/// Closed-form eigenvalue sequences β_j of the cataloged chains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum Eigenvalues {
    /// n(n-1)···(n-j+1) / (s)_j, zero past n.
    FallingOverRising { n: u64, s: f64 },
    /// n₁(n₁-1)···(n₁-j+1) / (N(N-1)···(N-j+1)), zero past n₁.
    FallingOverFalling { n1: u64, n: u64 },
    /// b^j.
    Geometric { b: f64 },
    /// (n₁)_j / (N)_j.
    RisingOverRising { n1: f64, n: f64 },
    /// 1/(j+1).
    Harmonic,
    /// 1/(j+1)² at even j, 0 at odd j.
    EvenSquares,
}

impl Eigenvalues {
    /// ln β_j; -∞ where β_j = 0.
    pub fn ln_value(&self, j: u64) -> f64 {
        if j == 0 {
            return 0.0;
        }
        match *self {
            Eigenvalues::FallingOverRising { n, s } => {
                if j > n {
                    f64::NEG_INFINITY
                } else {
                    ln_pochhammer((n - j + 1) as f64, j) - ln_pochhammer(s, j)
                }
            }
            Eigenvalues::FallingOverFalling { n1, n } => {
                if j > n1 {
                    f64::NEG_INFINITY
                } else {
                    ln_pochhammer((n1 - j + 1) as f64, j) - ln_pochhammer((n - j + 1) as f64, j)
                }
            }
            Eigenvalues::Geometric { b } => j as f64 * b.ln(),
            Eigenvalues::RisingOverRising { n1, n } => ln_pochhammer(n1, j) - ln_pochhammer(n, j),
            Eigenvalues::Harmonic => -((j + 1) as f64).ln(),
            Eigenvalues::EvenSquares => {
                if j % 2 == 1 {
                    f64::NEG_INFINITY
                } else {
                    -2.0 * ((j + 1) as f64).ln()
                }
            }
        }
    }

    pub fn value(&self, j: u64) -> f64 {
        match *self {
            // exact rational products for the finite catalogs
            Eigenvalues::FallingOverRising { n, s } if j <= 64 => {
                (0..j).map(|i| (n as f64 - i as f64) / (s + i as f64)).product()
            }
            Eigenvalues::FallingOverFalling { n1, n } if j <= 64 => {
                (0..j).map(|i| (n1 as f64 - i as f64).max(0.0) / (n as f64 - i as f64)).product()
            }
            Eigenvalues::Geometric { b } if j <= i32::MAX as u64 => b.powi(j as i32),
            Eigenvalues::EvenSquares if j % 2 == 1 => 0.0,
            Eigenvalues::EvenSquares => 1.0 / ((j + 1) as f64 * (j + 1) as f64),
            _ => self.ln_value(j).exp(),
        }
    }

    /// Last degree whose eigenvalue can be nonzero.
    pub fn last_nonzero(&self) -> Option<u64> {
        match *self {
            Eigenvalues::FallingOverRising { n, .. } => Some(n),
            Eigenvalues::FallingOverFalling { n1, .. } => Some(n1),
            _ => None,
        }
    }

    /// Smallest degree j ≥ 1 with β_j > 0.
    pub fn first_active(&self) -> u64 {
        match self {
            Eigenvalues::EvenSquares => 2,
            _ => 1,
        }
    }
}

/// Eigenvalues and eigenfunctions of one marginal chain.
///
/// Eigenfunctions are P_j((v - shift)/scale) for the polynomial basis, and
/// z_j = 1/E[P_j²] normalizes them in L²(stationary law). Joint chains are
/// described through the marginal that governs them: K̃ through the x-chain,
/// K through the θ-chain.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomp {
    chain: ChainSpec,
    coordinate: Coordinate,
    eigenvalues: Eigenvalues,
    basis: PolyBasis,
    shift: f64,
    scale: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Entry {
    pub eigenvalues: Eigenvalues,
    pub basis: PolyBasis,
    pub shift: f64,
    pub scale: f64,
}

pub fn decompose(chain: &ChainSpec) -> Result<SpectralDecomp, SpectralError> {
    let coordinate = match chain.kind() {
        ChainKind::XChain | ChainKind::BivariateKTilde => Coordinate::X,
        ChainKind::ThetaChain | ChainKind::BivariateK => Coordinate::Theta,
        ChainKind::RandomScan => {
            return Err(SpectralError::Unsupported(
                "random-scan chains are not products of the marginal spectra; use random_scan_spectrum".into(),
            ))
        }
    };
    let e = entry(chain.model(), coordinate)?;
    Ok(SpectralDecomp {
        chain: chain.clone(),
        coordinate,
        eigenvalues: e.eigenvalues,
        basis: e.basis,
        shift: e.shift,
        scale: e.scale,
    })
}

/// The conjugate families whose marginals lack moments of some order.
pub(crate) fn moment_obstruction(model: &Model) -> Option<String> {
    let Model::Conjugate(c) = model else { return None };
    if !matches!(
        c.family(),
        ConjugateFamily::NegBinomialBeta { .. } | ConjugateFamily::GammaGamma { .. } | ConjugateFamily::HyperbolicSkewT { .. }
    ) {
        return None;
    }
    let detail = (1..=4096u64)
        .find_map(|k| match c.lead_coefficients(k) {
            Err(ModelError::MomentNonexistence { k, condition, .. }) => {
                Some(format!("the moment of order {k} does not exist (needs {condition})"))
            }
            _ => None,
        })
        .unwrap_or_else(|| "moments of high order do not exist".into());
    Some(format!(
        "{}: not in the spectral catalog; the marginal has only finitely many moments ({detail}), \
         so the chain has no complete polynomial eigenbasis. Use simulate for this model.",
        c.name()
    ))
}

pub(crate) fn entry(model: &Model, coordinate: Coordinate) -> Result<Entry, SpectralError> {
    use Coordinate::*;
    if let Some(msg) = moment_obstruction(model) {
        return Err(SpectralError::CatalogMiss(msg));
    }
    let plain = |eigenvalues, basis| Entry { eigenvalues, basis, shift: 0.0, scale: 1.0 };
    Ok(match model {
        Model::Conjugate(c) => match (*c.family(), coordinate) {
            (ConjugateFamily::BetaBinomial { n, alpha, beta }, coord) => {
                let eig = Eigenvalues::FallingOverRising { n, s: alpha + beta + n as f64 };
                match coord {
                    X => plain(eig, PolyBasis::hahn(alpha, beta, n)?),
                    Theta => plain(eig, PolyBasis::shifted_jacobi(alpha, beta)?),
                }
            }
            (ConjugateFamily::PoissonGamma { a, alpha }, coord) => {
                let eig = Eigenvalues::Geometric { b: alpha / (1.0 + alpha) };
                match coord {
                    X => plain(eig, PolyBasis::meixner(a, alpha)?),
                    Theta => Entry { eigenvalues: eig, basis: PolyBasis::laguerre(a)?, shift: 0.0, scale: alpha },
                }
            }
            (ConjugateFamily::GaussianGaussian { sigma2, v, tau2 }, coord) => {
                let var = match coord {
                    X => sigma2 + tau2,
                    Theta => tau2,
                };
                Entry {
                    eigenvalues: Eigenvalues::Geometric { b: tau2 / (sigma2 + tau2) },
                    basis: PolyBasis::hermite(),
                    shift: v,
                    scale: (2.0 * var).sqrt(),
                }
            }
            _ => unreachable!("moment obstruction handled above"),
        },
        Model::Location(l) => {
            let (n1, n2) = l.sizes();
            let big_n = n1 + n2;
            let size = match coordinate {
                X => big_n,
                Theta => n1,
            };
            match *l.family() {
                LocationFamily::Binomial { n1, n2, p } => {
                    let eig = Eigenvalues::FallingOverFalling { n1, n: n1 + n2 };
                    let top = match coordinate {
                        X => n1 + n2,
                        Theta => n1,
                    };
                    plain(eig, PolyBasis::krawtchouk(top, p)?)
                }
                LocationFamily::Poisson { mu, .. } => {
                    plain(Eigenvalues::Geometric { b: n1 / big_n }, PolyBasis::charlier(mu * size)?)
                }
                LocationFamily::NegBinomial { p, .. } => plain(
                    Eigenvalues::RisingOverRising { n1, n: big_n },
                    PolyBasis::meixner(size, p / (1.0 - p))?,
                ),
                LocationFamily::Normal { mu, v, .. } => Entry {
                    eigenvalues: Eigenvalues::Geometric { b: n1 / big_n },
                    basis: PolyBasis::hermite(),
                    shift: size * mu,
                    scale: (2.0 * size * v).sqrt(),
                },
                LocationFamily::Gamma { alpha, .. } => Entry {
                    eigenvalues: Eigenvalues::RisingOverRising { n1, n: big_n },
                    basis: PolyBasis::laguerre(size)?,
                    shift: 0.0,
                    scale: alpha,
                },
                LocationFamily::HyperbolicCauchyLog => {
                    // x = θ + ε has density ∝ x / sinh(πx/2), θ has 1/(2cosh(πθ/2))
                    let lambda = match coordinate {
                        X => 1.0,
                        Theta => 0.5,
                    };
                    Entry {
                        eigenvalues: Eigenvalues::Harmonic,
                        basis: PolyBasis::meixner_pollaczek(lambda, FRAC_PI_2)?,
                        shift: 0.0,
                        scale: 2.0,
                    }
                }
            }
        }
        Model::Disk(_) => {
            if coordinate == Theta {
                return Err(SpectralError::Unsupported("disk: the two coordinates are symmetric; use the x-chain".into()));
            }
            plain(Eigenvalues::EvenSquares, PolyBasis::chebyshev_u())
        }
    })
}

impl SpectralDecomp {
    pub fn chain(&self) -> &ChainSpec {
        &self.chain
    }

    pub fn model(&self) -> &Model {
        self.chain.model()
    }

    /// The coordinate of the marginal chain whose spectrum this is.
    pub fn coordinate(&self) -> Coordinate {
        self.coordinate
    }

    /// True for K and K̃, which are described through a marginal.
    pub fn is_joint(&self) -> bool {
        self.chain.kind().is_joint()
    }

    pub fn eigenvalues(&self) -> &Eigenvalues {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, j: u64) -> f64 {
        self.eigenvalues.value(j)
    }

    pub fn basis(&self) -> &PolyBasis {
        &self.basis
    }

    /// Largest degree that contributes: the support size minus one for
    /// finite chains, the last nonzero eigenvalue when that comes first,
    /// `None` for an infinite spectrum.
    pub fn degree_limit(&self) -> Option<u64> {
        match (self.basis.max_degree(), self.eigenvalues.last_nonzero()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// z_j.
    pub fn norm(&self, j: u64) -> Result<f64, SpectralError> {
        Ok(self.basis.norm_constant(j)?)
    }

    /// Where the marginal state v sits in the polynomial variable.
    pub fn argument(&self, v: f64) -> f64 {
        (v - self.shift) / self.scale
    }

    /// (shift, scale) of the affine map from states to the polynomial variable.
    pub fn affine(&self) -> (f64, f64) {
        (self.shift, self.scale)
    }

    /// P_j at state v (not normalized).
    pub fn eigenfunction(&self, j: u64, v: f64) -> Result<f64, SpectralError> {
        Ok(self.basis.eval(j, self.argument(v))?)
    }

    /// State space of the marginal chain.
    pub fn support(&self) -> Support {
        match self.coordinate {
            Coordinate::X => self.model().x_support(),
            Coordinate::Theta => self.model().theta_support(),
        }
    }

    /// Stationary density (or mass) of the marginal at v.
    pub fn stationary_density(&self, v: f64) -> Result<f64, SpectralError> {
        Ok(match self.coordinate {
            Coordinate::X => self.model().marginal(v)?,
            Coordinate::Theta => self.model().prior_density(v)?.value,
        })
    }

    /// The marginal coordinate of a start state, checked against the chain.
    pub fn start_coordinate(&self, start: State) -> Result<f64, SpectralError> {
        self.chain.check_state(start)?;
        Ok(match (start, self.coordinate) {
            (State::Single(v), _) => v,
            (State::Pair { x, .. }, Coordinate::X) => x,
            (State::Pair { theta, .. }, Coordinate::Theta) => theta,
        })
    }
}
