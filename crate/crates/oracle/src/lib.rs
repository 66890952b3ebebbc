//! Brute-force checks of the spectral catalog.
//!
//! Three independent paths: a dense symmetric eigensolver on the
//! √m-conjugated transition matrix, distances from explicit matrix powers,
//! and exact rational arithmetic for the small Hahn and Krawtchouk chains.

use gibbs_chains::ChainError;
use gibbs_spectral::SpectralError;
use thiserror::Error;

mod compare;
mod eigen;
mod rational;

pub use compare::{
    compare, default_suite, rational_suite, run_suite, ComparisonReport, DistanceDelta, EigenDelta, Fault, OracleCase,
    SuiteReport, Verdict,
};
pub use eigen::{brute_distances, brute_eigenpairs, brute_eigenvalues, eigen_residual, BruteDistance, REVERSIBILITY_TOL};
pub use rational::{
    exact_hahn, exact_krawtchouk, rational_check, sign, to_rational, RationalCheck, RationalReport, FLOAT_TOL, MAX_SIZE,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("matrix is not reversible (detailed-balance residual {residual:e})")]
    NotReversible { residual: f64 },
    #[error("{0}")]
    NotRational(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    InvalidInput(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
