//! Spectral analysis of the two-component Gibbs sampler chains.
//!
//! For the cataloged families the marginal chains are diagonalized by
//! orthogonal polynomials, so the chi-square distance after ℓ steps is the
//! series Σ_j β_j^{2ℓ} z_j P_j(start)². This crate holds the eigenvalue
//! catalogs, evaluates that series with certified tails, and turns it into
//! total variation bounds and cutoff statements.

mod catalog;
mod closed;
mod cutoff;
mod distance;
mod intertwine;
mod scan;
mod series;

pub use catalog::{decompose, Coordinate, Eigenvalues, SpectralDecomp};
pub use closed::chi_square_closed_form;
pub use cutoff::{cutoff_threshold, gaussian_chi_square_at_zero, CutoffCheck, CutoffStatement, CutoffThresholds, Relation, StepRange};
pub use distance::{tv_bounds, tv_bounds_range, write_reports_csv, write_reports_json, DistanceReport};
pub use intertwine::{intertwining_grid, intertwining_residual, IntertwiningResidual};
pub use scan::{random_scan_spectrum, RandomScanBranch, RandomScanSpectrum};
pub use series::{chi_square, chi_square_real, ChiSquare, DEGREE_BUDGET, TAIL_TOLERANCE};

use gibbs_chains::ChainError;
use gibbs_models::ModelError;
use gibbs_orthopoly::PolyError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    /// The model is outside the catalog; the message names the obstruction.
    #[error("{0}")]
    CatalogMiss(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("chi-square series: {0}")]
    Divergence(String),
    #[error("{0}")]
    InvalidInput(String),
    #[error("cutoff: {0}")]
    SettingMismatch(String),
    #[error("quadrature: {0}")]
    Quadrature(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Model(#[from] ModelError),
}
