use gibbs_models::Model;
use serde::Serialize;

use crate::catalog::{entry, moment_obstruction};
use crate::{Coordinate, SpectralError};

/// One pair of random-scan eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomScanBranch {
    pub k: u64,
    pub eta: f64,
    pub mu: f64,
    /// ½ + ½√(η_k μ_k), eigenfunction p_k + √(η_k/μ_k) q_k.
    pub plus: f64,
    /// ½ - ½√(η_k μ_k), eigenfunction p_k - √(η_k/μ_k) q_k.
    pub minus: f64,
    /// √(η_k/μ_k); infinite when μ_k = 0.
    pub ratio: f64,
    pub plus_eigenfunction: String,
    pub minus_eigenfunction: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomScanSpectrum {
    pub model: &'static str,
    /// Size c of the x state space, when finite.
    pub support_size: Option<u64>,
    pub branches: Vec<RandomScanBranch>,
    /// Present when c is finite: every q_k with k ≥ c has eigenvalue ½.
    pub half_eigenvalue_note: Option<String>,
}

/// The random-scan chain's spectrum for degrees 0..=k_max (capped at c-1).
///
/// Conjugate pairs use the lead coefficients (η_k, μ_k) of the posterior and
/// likelihood moments; location pairs have η_k = 1 and μ_k = β_k; the disk,
/// whose coordinates play symmetric roles, has η_k = μ_k = √λ_k.
pub fn random_scan_spectrum(model: &Model, k_max: u64) -> Result<RandomScanSpectrum, SpectralError> {
    if let Some(msg) = moment_obstruction(model) {
        return Err(SpectralError::CatalogMiss(msg));
    }
    let c = model.x_support().size();
    let top = c.map_or(k_max, |c| k_max.min(c - 1));
    let eig = entry(model, Coordinate::X)?.eigenvalues;
    let mut branches = Vec::new();
    for k in 0..=top {
        let (eta, mu) = match model {
            Model::Conjugate(p) => p.lead_coefficients(k)?,
            Model::Location(_) => (1.0, eig.value(k)),
            Model::Disk(_) => {
                let r = eig.value(k).sqrt();
                (r, r)
            }
        };
        let root = (eta * mu).sqrt();
        let ratio = if mu == 0.0 { f64::INFINITY } else { (eta / mu).sqrt() };
        branches.push(RandomScanBranch {
            k,
            eta,
            mu,
            plus: 0.5 + 0.5 * root,
            minus: 0.5 - 0.5 * root,
            ratio,
            plus_eigenfunction: format!("p_{k} + {ratio} q_{k}"),
            minus_eigenfunction: format!("p_{k} - {ratio} q_{k}"),
        });
    }
    Ok(RandomScanSpectrum {
        model: model.name(),
        support_size: c,
        branches,
        half_eigenvalue_note: c.map(|c| format!("eigenvalue 1/2 with eigenfunctions q_k for every k >= {c}")),
    })
}
