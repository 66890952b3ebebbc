use std::io::Write;
use std::ops::RangeInclusive;

use gibbs_chains::{exact_distribution, exact_matrix, format_real, ChainKind, ChainSpec, State};
use gibbs_models::Support;
use rayon::prelude::*;
use serde::Serialize;

use crate::series::series_at;
use crate::{Coordinate, SpectralDecomp, SpectralError};

/// Distances after ℓ steps with how each number was obtained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceReport {
    pub ell: u64,
    pub chi_square: f64,
    pub chi_square_truncation_bound: f64,
    pub tv_upper: f64,
    pub tv_lower: f64,
    pub chi_square_method: &'static str,
    pub tv_upper_method: &'static str,
    pub tv_lower_method: &'static str,
}

/// Largest dim² · ℓ spent on an exact marginal distance.
const EXACT_WORK: u64 = 400_000_000;

/// Chi-square and total variation bounds after ℓ ≥ 1 steps.
///
/// Marginal chains: χ² is the eigen-series, the upper bound is ½√χ² (tail
/// included) and the lower bound is |φ(v)| β^ℓ / (2‖φ‖∞) for the first
/// eigenfunction with β > 0, when the support is compact.
///
/// K̃ (resp. K): after ℓ steps the joint law is the θ-law (resp. x-law) of
/// a half step mixed with the exact conditional, so
/// χ² = Σ_j β_j^{2ℓ-1} z_j P_j(v)², which lies between the marginal values
/// at ℓ and ℓ-1. The lower bound is the marginal distance at ℓ, exact by
/// matrix powers when the marginal is finite.
pub fn tv_bounds(decomp: &SpectralDecomp, start: State, ell: u64) -> Result<DistanceReport, SpectralError> {
    if ell == 0 {
        return Err(SpectralError::InvalidInput("tv_bounds needs ell >= 1".into()));
    }
    let v = decomp.start_coordinate(start)?;
    let joint = decomp.is_joint();
    let chi = if joint { series_at(decomp, v, ell as f64 - 0.5)? } else { series_at(decomp, v, ell as f64)? };
    let root = 0.5 * (chi.value + chi.truncation_bound).sqrt();
    let (tv_upper, tv_upper_method) = if root < 1.0 { (root, "half-root-chi-square") } else { (1.0, "trivial") };

    let mut tv_lower = 0.0;
    let mut tv_lower_method = "chi-square-only";
    if let Some(b) = eigenfunction_lower(decomp, v, ell)? {
        tv_lower = b;
        tv_lower_method = "eigenfunction";
    }
    if joint {
        if let Some(exact) = marginal_exact_tv(decomp, v, ell)? {
            if exact >= tv_lower {
                tv_lower = exact;
                tv_lower_method = "marginal-exact";
            }
        }
    }
    Ok(DistanceReport {
        ell,
        chi_square: chi.value,
        chi_square_truncation_bound: chi.truncation_bound,
        tv_upper,
        tv_lower: tv_lower.min(tv_upper),
        chi_square_method: if joint { "half-step-series" } else { "eigen-series" },
        tv_upper_method,
        tv_lower_method,
    })
}

/// Reports for every ℓ in the range, computed in parallel, in order.
pub fn tv_bounds_range(
    decomp: &SpectralDecomp,
    start: State,
    ells: RangeInclusive<u64>,
) -> Result<Vec<DistanceReport>, SpectralError> {
    ells.into_par_iter().map(|ell| tv_bounds(decomp, start, ell)).collect()
}

fn eigenfunction_lower(d: &SpectralDecomp, v: f64, ell: u64) -> Result<Option<f64>, SpectralError> {
    let j = d.eigenvalues().first_active();
    let sup = match d.support() {
        Support::Integers { lo, hi } => {
            let mut m = 0.0f64;
            for node in lo..=hi {
                m = m.max(d.eigenfunction(j, node as f64)?.abs());
            }
            m
        }
        Support::Interval { lo, hi } if j <= 2 && lo.is_finite() && hi.is_finite() => {
            let f = |t: f64| d.eigenfunction(j, t).map(f64::abs);
            let mut m = f(lo)?.max(f(hi)?);
            if j == 2 {
                let mid = 0.5 * (lo + hi);
                let h = 0.5 * (hi - lo);
                let (fl, fm, fh) = (d.eigenfunction(j, lo)?, d.eigenfunction(j, mid)?, d.eigenfunction(j, hi)?);
                let curv = fh - 2.0 * fm + fl;
                if curv != 0.0 {
                    let t = mid - h * (fh - fl) / (2.0 * curv);
                    if t > lo && t < hi {
                        m = m.max(f(t)?);
                    }
                }
            }
            m
        }
        _ => return Ok(None),
    };
    if sup == 0.0 {
        return Ok(None);
    }
    let b = d.eigenvalue(j);
    Ok(Some(d.eigenfunction(j, v)?.abs() * b.powf(ell as f64) / (2.0 * sup)))
}

/// Exact TV of the finite marginal chain after ℓ steps, when affordable.
fn marginal_exact_tv(d: &SpectralDecomp, v: f64, ell: u64) -> Result<Option<f64>, SpectralError> {
    let Some(size) = d.support().size() else { return Ok(None) };
    if size.saturating_mul(size).saturating_mul(ell) > EXACT_WORK {
        return Ok(None);
    }
    let kind = match d.coordinate() {
        Coordinate::X => ChainKind::XChain,
        Coordinate::Theta => ChainKind::ThetaChain,
    };
    let chain = ChainSpec::new(d.model().clone(), kind)?;
    let Ok(matrix) = exact_matrix(&chain) else { return Ok(None) };
    if matrix.truncation_bound() > 0.0 {
        return Ok(None);
    }
    let Some(i) = matrix.index_of(State::Single(v)) else { return Ok(None) };
    let p = exact_distribution(&matrix, i, ell as usize);
    let tv = 0.5 * p.iter().zip(matrix.stationary()).map(|(a, b)| (a - b).abs()).sum::<f64>();
    Ok(Some(tv))
}

/// CSV with header `ell,chi2,chi2_tail,tv_upper,tv_lower,tv_lower_method`.
pub fn write_reports_csv<W: Write>(reports: &[DistanceReport], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["ell", "chi2", "chi2_tail", "tv_upper", "tv_lower", "tv_lower_method"])?;
    for r in reports {
        out.write_record([
            r.ell.to_string(),
            format_real(r.chi_square),
            format_real(r.chi_square_truncation_bound),
            format_real(r.tv_upper),
            format_real(r.tv_lower),
            r.tv_lower_method.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// JSON array of full reports, method strings included.
pub fn write_reports_json<W: Write>(reports: &[DistanceReport], w: W) -> serde_json::Result<()> {
    serde_json::to_writer_pretty(w, reports)
}
