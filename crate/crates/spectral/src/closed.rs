use gibbs_chains::State;
use gibbs_orthopoly::Family;
use gibbs_specfun::{lgamma, ln_bessel_series};

use crate::{Eigenvalues, SpectralDecomp, SpectralError};

/// χ² from the bilinear generating functions, for ℓ > 0.
///
/// Laguerre chains (Poisson/Gamma θ-chain, any α): with y = θ/α and t = b^{2ℓ},
/// Γ(a) (1-t)^{-a} e^{-2ty/(1-t)} Σ_j u^j/(j! Γ(a+j)) - 1, u = y²t/(1-t)².
///
/// Hermite chains (Gaussian pair, location normal): with y the standardized
/// state and t = b^{2ℓ}, exp(2y²t/(1+t)) / √(1-t²) - 1.
pub fn chi_square_closed_form(decomp: &SpectralDecomp, start: State, ell: f64) -> Result<f64, SpectralError> {
    if !(ell > 0.0 && ell.is_finite()) {
        return Err(SpectralError::InvalidInput(format!("ell = {ell} must be positive")));
    }
    let v = decomp.start_coordinate(start)?;
    let y = decomp.argument(v);
    let Eigenvalues::Geometric { b } = *decomp.eigenvalues() else {
        return Err(unsupported(decomp));
    };
    let t = b.powf(2.0 * ell);
    match *decomp.basis().family() {
        Family::Laguerre { a } => {
            let u = y * y * t / ((1.0 - t) * (1.0 - t));
            // ln[Γ(a) Σ_j u^j/(j!Γ(a+j))] = ln(1 + Σ_{j≥1} u^j/(j!(a)_j)); summed directly
            // while small so that χ² near 0 keeps its relative accuracy
            let ln_series = if u < 50.0 {
                let (mut term, mut sum, mut j) = (1.0, 0.0, 0.0);
                loop {
                    term *= u / ((j + 1.0) * (a + j));
                    sum += term;
                    j += 1.0;
                    if term <= 1e-17 * sum || term == 0.0 {
                        break sum.ln_1p();
                    }
                }
            } else {
                lgamma(a) + ln_bessel_series(a, u).map_err(|e| SpectralError::Divergence(e.to_string()))?
            };
            Ok((ln_series - a * (-t).ln_1p() - 2.0 * t * y / (1.0 - t)).exp_m1())
        }
        Family::Hermite => Ok((2.0 * y * y * t / (1.0 + t) - 0.5 * (-t * t).ln_1p()).exp_m1()),
        _ => Err(unsupported(decomp)),
    }
}

fn unsupported(d: &SpectralDecomp) -> SpectralError {
    SpectralError::Unsupported(format!(
        "no closed form for the {} {} (only Laguerre and Hermite chains with geometric eigenvalues)",
        d.model().name(),
        d.chain().kind().name()
    ))
}
