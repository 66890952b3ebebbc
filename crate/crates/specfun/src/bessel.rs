use crate::{gamma::lgamma, SpecfunError};

/// ln Σ_j u^j / (j! Γ(a + j)) for u >= 0, a > 0.
///
/// The terms are accumulated in log space from j = 0 with a running maximum,
/// so arguments far beyond the overflow point of the plain sum stay finite.
pub fn ln_bessel_series(a: f64, u: f64) -> Result<f64, SpecfunError> {
    if !(a > 0.0) {
        return Err(SpecfunError::Domain { func: "ln_bessel_series", x: a });
    }
    if !(u >= 0.0) || !u.is_finite() {
        return Err(SpecfunError::Domain { func: "ln_bessel_series", x: u });
    }
    let mut t = -lgamma(a);
    if u == 0.0 {
        return Ok(t);
    }
    let lu = u.ln();
    let mut m = t;
    let mut s = 1.0;
    let mut j = 0.0f64;
    loop {
        t += lu - (j + 1.0).ln() - (a + j).ln();
        j += 1.0;
        if t > m {
            s = s * (m - t).exp() + 1.0;
            m = t;
        } else {
            s += (t - m).exp();
        }
        let ratio = u / ((j + 1.0) * (a + j));
        if ratio < 0.5 && t < m - 40.0 {
            break;
        }
        if j > 1e7 {
            return Err(SpecfunError::NonConvergence { terms: j as usize });
        }
    }
    Ok(m + s.ln())
}

/// ln I_ν(z) for ν >= 0 and z >= 0.
pub fn ln_bessel_i(nu: f64, z: f64) -> Result<f64, SpecfunError> {
    if !(nu >= 0.0) {
        return Err(SpecfunError::Domain { func: "bessel_i", x: nu });
    }
    if !(z >= 0.0) {
        return Err(SpecfunError::Domain { func: "bessel_i", x: z });
    }
    if z == 0.0 {
        return Ok(if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY });
    }
    let series = ln_bessel_series(nu + 1.0, 0.25 * z * z)?;
    Ok(nu * (0.5 * z).ln() + series)
}

/// Modified Bessel function of the first kind.
pub fn bessel_i(nu: f64, z: f64) -> Result<f64, SpecfunError> {
    let l = ln_bessel_i(nu, z)?;
    if l > f64::MAX.ln() {
        return Err(SpecfunError::Overflow { func: "bessel_i", x: z });
    }
    Ok(l.exp())
}
