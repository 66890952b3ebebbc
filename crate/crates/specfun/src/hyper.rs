use crate::{nonpositive_integer, SpecfunError};

/// Parameters of a generalized hypergeometric series pFq(numer; denom | z).
#[derive(Debug, Clone, PartialEq)]
pub struct HyperSeriesSpec {
    pub numer: Vec<f64>,
    pub denom: Vec<f64>,
    pub z: f64,
    pub tol: f64,
    pub max_terms: usize,
}

impl HyperSeriesSpec {
    pub fn new(numer: &[f64], denom: &[f64], z: f64) -> Self {
        HyperSeriesSpec {
            numer: numer.to_vec(),
            denom: denom.to_vec(),
            z,
            tol: 1e-14,
            max_terms: 10_000,
        }
    }

    /// Degree at which the series terminates, if some numerator is -j.
    pub fn termination(&self) -> Option<u64> {
        self.numer.iter().filter_map(|&a| nonpositive_integer(a)).min()
    }

    fn ratio(&self, l: f64) -> f64 {
        let mut r = self.z / (l + 1.0);
        for a in &self.numer {
            r *= a + l;
        }
        for b in &self.denom {
            r /= b + l;
        }
        r
    }
}

/// Sums the series by term ratios.
///
/// Terminating series are summed exactly to their last term. Otherwise the
/// sum stops once the geometric estimate of the remaining tail falls below
/// `tol` times the partial sum.
pub fn hypergeometric(spec: &HyperSeriesSpec) -> Result<f64, SpecfunError> {
    let term_at = spec.termination();
    for &b in &spec.denom {
        if let Some(m) = nonpositive_integer(b) {
            match term_at {
                Some(j) if j <= m => {}
                _ => return Err(SpecfunError::DenominatorPole { b }),
            }
        }
    }
    let p = spec.numer.len();
    let q = spec.denom.len();
    if let Some(j) = term_at {
        let mut term = 1.0;
        let mut sum = 1.0;
        for l in 0..j {
            term *= spec.ratio(l as f64);
            sum += term;
        }
        return Ok(sum);
    }
    if spec.z == 0.0 {
        return Ok(1.0);
    }
    if p > q + 1 || (p == q + 1 && spec.z.abs() > 1.0) {
        return Err(SpecfunError::Divergent { p, q, z: spec.z });
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for l in 0..spec.max_terms {
        term *= spec.ratio(l as f64);
        sum += term;
        let next = spec.ratio(l as f64 + 1.0).abs();
        let r = if p == q + 1 { next.max(spec.z.abs()) } else { next };
        if r < 1.0 && term.abs() * r / (1.0 - r) <= spec.tol * sum.abs() {
            return Ok(sum);
        }
        if !sum.is_finite() {
            return Err(SpecfunError::Overflow { func: "hypergeometric", x: spec.z });
        }
    }
    Err(SpecfunError::NonConvergence { terms: spec.max_terms })
}
