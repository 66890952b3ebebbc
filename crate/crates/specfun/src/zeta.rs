use crate::SpecfunError;

/// A value with a certified bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: f64,
    pub error_bound: f64,
}

// B_{2k} / (2k)! for k = 1..10
const BERNOULLI_OVER_FACT: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
];

/// Hurwitz zeta ζ(s, a) = Σ_{k≥0} (k + a)^{-s} for real s > 1, a > 0.
///
/// Direct sum over the first `n` terms, then Euler–Maclaurin. The reported
/// error bound is twice the first omitted correction term; it covers the
/// truncation of the expansion, not floating-point rounding.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<ZetaValue, SpecfunError> {
    if !(s > 1.0) {
        return Err(SpecfunError::Domain { func: "hurwitz_zeta", x: s });
    }
    if !(a > 0.0) {
        return Err(SpecfunError::Domain { func: "hurwitz_zeta", x: a });
    }
    let n = 16usize;
    let mut sum = 0.0;
    for k in 0..n {
        sum += (k as f64 + a).powf(-s);
    }
    let x = n as f64 + a;
    sum += x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // s (s+1) ... (s + 2k - 2) x^{-s-2k+1}
    let mut rising = s;
    let mut pow = x.powf(-s - 1.0);
    let mut last = 0.0;
    for (k, b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        let term = b * rising * pow;
        if k + 1 == BERNOULLI_OVER_FACT.len() {
            last = term.abs();
            break;
        }
        sum += term;
        let m = 2.0 * (k as f64 + 1.0);
        rising *= (s + m - 1.0) * (s + m);
        pow /= x * x;
    }
    Ok(ZetaValue { value: sum, error_bound: 2.0 * last })
}
