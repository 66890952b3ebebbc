use crate::SpecfunError;
use std::f64::consts::PI;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// Lanczos coefficients for g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

// B_{2k} / (2k (2k-1)) for k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Natural log of Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64, SpecfunError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecfunError::Domain { func: "ln_gamma", x });
    }
    Ok(lgamma(x))
}

/// Unchecked [`ln_gamma`]; returns NaN outside x > 0.
pub fn lgamma(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return f64::INFINITY;
    }
    if x < 0.5 {
        // Γ(x) = Γ(x + 1) / x keeps the Lanczos sum in its accurate range.
        return lanczos(x + 1.0) - x.ln();
    }
    if x < 10.0 {
        return lanczos(x);
    }
    stirling(x)
}

fn lanczos(x: f64) -> f64 {
    let y = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (y + i as f64);
    }
    let t = y + LANCZOS_G + 0.5;
    HALF_LN_2PI + (y + 0.5) * t.ln() - t + a.ln()
}

fn stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        corr += c * pow;
        pow *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + corr
}

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
pub fn pochhammer(a: f64, n: u64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if n > 64 && a > 0.0 {
        return ln_pochhammer(a, n).exp();
    }
    let mut p = 1.0;
    for i in 0..n {
        p *= a + i as f64;
        if p == 0.0 {
            break;
        }
    }
    p
}

/// ln (a)_n for a > 0.
pub fn ln_pochhammer(a: f64, n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if n <= 16 {
        let mut s = 0.0;
        for i in 0..n {
            s += (a + i as f64).ln();
        }
        return s;
    }
    lgamma(a + n as f64) - lgamma(a)
}

pub fn ln_factorial(n: u64) -> f64 {
    lgamma(n as f64 + 1.0)
}

/// ln C(n, k) for integers 0 <= k <= n.
pub fn log_binomial(n: u64, k: u64) -> Result<f64, SpecfunError> {
    if k > n {
        return Err(SpecfunError::Domain { func: "log_binomial", x: k as f64 });
    }
    if k == 0 || k == n {
        return Ok(0.0);
    }
    Ok(ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k))
}

/// ln C(n, k) for real n >= k >= 0 through Gamma functions.
pub fn ln_binomial(n: f64, k: f64) -> f64 {
    lgamma(n + 1.0) - lgamma(k + 1.0) - lgamma(n - k + 1.0)
}

/// ln |Γ(σ + it)|² for σ a positive multiple of 1/2.
///
/// Uses Γ(1/2+it)Γ(1/2-it) = π / cosh(πt), Γ(1+it)Γ(1-it) = πt / sinh(πt)
/// and |Γ(s+1)|² = |s|² |Γ(s)|².
pub fn ln_abs_gamma_sq(sigma: f64, t: f64) -> Result<f64, SpecfunError> {
    let twice = 2.0 * sigma;
    if !(sigma > 0.0) || twice.fract() != 0.0 {
        return Err(SpecfunError::Domain { func: "ln_abs_gamma_sq", x: sigma });
    }
    let y = PI * t.abs();
    let (mut s, mut acc) = if twice as u64 % 2 == 1 {
        // ln(π / cosh y)
        (0.5, PI.ln() - ln_cosh(y))
    } else {
        // ln(π t / sinh(π t)) -> 0 as t -> 0
        (1.0, -ln_sinhc(y))
    };
    while s < sigma - 0.25 {
        acc += (s * s + t * t).ln();
        s += 1.0;
    }
    Ok(acc)
}

fn ln_cosh(y: f64) -> f64 {
    y + (-2.0 * y).exp().ln_1p() - std::f64::consts::LN_2
}

// ln(sinh(y) / y) for y >= 0
fn ln_sinhc(y: f64) -> f64 {
    if y < 1e-4 {
        let y2 = y * y;
        return y2 / 6.0 - y2 * y2 / 180.0;
    }
    if y < 20.0 {
        return (y.sinh() / y).ln();
    }
    y + (-(-2.0 * y).exp()).ln_1p() - std::f64::consts::LN_2 - y.ln()
}
