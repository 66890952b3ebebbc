use gibbs_chains::State;
use gibbs_orthopoly::{Family, PolyBasis};
use gibbs_specfun::{hurwitz_zeta, ln_factorial, ln_pochhammer, lgamma};
use serde::Serialize;

use crate::{Eigenvalues, SpectralDecomp, SpectralError};

/// Relative size of the certified tail at which summation stops.
pub const TAIL_TOLERANCE: f64 = 1e-12;
/// Tighter target for the disk, whose tails come from zeta values.
const DISK_TAIL_TOLERANCE: f64 = 1e-15;
/// Most degrees an infinite series may use.
pub const DEGREE_BUDGET: u64 = 1 << 22;

/// Cramér's constant: |H_n(y)| ≤ K e^{y²/2} √(2ⁿ n!).
const CRAMER: f64 = 1.086435;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiSquare {
    pub value: f64,
    /// Certified bound on the omitted tail (0 when the sum is finite).
    pub truncation_bound: f64,
    /// Degrees summed.
    pub terms: u64,
}

/// χ²_v(ℓ) = Σ_{j≥1} β_j^{2ℓ} z_j P_j(v)² for the marginal chain, ℓ ≥ 1.
///
/// For K and K̃ the start is a pair and the marginal coordinate is used;
/// the joint chain's own distance comes from [`crate::tv_bounds`].
pub fn chi_square(decomp: &SpectralDecomp, start: State, ell: u64) -> Result<ChiSquare, SpectralError> {
    if ell == 0 {
        return Err(SpectralError::InvalidInput("chi_square needs ell >= 1".into()));
    }
    chi_square_real(decomp, start, ell as f64)
}

/// Same series at a real exponent ℓ > 0.
pub fn chi_square_real(decomp: &SpectralDecomp, start: State, ell: f64) -> Result<ChiSquare, SpectralError> {
    if !(ell > 0.0 && ell.is_finite()) {
        return Err(SpectralError::InvalidInput(format!("ell = {ell} must be positive")));
    }
    let v = decomp.start_coordinate(start)?;
    series_at(decomp, v, ell)
}

pub(crate) fn series_at(d: &SpectralDecomp, v: f64, ell: f64) -> Result<ChiSquare, SpectralError> {
    let eig = *d.eigenvalues();
    if eig == Eigenvalues::EvenSquares {
        return disk_series(v, ell);
    }
    let basis = d.basis();
    let arg = d.argument(v);
    if let Some(n) = basis.max_degree() {
        // finite discrete family at one of its nodes
        let top = d.degree_limit().unwrap_or(n);
        let on = basis.ln_orthonormal_at_node(arg as u64)?;
        let mut sum = 0.0;
        for (j, &(lp, _)) in on.iter().enumerate().take(top as usize + 1).skip(1) {
            let lb = eig.ln_value(j as u64);
            if lb == f64::NEG_INFINITY || lp == f64::NEG_INFINITY {
                continue;
            }
            sum += (2.0 * ell * lb + 2.0 * lp).exp();
        }
        return Ok(ChiSquare { value: sum, truncation_bound: 0.0, terms: top });
    }
    let top = d.degree_limit();
    let tail = match top {
        Some(_) => None,
        None => Some(TailCertificate::new(d, v, ell)?),
    };
    let mut stream = Orthonormal::new(basis, arg);
    let mut sum = 0.0;
    let mut j = 0u64;
    loop {
        j += 1;
        let lp = stream.next_ln_abs();
        let lb = eig.ln_value(j);
        if lb > f64::NEG_INFINITY && lp > f64::NEG_INFINITY {
            sum += (2.0 * ell * lb + 2.0 * lp).exp();
        }
        if top == Some(j) {
            return Ok(ChiSquare { value: sum, truncation_bound: 0.0, terms: j });
        }
        if !sum.is_finite() {
            return Err(SpectralError::Divergence(format!("partial sums overflow at degree {j}")));
        }
        if j >= 8 && (j.is_power_of_two() || j % 4096 == 0) {
            if let Some(t) = tail.as_ref().and_then(|c| c.bound_after(j)) {
                if t <= TAIL_TOLERANCE * sum || t < 1e-300 {
                    return Ok(ChiSquare { value: sum, truncation_bound: t, terms: j });
                }
            }
        }
        if j >= DEGREE_BUDGET {
            return Err(SpectralError::Divergence(format!(
                "{}: tail could not be certified below {TAIL_TOLERANCE} relative within {DEGREE_BUDGET} degrees \
                 at start {v}, ell {ell}",
                d.model().name()
            )));
        }
    }
}

/// Orthonormal values p̃_j = ±√z_j P_j from the symmetric three-term
/// recurrence, kept as a mantissa and a log-scale so they cannot overflow.
pub(crate) struct Orthonormal<'a> {
    basis: &'a PolyBasis,
    x: f64,
    n: u64,
    prev: f64,
    cur: f64,
    ln_scale: f64,
    a_cur: f64,
}

impl<'a> Orthonormal<'a> {
    pub(crate) fn new(basis: &'a PolyBasis, x: f64) -> Self {
        Orthonormal { basis, x, n: 0, prev: 0.0, cur: 1.0, ln_scale: 0.0, a_cur: 0.0 }
    }

    /// Advances to the next degree and returns ln|p̃_j|.
    pub(crate) fn next_ln_abs(&mut self) -> f64 {
        let (alpha, beta, _) = self.basis.recurrence(self.n);
        let (_, _, gamma) = self.basis.recurrence(self.n + 1);
        let a_next = (alpha * gamma).sqrt();
        let next = ((self.x - beta) * self.cur - self.a_cur * self.prev) / a_next;
        self.prev = self.cur;
        self.cur = next;
        self.a_cur = a_next;
        self.n += 1;
        let m = self.cur.abs().max(self.prev.abs());
        if m > 1e100 || (m < 1e-100 && m > 0.0) {
            self.cur /= m;
            self.prev /= m;
            self.ln_scale += m.ln();
        }
        self.cur.abs().ln() + self.ln_scale
    }
}

/// Upper bounds on Σ_{j>J} β_j^{2ℓ} z_j P_j(v)² for the infinite catalogs.
enum TailCertificate {
    /// z_j P_j² ≤ U and β_j = b^j.
    Flat { ln_u: f64, r: f64 },
    /// Laguerre with geometric β: z_j L_j² ≤ e^y G_j.
    Laguerre { y: f64, a: f64, ln_r: f64 },
    /// Laguerre with β_j = (n₁)_j/(N)_j: a power-law majorant.
    LaguerrePower { y: f64, a: f64, n1: f64, n: f64, ell: f64 },
    /// Meixner or Charlier at a node: |P_j| ≤ S_j, a positive sum.
    Positive { kind: PositiveKind, x: u64, eig: Eigenvalues, ell: f64 },
    /// Meixner–Pollaczek at φ = π/2 with β_j = 1/(j+1).
    Pollaczek { ln_d2: f64, s: f64 },
}

#[derive(Clone, Copy)]
enum PositiveKind {
    Meixner { a: f64, alpha: f64 },
    Charlier { mu: f64 },
}

impl TailCertificate {
    fn new(d: &SpectralDecomp, v: f64, ell: f64) -> Result<TailCertificate, SpectralError> {
        let y = d.argument(v);
        let eig = *d.eigenvalues();
        let unsupported = || {
            SpectralError::Divergence(format!(
                "no tail certificate for {} with eigenvalues {eig:?}",
                d.basis().name()
            ))
        };
        Ok(match (*d.basis().family(), eig) {
            (Family::Hermite, Eigenvalues::Geometric { b }) => {
                TailCertificate::Flat { ln_u: 2.0 * CRAMER.ln() + y * y, r: b.powf(2.0 * ell) }
            }
            (Family::Laguerre { a }, Eigenvalues::Geometric { b }) => {
                TailCertificate::Laguerre { y, a, ln_r: 2.0 * ell * b.ln() }
            }
            (Family::Laguerre { a }, Eigenvalues::RisingOverRising { n1, n }) => {
                let e = (a - 1.0).abs();
                if 2.0 * ell * (n - n1) - e <= 1.0 {
                    return Err(SpectralError::Divergence(format!(
                        "eigenvalues decay like j^-{} but the eigenfunction bound grows like j^{e}; \
                         no certified tail at ell = {ell}",
                        n - n1
                    )));
                }
                TailCertificate::LaguerrePower { y, a, n1, n, ell }
            }
            (Family::Meixner { a, alpha }, _) => {
                TailCertificate::Positive { kind: PositiveKind::Meixner { a, alpha }, x: v as u64, eig, ell }
            }
            (Family::Charlier { mu }, _) => {
                TailCertificate::Positive { kind: PositiveKind::Charlier { mu }, x: v as u64, eig, ell }
            }
            (Family::MeixnerPollaczek { lambda, .. }, Eigenvalues::Harmonic) => {
                // z_j = j!Γ(2λ)/Γ(j+2λ), which is (j+1)^{-(2λ-1)} for λ ∈ {1/2, 1}
                if lambda != 0.5 && lambda != 1.0 {
                    return Err(unsupported());
                }
                let ya = y.abs();
                let a2 = if ya == 0.0 { 0.0 } else { ya * (std::f64::consts::PI * ya).sinh() / std::f64::consts::PI };
                let a = a2.sqrt();
                let dd = 1.0 + 2.0 * a + 2.0 * a2;
                let s = 2.0 * ell + 2.0 * lambda - 1.0;
                if s <= 1.0 {
                    return Err(SpectralError::Divergence(format!("series bound diverges at ell = {ell}")));
                }
                TailCertificate::Pollaczek { ln_d2: 2.0 * dd.ln(), s }
            }
            _ => return Err(unsupported()),
        })
    }

    /// Bound on the sum over degrees > J, or `None` if none is available yet.
    fn bound_after(&self, big_j: u64) -> Option<f64> {
        let jf = big_j as f64;
        match *self {
            TailCertificate::Flat { ln_u, r } => {
                (r < 1.0).then(|| (ln_u + (jf + 1.0) * r.ln()).exp() / (1.0 - r))
            }
            TailCertificate::Laguerre { y, a, ln_r } => {
                let j1 = jf + 1.0;
                let (ln_g, growth) = if a >= 1.0 {
                    (ln_pochhammer(a, big_j + 1) - ln_factorial(big_j + 1), (a + j1) / (j1 + 1.0))
                } else {
                    ((4.0f64).ln() + ln_factorial(big_j + 1) - ln_pochhammer(a, big_j + 1), (j1 + 1.0) / (a + j1))
                };
                let r = (ln_r + growth.ln()).exp();
                (r < 1.0).then(|| (j1 * ln_r + y + ln_g).exp() / (1.0 - r))
            }
            TailCertificate::LaguerrePower { y, a, n1, n, ell } => {
                let n2 = n - n1;
                let j1 = jf + 1.0;
                // β_j ≤ Γ(N)/Γ(n₁) (n₁+j)^{-n₂} e^{n₂/(n₁+j)}; G_j ≤ c (j+d)^e
                let (e, dd, ln_c) = if a >= 1.0 {
                    (a - 1.0, a, -lgamma(a))
                } else {
                    (1.0 - a, 1.0, (4.0f64).ln() + lgamma(a))
                };
                let rho = ((j1 + dd) / (j1 + n1)).max(1.0);
                let ln_c_all = y
                    + 2.0 * ell * (lgamma(n) - lgamma(n1) + n2 / (n1 + j1))
                    + ln_c
                    + e * rho.ln();
                let s = 2.0 * ell * n2 - e;
                Some((ln_c_all + (1.0 - s) * (n1 + jf).ln()).exp() / (s - 1.0))
            }
            TailCertificate::Positive { kind, x, eig, ell } => {
                if big_j < x {
                    return None;
                }
                let j1 = big_j + 1;
                let m = (j1 + 1) as f64;
                let xf = x as f64;
                let shape = (m / (m - xf)).powi(2);
                let (ln_z, ln_s, r_poly) = match kind {
                    PositiveKind::Meixner { a, alpha } => {
                        let c = alpha / (1.0 + alpha);
                        let ln_z = ln_pochhammer(a, j1) + j1 as f64 * c.ln() - ln_factorial(j1);
                        let ln_s = ln_positive_sum(j1, x, |i| -(ln_pochhammer(a, i) + i as f64 * alpha.ln()));
                        (ln_z, ln_s, c * ((a + j1 as f64) / m).max(1.0))
                    }
                    PositiveKind::Charlier { mu } => {
                        let ln_z = j1 as f64 * mu.ln() - ln_factorial(j1);
                        let ln_s = ln_positive_sum(j1, x, |i| -(i as f64) * mu.ln());
                        (ln_z, ln_s, mu / m)
                    }
                };
                let eig_ratio = match eig {
                    Eigenvalues::Geometric { b } => b.powf(2.0 * ell),
                    _ => 1.0,
                };
                let r = eig_ratio * r_poly * shape;
                (r < 1.0).then(|| (2.0 * ell * eig.ln_value(j1) + ln_z + 2.0 * ln_s).exp() / (1.0 - r))
            }
            TailCertificate::Pollaczek { ln_d2, s } => {
                // term_j ≤ D² (j+1)^{-s} (1 + ln(j+1))⁴, decreasing once s(1 + ln u) ≥ 4
                let big_x = jf + 1.0;
                let v = big_x.ln();
                if s * (1.0 + v) < 4.0 {
                    return None;
                }
                let q = s - 1.0;
                let w = 1.0 + v;
                let mut poly = 0.0;
                let mut fact = 1.0;
                for i in 0..=4 {
                    if i > 0 {
                        fact *= (5 - i) as f64;
                    }
                    poly += fact * w.powi(4 - i) / q.powi(i + 1);
                }
                Some((ln_d2 - q * v).exp() * poly)
            }
        }
    }
}

/// ln Σ_{i ≤ min(j, x)} C(j, i) x↓i e^{g(i)}.
fn ln_positive_sum(j: u64, x: u64, g: impl Fn(u64) -> f64) -> f64 {
    let top = j.min(x);
    let logs: Vec<f64> = (0..=top)
        .map(|i| {
            ln_factorial(j) - ln_factorial(i) - ln_factorial(j - i) + ln_factorial(x) - ln_factorial(x - i) + g(i)
        })
        .collect();
    let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln()
}

/// Σ_{k≥1} (2k+1)^{-4ℓ} U_{2k}(x)².
fn disk_series(x: f64, ell: f64) -> Result<ChiSquare, SpectralError> {
    let s = 4.0 * ell;
    let zeta_tail = |s: f64, k: u64| -> Result<(f64, f64), SpectralError> {
        let z = hurwitz_zeta(s, k as f64 + 1.5).map_err(|e| SpectralError::Divergence(e.to_string()))?;
        let f = (-s * std::f64::consts::LN_2).exp();
        Ok((f * z.value, f * z.error_bound))
    };
    if x == 0.0 {
        let (v, e) = zeta_tail(s, 0)?;
        return Ok(ChiSquare { value: v, truncation_bound: e, terms: 0 });
    }
    if x.abs() == 1.0 {
        if s - 2.0 <= 1.0 {
            return Err(SpectralError::Divergence(format!("chi-square at |x| = 1 is infinite for ell = {ell}")));
        }
        let (v, e) = zeta_tail(s - 2.0, 0)?;
        return Ok(ChiSquare { value: v, truncation_bound: e, terms: 0 });
    }
    let inv = 1.0 / (1.0 - x * x);
    let mut sum = 0.0;
    let (mut um1, mut u) = (1.0, 2.0 * x); // U_0, U_1
    let mut k = 0u64;
    let mut checkpoint = 16u64;
    loop {
        // advance to U_{2k+2}
        for _ in 0..2 {
            let next = 2.0 * x * u - um1;
            um1 = u;
            u = next;
        }
        k += 1;
        sum += ((2 * k + 1) as f64).powf(-s) * um1 * um1;
        if k == checkpoint {
            checkpoint *= 2;
            let (t1, e1) = zeta_tail(s, k)?;
            let mut tail = (t1 + e1) * inv;
            if s - 2.0 > 1.0 {
                let (t2, e2) = zeta_tail(s - 2.0, k)?;
                tail = tail.min(t2 + e2);
            }
            if tail <= DISK_TAIL_TOLERANCE * sum {
                return Ok(ChiSquare { value: sum, truncation_bound: tail, terms: 2 * k });
            }
        }
        if 2 * k >= DEGREE_BUDGET {
            return Err(SpectralError::Divergence(format!("disk series at x = {x}, ell = {ell} did not certify")));
        }
    }
}
