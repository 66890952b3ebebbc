use crate::PolyError;
use gibbs_specfun::{
    hypergeometric, ln_abs_gamma_sq, ln_binomial, ln_factorial, ln_pochhammer, lgamma, HyperSeriesSpec,
};
use std::f64::consts::PI;

/// Family and parameters, in the statistical parametrization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Weight: Beta-Binomial(n, α, β) on {0..n}.
    Hahn { alpha: f64, beta: f64, n: u64 },
    /// Weight: Beta(α, β) on [0, 1].
    ShiftedJacobi { alpha: f64, beta: f64 },
    /// Weight: NegBin(a, c) on ℕ with success odds c = α/(1+α).
    Meixner { a: f64, alpha: f64 },
    /// Weight: Gamma(a, 1).
    Laguerre { a: f64 },
    /// Weight: N(0, 1/2).
    Hermite,
    /// Weight: Bin(N, p).
    Krawtchouk { n: u64, p: f64 },
    /// Weight: Poisson(μ).
    Charlier { mu: f64 },
    /// Weight ∝ e^{(2φ-π)x} |Γ(λ+ix)|².
    MeixnerPollaczek { lambda: f64, phi: f64 },
    /// Weight (2/π)√(1-x²) on [-1, 1].
    ChebyshevU,
    /// Hahn with α = β = 1 (uniform weight on {0..n}).
    DiscreteChebyshev { n: u64 },
}

fn positive(name: &'static str, value: f64) -> Result<(), PolyError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(PolyError::InvalidParameter { name, value })
    }
}

impl Family {
    pub(crate) fn validate(&self) -> Result<(), PolyError> {
        match *self {
            Family::Hahn { alpha, beta, n } => {
                positive("alpha", alpha)?;
                positive("beta", beta)?;
                if n == 0 {
                    return Err(PolyError::InvalidParameter { name: "n", value: 0.0 });
                }
                Ok(())
            }
            Family::ShiftedJacobi { alpha, beta } => {
                positive("alpha", alpha)?;
                positive("beta", beta)
            }
            Family::Meixner { a, alpha } => {
                positive("a", a)?;
                positive("alpha", alpha)
            }
            Family::Laguerre { a } => positive("a", a),
            Family::Krawtchouk { n, p } => {
                if n == 0 {
                    return Err(PolyError::InvalidParameter { name: "N", value: 0.0 });
                }
                if !(p > 0.0 && p < 1.0) {
                    return Err(PolyError::InvalidParameter { name: "p", value: p });
                }
                Ok(())
            }
            Family::Charlier { mu } => positive("mu", mu),
            Family::MeixnerPollaczek { lambda, phi } => {
                positive("lambda", lambda)?;
                if !(phi > 0.0 && phi < PI) {
                    return Err(PolyError::InvalidParameter { name: "phi", value: phi });
                }
                Ok(())
            }
            Family::DiscreteChebyshev { n } => {
                if n == 0 {
                    return Err(PolyError::InvalidParameter { name: "n", value: 0.0 });
                }
                Ok(())
            }
            Family::Hermite | Family::ChebyshevU => Ok(()),
        }
    }

    /// DiscreteChebyshev is Hahn(1, 1, n); everything else is itself.
    fn resolved(&self) -> Family {
        match *self {
            Family::DiscreteChebyshev { n } => Family::Hahn { alpha: 1.0, beta: 1.0, n },
            f => f,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Hahn { .. } => "hahn",
            Family::ShiftedJacobi { .. } => "shifted-jacobi",
            Family::Meixner { .. } => "meixner",
            Family::Laguerre { .. } => "laguerre",
            Family::Hermite => "hermite",
            Family::Krawtchouk { .. } => "krawtchouk",
            Family::Charlier { .. } => "charlier",
            Family::MeixnerPollaczek { .. } => "meixner-pollaczek",
            Family::ChebyshevU => "chebyshev-u",
            Family::DiscreteChebyshev { .. } => "discrete-chebyshev",
        }
    }

    pub(crate) fn max_degree(&self) -> Option<u64> {
        match *self {
            Family::Hahn { n, .. } | Family::Krawtchouk { n, .. } | Family::DiscreteChebyshev { n } => Some(n),
            _ => None,
        }
    }

    pub(crate) fn is_discrete(&self) -> bool {
        matches!(
            self,
            Family::Hahn { .. }
                | Family::Meixner { .. }
                | Family::Krawtchouk { .. }
                | Family::Charlier { .. }
                | Family::DiscreteChebyshev { .. }
        )
    }

    pub(crate) fn check_point(&self, x: f64) -> Result<(), PolyError> {
        let ok = x.is_finite()
            && match *self {
                Family::Hahn { n, .. } | Family::Krawtchouk { n, .. } | Family::DiscreteChebyshev { n } => {
                    x >= 0.0 && x <= n as f64 && x.fract() == 0.0
                }
                Family::Meixner { .. } | Family::Charlier { .. } => x >= 0.0 && x.fract() == 0.0,
                Family::ShiftedJacobi { .. } => (0.0..=1.0).contains(&x),
                Family::Laguerre { .. } => x >= 0.0,
                Family::ChebyshevU => (-1.0..=1.0).contains(&x),
                Family::Hermite | Family::MeixnerPollaczek { .. } => true,
            };
        if ok {
            Ok(())
        } else {
            Err(PolyError::PointOutOfDomain { family: self.name(), x })
        }
    }

    pub(crate) fn recurrence(&self, k: u64) -> (f64, f64, f64) {
        let n = k as f64;
        match self.resolved() {
            Family::Hahn { alpha, beta, n: big } => {
                let big = big as f64;
                let s = alpha + beta;
                let a = if k == 0 {
                    alpha * big / s
                } else {
                    (n + s - 1.0) * (n + alpha) * (big - n) / ((2.0 * n + s - 1.0) * (2.0 * n + s))
                };
                let c = if k == 0 {
                    0.0
                } else {
                    n * (n + s - 1.0 + big) * (n + beta - 1.0) / ((2.0 * n + s - 2.0) * (2.0 * n + s - 1.0))
                };
                (-a, a + c, -c)
            }
            Family::ShiftedJacobi { alpha, beta } => {
                let (a, b) = (alpha - 1.0, beta - 1.0);
                let s = a + b;
                let (up, mid, down) = if k == 0 {
                    (2.0 / (s + 2.0), (b - a) / (s + 2.0), 0.0)
                } else {
                    (
                        2.0 * (n + 1.0) * (n + s + 1.0) / ((2.0 * n + s + 1.0) * (2.0 * n + s + 2.0)),
                        (b * b - a * a) / ((2.0 * n + s) * (2.0 * n + s + 2.0)),
                        2.0 * (n + a) * (n + b) / ((2.0 * n + s) * (2.0 * n + s + 1.0)),
                    )
                };
                (-0.5 * up, 0.5 * (1.0 - mid), -0.5 * down)
            }
            Family::Meixner { a, alpha } => {
                // c - 1 = -1/(1+α), c/(c-1) = -α
                let c = alpha / (1.0 + alpha);
                let cm1 = -1.0 / (1.0 + alpha);
                (-alpha * (n + a), -(n + (n + a) * c) / cm1, n / cm1)
            }
            Family::Laguerre { a } => (-(n + 1.0), 2.0 * n + a, -(n + a - 1.0)),
            Family::Hermite => (0.5, 0.0, n),
            Family::Krawtchouk { n: big, p } => {
                let up = p * (big as f64 - n);
                let down = n * (1.0 - p);
                (-up, up + down, -down)
            }
            Family::Charlier { mu } => (-mu, n + mu, -n),
            Family::MeixnerPollaczek { lambda, phi } => {
                let s2 = 2.0 * phi.sin();
                ((n + 1.0) / s2, -(n + lambda) / phi.tan(), (n + 2.0 * lambda - 1.0) / s2)
            }
            Family::ChebyshevU => (0.5, 0.0, if k == 0 { 0.0 } else { 0.5 }),
            Family::DiscreteChebyshev { .. } => unreachable!(),
        }
    }

    /// Closed-form values at support endpoints, when known.
    pub(crate) fn endpoint_values(&self, jmax: u64, x: f64) -> Option<Vec<f64>> {
        let len = jmax as usize + 1;
        let ratio_run = |f: &dyn Fn(f64) -> f64| {
            let mut v = Vec::with_capacity(len);
            let mut cur = 1.0;
            v.push(cur);
            for j in 0..jmax {
                cur *= f(j as f64);
                v.push(cur);
            }
            v
        };
        match self.resolved() {
            Family::Hahn { .. } | Family::Krawtchouk { .. } | Family::Meixner { .. } | Family::Charlier { .. }
                if x == 0.0 =>
            {
                Some(vec![1.0; len])
            }
            // Q_j(n) = (-1)^j (β)_j / (α)_j
            Family::Hahn { alpha, beta, n } if x == n as f64 => Some(ratio_run(&|j| -(beta + j) / (alpha + j))),
            Family::Krawtchouk { n, p } if x == n as f64 => Some(ratio_run(&|_| -(1.0 - p) / p)),
            Family::ShiftedJacobi { alpha, .. } if x == 0.0 => Some(ratio_run(&|j| (alpha + j) / (j + 1.0))),
            Family::ShiftedJacobi { beta, .. } if x == 1.0 => Some(ratio_run(&|j| -(beta + j) / (j + 1.0))),
            Family::Laguerre { a } if x == 0.0 => Some(ratio_run(&|j| (a + j) / (j + 1.0))),
            Family::ChebyshevU if x.abs() == 1.0 => {
                Some((0..len).map(|k| x.powi(k as i32) * (k as f64 + 1.0)).collect())
            }
            _ => None,
        }
    }

    pub(crate) fn ln_norm(&self, j: u64) -> f64 {
        if j == 0 {
            return 0.0;
        }
        let jf = j as f64;
        match self.resolved() {
            Family::Hahn { alpha, beta, n } => {
                let s = alpha + beta;
                (2.0 * jf + s - 1.0).ln() + ln_pochhammer(s, n) + ln_pochhammer(alpha, j) + ln_binomial(n as f64, jf)
                    - ln_pochhammer(beta, j)
                    - ln_pochhammer(s + jf - 1.0, n + 1)
            }
            Family::ShiftedJacobi { alpha, beta } => {
                let s = alpha + beta;
                (2.0 * jf + s - 1.0).ln() + ln_pochhammer(s, j - 1) + ln_factorial(j)
                    - ln_pochhammer(alpha, j)
                    - ln_pochhammer(beta, j)
            }
            Family::Meixner { a, alpha } => {
                ln_pochhammer(a, j) + jf * (alpha / (1.0 + alpha)).ln() - ln_factorial(j)
            }
            Family::Laguerre { a } => ln_factorial(j) - ln_pochhammer(a, j),
            Family::Hermite => -(jf * std::f64::consts::LN_2 + ln_factorial(j)),
            Family::Krawtchouk { n, p } => ln_binomial(n as f64, jf) + jf * (p / (1.0 - p)).ln(),
            Family::Charlier { mu } => jf * mu.ln() - ln_factorial(j),
            Family::MeixnerPollaczek { lambda, .. } => ln_factorial(j) - ln_pochhammer(2.0 * lambda, j),
            Family::ChebyshevU => 0.0,
            Family::DiscreteChebyshev { .. } => unreachable!(),
        }
    }

    pub(crate) fn leading_coefficient(&self, j: u64) -> f64 {
        let jf = j as f64;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        match self.resolved() {
            Family::Hahn { alpha, beta, n } => {
                let falling = ln_factorial(n) - ln_factorial(n - j);
                sign * (ln_pochhammer(jf + alpha + beta - 1.0, j) - ln_pochhammer(alpha, j) - falling).exp()
            }
            Family::ShiftedJacobi { alpha, beta } => {
                sign * (ln_pochhammer(jf + alpha + beta - 1.0, j) - ln_factorial(j)).exp()
            }
            Family::Meixner { a, alpha } => sign * (-jf * alpha.ln() - ln_pochhammer(a, j)).exp(),
            Family::Laguerre { .. } => sign * (-ln_factorial(j)).exp(),
            Family::Hermite | Family::ChebyshevU => 2f64.powi(j as i32),
            Family::Krawtchouk { n, p } => {
                let falling = ln_factorial(n) - ln_factorial(n - j);
                sign * (-falling - jf * p.ln()).exp()
            }
            Family::Charlier { mu } => sign * (-jf * mu.ln()).exp(),
            Family::MeixnerPollaczek { phi, .. } => (jf * (2.0 * phi.sin()).ln() - ln_factorial(j)).exp(),
            Family::DiscreteChebyshev { .. } => unreachable!(),
        }
    }

    pub(crate) fn ln_weight(&self, x: f64) -> Result<f64, PolyError> {
        Ok(match self.resolved() {
            Family::Hahn { alpha, beta, n } => {
                let k = x as u64;
                ln_binomial(n as f64, x) + ln_pochhammer(alpha, k) + ln_pochhammer(beta, n - k)
                    - ln_pochhammer(alpha + beta, n)
            }
            Family::ShiftedJacobi { alpha, beta } => {
                (alpha - 1.0) * x.ln() + (beta - 1.0) * (-x).ln_1p() + lgamma(alpha + beta)
                    - lgamma(alpha)
                    - lgamma(beta)
            }
            Family::Meixner { a, alpha } => {
                let k = x as u64;
                ln_pochhammer(a, k) - ln_factorial(k) + x * (alpha / (1.0 + alpha)).ln() - a * alpha.ln_1p()
            }
            Family::Laguerre { a } => (a - 1.0) * x.ln() - x - lgamma(a),
            Family::Hermite => -x * x - 0.5 * PI.ln(),
            Family::Krawtchouk { n, p } => ln_binomial(n as f64, x) + x * p.ln() + (n as f64 - x) * (-p).ln_1p(),
            Family::Charlier { mu } => x * mu.ln() - mu - ln_factorial(x as u64),
            Family::MeixnerPollaczek { lambda, phi } => {
                let lg = ln_abs_gamma_sq(lambda, x).map_err(|_| {
                    PolyError::Unsupported(format!("Meixner-Pollaczek weight needs 2λ integer, got λ = {lambda}"))
                })?;
                2.0 * lambda * (2.0 * phi.sin()).ln() - (2.0 * PI).ln() - lgamma(2.0 * lambda)
                    + (2.0 * phi - PI) * x
                    + lg
            }
            Family::ChebyshevU => (2.0 / PI).ln() + 0.5 * (1.0 - x * x).ln(),
            Family::DiscreteChebyshev { .. } => unreachable!(),
        })
    }

    pub(crate) fn series(&self, j: u64, x: f64) -> Result<f64, PolyError> {
        let jf = j as f64;
        let hyp = |num: &[f64], den: &[f64], z: f64| -> Result<f64, PolyError> {
            Ok(hypergeometric(&HyperSeriesSpec::new(num, den, z))?)
        };
        match self.resolved() {
            Family::Hahn { alpha, beta, n } => {
                hyp(&[-jf, jf + alpha + beta - 1.0, -x], &[alpha, -(n as f64)], 1.0)
            }
            Family::ShiftedJacobi { alpha, beta } => {
                // P_j^{(a,b)}(1-2θ) = (a+1)_j / j! 2F1(-j, j+a+b+1; a+1 | θ)
                let lead = (ln_pochhammer(alpha, j) - ln_factorial(j)).exp();
                Ok(lead * hyp(&[-jf, jf + alpha + beta - 1.0], &[alpha], x)?)
            }
            Family::Meixner { a, alpha } => hyp(&[-jf, -x], &[a], -1.0 / alpha),
            Family::Laguerre { a } => {
                let lead = (ln_pochhammer(a, j) - ln_factorial(j)).exp();
                Ok(lead * hyp(&[-jf], &[a], x)?)
            }
            Family::Hermite => {
                let mut s = 0.0;
                for m in 0..=j / 2 {
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    let ln_c = ln_factorial(j) - ln_factorial(m) - ln_factorial(j - 2 * m);
                    s += sign * ln_c.exp() * (2.0 * x).powi((j - 2 * m) as i32);
                }
                Ok(s)
            }
            Family::Krawtchouk { n, p } => hyp(&[-jf, -x], &[-(n as f64)], 1.0 / p),
            Family::Charlier { mu } => hyp(&[-jf, -x], &[], -1.0 / mu),
            Family::ChebyshevU => {
                if x.abs() == 1.0 {
                    return Ok(x.powi(j as i32) * (jf + 1.0));
                }
                let t = x.acos();
                Ok(((jf + 1.0) * t).sin() / t.sin())
            }
            Family::MeixnerPollaczek { .. } => Err(PolyError::Unsupported(
                "the Meixner-Pollaczek series has complex terms; use the recurrence".into(),
            )),
            Family::DiscreteChebyshev { .. } => unreachable!(),
        }
    }
}
