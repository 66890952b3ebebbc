//! Orthogonal polynomial families with the statistical parametrizations used
//! by the Gibbs-sampler catalogs.
//!
//! Every family is normalized the same way: the orthogonality measure is a
//! probability distribution, `P_0 = 1`, and `z_j = 1 / E[P_j²]`.
//!
//! | family | here | classical |
//! |---|---|---|
//! | Hahn | `Q_j(x; α, β, n)` | `Q_j(x; α-1, β-1, n)` |
//! | shifted Jacobi | `p_i(θ)`, weight Beta(α, β) | `P_i^{(α-1, β-1)}(1 - 2θ)` |
//! | Meixner | `M_j(x; a, α)`, weight NB(a, α/(1+α)) | `M_j(x; a, c = α/(1+α))` |
//! | Laguerre | `L_i(θ; a)`, weight Gamma(a, 1) | `L_i^{(a-1)}(θ)` |
//! | Hermite | `H_n`, weight N(0, 1/2) | physicists' `H_n` |
//! | Krawtchouk | `k_j(x; N, p)`, weight Bin(N, p) | `K_j(x; p, N)` |
//! | Charlier | `C_j(x; μ)`, weight Poisson(μ) | `C_j(x; μ)` |
//! | Meixner–Pollaczek | `P_n^λ(x; φ)` | same |
//! | Chebyshev U | `U_k`, weight (2/π)√(1-x²) | same |

mod families;
mod twisted;

pub use families::Family;

use gibbs_specfun::SpecfunError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("parameter {name} = {value} is out of range")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("degree {degree} exceeds the largest defined degree {max}")]
    DegreeOutOfRange { degree: u64, max: u64 },
    #[error("point {x} is outside the support of the {family} weight")]
    PointOutOfDomain { family: &'static str, x: f64 },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Series(#[from] SpecfunError),
}

/// A validated polynomial family.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyBasis {
    family: Family,
}

/// Below this many support points the forward recurrence is used at nodes too.
const TWISTED_MIN_SUPPORT: u64 = 24;

impl PolyBasis {
    pub fn new(family: Family) -> Result<Self, PolyError> {
        family.validate()?;
        Ok(PolyBasis { family })
    }

    pub fn hahn(alpha: f64, beta: f64, n: u64) -> Result<Self, PolyError> {
        Self::new(Family::Hahn { alpha, beta, n })
    }
    pub fn shifted_jacobi(alpha: f64, beta: f64) -> Result<Self, PolyError> {
        Self::new(Family::ShiftedJacobi { alpha, beta })
    }
    pub fn meixner(a: f64, alpha: f64) -> Result<Self, PolyError> {
        Self::new(Family::Meixner { a, alpha })
    }
    pub fn laguerre(a: f64) -> Result<Self, PolyError> {
        Self::new(Family::Laguerre { a })
    }
    pub fn hermite() -> Self {
        PolyBasis { family: Family::Hermite }
    }
    pub fn krawtchouk(n: u64, p: f64) -> Result<Self, PolyError> {
        Self::new(Family::Krawtchouk { n, p })
    }
    pub fn charlier(mu: f64) -> Result<Self, PolyError> {
        Self::new(Family::Charlier { mu })
    }
    pub fn meixner_pollaczek(lambda: f64, phi: f64) -> Result<Self, PolyError> {
        Self::new(Family::MeixnerPollaczek { lambda, phi })
    }
    pub fn chebyshev_u() -> Self {
        PolyBasis { family: Family::ChebyshevU }
    }
    pub fn discrete_chebyshev(n: u64) -> Result<Self, PolyError> {
        Self::new(Family::DiscreteChebyshev { n })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    /// Largest degree with a defined polynomial (`None` for infinite support).
    pub fn max_degree(&self) -> Option<u64> {
        self.family.max_degree()
    }

    pub fn is_discrete(&self) -> bool {
        self.family.is_discrete()
    }

    fn check_degree(&self, j: u64) -> Result<(), PolyError> {
        match self.max_degree() {
            Some(m) if j > m => Err(PolyError::DegreeOutOfRange { degree: j, max: m }),
            _ => Ok(()),
        }
    }

    /// Coefficients (α_n, β_n, γ_n) of x P_n = α_n P_{n+1} + β_n P_n + γ_n P_{n-1}.
    pub fn recurrence(&self, n: u64) -> (f64, f64, f64) {
        self.family.recurrence(n)
    }

    /// P_j(x).
    pub fn eval(&self, j: u64, x: f64) -> Result<f64, PolyError> {
        self.check_degree(j)?;
        Ok(self.eval_upto(j, x)?[j as usize])
    }

    /// P_0(x), ..., P_jmax(x).
    pub fn eval_upto(&self, jmax: u64, x: f64) -> Result<Vec<f64>, PolyError> {
        self.check_degree(jmax)?;
        self.family.check_point(x)?;
        if let Some(v) = self.family.endpoint_values(jmax, x) {
            return Ok(v);
        }
        if let Some(n) = self.max_degree() {
            if n >= TWISTED_MIN_SUPPORT && x.fract() == 0.0 {
                let mut v = self.node_values(x as u64)?;
                v.truncate(jmax as usize + 1);
                return Ok(v);
            }
        }
        Ok(self.forward(jmax, x))
    }

    fn forward(&self, jmax: u64, x: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(jmax as usize + 1);
        out.push(1.0);
        let mut prev = 0.0;
        let mut cur = 1.0;
        for n in 0..jmax {
            let (a, b, c) = self.recurrence(n);
            let next = ((x - b) * cur - c * prev) / a;
            prev = cur;
            cur = next;
            out.push(cur);
        }
        out
    }

    /// Orthonormal values p̃_j(x) = ±√z_j P_j(x) at the integer node `x` of a
    /// finite family, for j = 0..=n. They satisfy Σ_j p̃_j(x)² = 1/w(x).
    pub fn orthonormal_at_node(&self, x: u64) -> Result<Vec<f64>, PolyError> {
        let n = self
            .max_degree()
            .ok_or_else(|| PolyError::Unsupported(format!("{} has infinite support", self.name())))?;
        if x > n {
            return Err(PolyError::PointOutOfDomain { family: self.name(), x: x as f64 });
        }
        let (b, a) = self.jacobi_matrix(n);
        Ok(twisted::eigenvector_ratios(&b, &a, x as f64))
    }

    /// Same as [`PolyBasis::orthonormal_at_node`] as (ln|value|, sign) pairs.
    pub fn ln_orthonormal_at_node(&self, x: u64) -> Result<Vec<(f64, f64)>, PolyError> {
        let n = self
            .max_degree()
            .ok_or_else(|| PolyError::Unsupported(format!("{} has infinite support", self.name())))?;
        if x > n {
            return Err(PolyError::PointOutOfDomain { family: self.name(), x: x as f64 });
        }
        let (b, a) = self.jacobi_matrix(n);
        Ok(twisted::eigenvector_log_ratios(&b, &a, x as f64))
    }

    /// Values P_j(x), j = 0..=n, at a node, recovered from the orthonormal ones.
    fn node_values(&self, x: u64) -> Result<Vec<f64>, PolyError> {
        let n = self.max_degree().unwrap();
        let on = self.orthonormal_at_node(x)?;
        let (_, a) = self.jacobi_matrix(n);
        // P_j = s_j p̃_j with s_0 = 1 and s_{j+1} = s_j a_{j+1} / α_j
        let mut ln_s = 0.0f64;
        let mut sign = 1.0f64;
        let mut out = Vec::with_capacity(on.len());
        for (j, &p) in on.iter().enumerate() {
            if p == 0.0 {
                out.push(0.0);
            } else {
                out.push(sign * p.signum() * (ln_s + p.abs().ln()).exp());
            }
            if j < n as usize {
                let (alpha, _, _) = self.recurrence(j as u64);
                ln_s += a[j + 1].ln() - alpha.abs().ln();
                sign *= alpha.signum();
            }
        }
        Ok(out)
    }

    /// Diagonal b_0..b_n and off-diagonal a_0 = 0, a_1..a_n of the symmetric
    /// recurrence matrix of the orthonormal polynomials.
    pub fn jacobi_matrix(&self, n: u64) -> (Vec<f64>, Vec<f64>) {
        let mut b = Vec::with_capacity(n as usize + 1);
        let mut a = vec![0.0];
        for k in 0..=n {
            let (alpha, beta, _) = self.recurrence(k);
            b.push(beta);
            if k < n {
                let (_, _, gamma) = self.recurrence(k + 1);
                a.push((alpha * gamma).sqrt());
            }
        }
        (b, a)
    }

    /// z_j = 1 / E[P_j²] under the normalized weight.
    pub fn norm_constant(&self, j: u64) -> Result<f64, PolyError> {
        Ok(self.ln_norm_constant(j)?.exp())
    }

    pub fn ln_norm_constant(&self, j: u64) -> Result<f64, PolyError> {
        self.check_degree(j)?;
        Ok(self.family.ln_norm(j))
    }

    /// Coefficient of x^j in P_j.
    pub fn leading_coefficient(&self, j: u64) -> Result<f64, PolyError> {
        self.check_degree(j)?;
        Ok(self.family.leading_coefficient(j))
    }

    /// Probability mass or density of the orthogonality weight at x.
    pub fn weight(&self, x: f64) -> Result<f64, PolyError> {
        Ok(self.ln_weight(x)?.exp())
    }

    pub fn ln_weight(&self, x: f64) -> Result<f64, PolyError> {
        self.family.check_point(x)?;
        self.family.ln_weight(x)
    }

    /// P_j(x) from the defining hypergeometric (or explicit) sum.
    ///
    /// Kept as an independent cross-check of [`PolyBasis::eval`]; it loses
    /// accuracy to cancellation at moderate degrees.
    pub fn eval_series(&self, j: u64, x: f64) -> Result<f64, PolyError> {
        self.check_degree(j)?;
        self.family.check_point(x)?;
        self.family.series(j, x)
    }
}

/// Physicists' Hermite polynomial H_n(y).
pub fn eval_hermite(n: u64, y: f64) -> Result<f64, PolyError> {
    PolyBasis::hermite().eval(n, y)
}

/// Chebyshev polynomial of the second kind U_k(x), |x| ≤ 1.
pub fn eval_chebyshev_u(k: u64, x: f64) -> Result<f64, PolyError> {
    PolyBasis::chebyshev_u().eval(k, x)
}
