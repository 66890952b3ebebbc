//! Exact-rational versions of the finite chains and their eigenbases.
//!
//! Nothing here touches the floating-point polynomial code: the Hahn and
//! Krawtchouk values come straight from their terminating hypergeometric
//! sums, and the transition matrices from closed-form Beta and binomial
//! mixtures.

use gibbs_chains::{exact_matrix, ChainKind, ChainSpec};
use gibbs_models::{ConjugateFamily, LocationFamily, Model};
use gibbs_spectral::decompose;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::OracleError;

type Q = BigRational;

/// Largest support the exact checks accept.
pub const MAX_SIZE: u64 = 12;
/// Tolerance for the floating-point cross-checks in a [`RationalReport`].
pub const FLOAT_TOL: f64 = 1e-9;

/// The simplest fraction whose nearest double is `v`, with denominator ≤ 10^6.
pub fn to_rational(name: &str, v: f64) -> Result<Q, OracleError> {
    let fail = || OracleError::NotRational(format!("{name} = {v} has no small exact fraction"));
    if !v.is_finite() {
        return Err(fail());
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut x = v;
    for _ in 0..64 {
        let a = x.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > 1_000_000 {
            break;
        }
        if h2 as f64 / k2 as f64 == v {
            return Ok(Q::new(BigInt::from(h2), BigInt::from(k2)));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = x - a;
        if frac == 0.0 {
            break;
        }
        x = 1.0 / frac;
    }
    Err(fail())
}

fn int(v: u64) -> Q {
    Q::from_integer(BigInt::from(v))
}

fn poch(a: &Q, k: u64) -> Q {
    (0..k).fold(Q::one(), |acc, i| acc * (a + int(i)))
}

fn binom(n: u64, k: u64) -> Q {
    if k > n {
        return Q::zero();
    }
    (0..k).fold(Q::one(), |acc, i| acc * int(n - i) / int(i + 1))
}

fn pow(a: &Q, k: u64) -> Q {
    (0..k).fold(Q::one(), |acc, _| acc * a)
}

fn neg(v: u64) -> Q {
    -int(v)
}

/// ₃F₂(-j, j+α+β-1, -x; α, -n | 1).
fn hahn(j: u64, x: u64, alpha: &Q, beta: &Q, n: u64) -> Q {
    let b = Q::from_integer(BigInt::from(j)) + alpha + beta - Q::one();
    let mut sum = Q::zero();
    for k in 0..=j.min(x) {
        let num = poch(&neg(j), k) * poch(&b, k) * poch(&neg(x), k);
        let den = poch(alpha, k) * poch(&neg(n), k) * poch(&Q::one(), k);
        sum += num / den;
    }
    sum
}

/// ₂F₁(-j, -x; -N | 1/p).
fn krawtchouk(j: u64, x: u64, big_n: u64, p: &Q) -> Q {
    let z = p.recip();
    let mut sum = Q::zero();
    for k in 0..=j.min(x) {
        sum += poch(&neg(j), k) * poch(&neg(x), k) * pow(&z, k) / (poch(&neg(big_n), k) * poch(&Q::one(), k));
    }
    sum
}

/// A finite chain over the rationals, with its eigenbasis.
struct ExactChain {
    label: String,
    kind: ChainKind,
    size: u64,
    kernel: Vec<Vec<Q>>,
    stationary: Vec<Q>,
    eigenvalue: Box<dyn Fn(u64) -> Q>,
    poly: Box<dyn Fn(u64, u64) -> Q>,
    /// Q_j at the right end of the support.
    endpoint: Box<dyn Fn(u64) -> Q>,
}

fn beta_binomial_chain(n: u64, alpha: Q, beta: Q) -> ExactChain {
    let s = &alpha + &beta;
    let top = poch(&(&s + int(n)), n);
    let kernel = (0..=n)
        .map(|x| {
            (0..=n)
                .map(|y| binom(n, y) * poch(&(&alpha + int(x)), y) * poch(&(&beta + int(n - x)), n - y) / &top)
                .collect()
        })
        .collect();
    let stationary = (0..=n).map(|x| binom(n, x) * poch(&alpha, x) * poch(&beta, n - x) / poch(&s, n)).collect();
    let (a1, b1, a2, b2, s2) = (alpha.clone(), beta.clone(), alpha.clone(), beta.clone(), s.clone());
    ExactChain {
        label: format!("beta-binomial x-chain n={n} alpha={alpha} beta={beta}"),
        kind: ChainKind::XChain,
        size: n,
        kernel,
        stationary,
        eigenvalue: Box::new(move |j| {
            (0..j).fold(Q::one(), |acc, i| acc * int(n - i)) / poch(&(&s2 + int(n)), j)
        }),
        poly: Box::new(move |j, x| hahn(j, x, &a1, &b1, n)),
        endpoint: Box::new(move |j| {
            let sign = if j % 2 == 0 { Q::one() } else { -Q::one() };
            sign * poch(&b2, j) / poch(&a2, j)
        }),
    }
}

/// x-chain (on {0..N}) or θ-chain (on {0..n₁}) of the location binomial pair.
fn location_binomial_chain(n1: u64, n2: u64, p: Q, kind: ChainKind) -> ExactChain {
    let big_n = n1 + n2;
    let q = Q::one() - &p;
    let bin = |m: u64, k: i64, p: &Q, q: &Q| -> Q {
        if k < 0 || k as u64 > m {
            Q::zero()
        } else {
            binom(m, k as u64) * pow(p, k as u64) * pow(q, m - k as u64)
        }
    };
    // θ | x is hypergeometric
    let post = |t: u64, x: u64| -> Q {
        if t > x || x - t > n2 {
            Q::zero()
        } else {
            binom(n1, t) * binom(n2, x - t) / binom(big_n, x)
        }
    };
    let (size, kernel): (u64, Vec<Vec<Q>>) = match kind {
        ChainKind::XChain => (
            big_n,
            (0..=big_n)
                .map(|x| {
                    (0..=big_n)
                        .map(|y| (0..=n1).map(|t| post(t, x) * bin(n2, y as i64 - t as i64, &p, &q)).sum())
                        .collect()
                })
                .collect(),
        ),
        _ => (
            n1,
            (0..=n1)
                .map(|t| {
                    (0..=n1)
                        .map(|u| (0..=big_n).map(|x| bin(n2, x as i64 - t as i64, &p, &q) * post(u, x)).sum())
                        .collect()
                })
                .collect(),
        ),
    };
    let stationary = (0..=size).map(|x| bin(size, x as i64, &p, &q)).collect();
    let (p1, p2) = (p.clone(), p.clone());
    let name = if kind == ChainKind::XChain { "x-chain" } else { "theta-chain" };
    ExactChain {
        label: format!("location-binomial {name} n1={n1} n2={n2} p={p}"),
        kind,
        size,
        kernel,
        stationary,
        eigenvalue: Box::new(move |j| {
            (0..j).fold(Q::one(), |acc, i| if i >= n1 { Q::zero() } else { acc * int(n1 - i) / int(big_n - i) })
        }),
        poly: Box::new(move |j, x| krawtchouk(j, x, size, &p1)),
        endpoint: Box::new(move |j| pow(&(-(Q::one() - &p2) / &p2), j)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalReport {
    pub chain: String,
    pub max_degree: u64,
    pub checks: Vec<RationalCheck>,
    /// Largest |float matrix - exact matrix| entry.
    pub float_matrix_delta: f64,
    /// Largest relative gap between the catalog eigenfunctions and the exact Q_j.
    pub float_polynomial_delta: f64,
    pub passed: bool,
}

impl ExactChain {
    fn apply(&self, v: &[Q]) -> Vec<Q> {
        self.kernel.iter().map(|row| row.iter().zip(v).map(|(k, x)| k * x).sum()).collect()
    }

    fn checks(&self, max_degree: u64) -> Vec<RationalCheck> {
        let top = max_degree.min(self.size);
        let nodes: Vec<u64> = (0..=self.size).collect();
        let mut out = Vec::new();
        let mut push = |name: String, passed: bool| out.push(RationalCheck { name, passed });

        let ones = vec![Q::one(); nodes.len()];
        push("rows sum to 1".into(), self.apply(&ones) == ones);
        let m = &self.stationary;
        let mut balance = true;
        for (i, row) in self.kernel.iter().enumerate() {
            for (j, k) in row.iter().enumerate() {
                balance &= &m[i] * k == &m[j] * &self.kernel[j][i];
            }
        }
        push("detailed balance".into(), balance);
        push("stationary law sums to 1".into(), m.iter().sum::<Q>() == Q::one());

        let polys: Vec<Vec<Q>> = (0..=top).map(|j| nodes.iter().map(|&x| (self.poly)(j, x)).collect()).collect();
        for (j, pj) in polys.iter().enumerate() {
            let j = j as u64;
            push(format!("Q_{j}(0) = 1"), pj[0].is_one());
            push(format!("Q_{j} at the right end"), pj[self.size as usize] == (self.endpoint)(j));
            let image = self.apply(pj);
            let beta = (self.eigenvalue)(j);
            push(format!("K Q_{j} = beta_{j} Q_{j}"), image.iter().zip(pj).all(|(a, b)| *a == &beta * b));
        }
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                let s: Q = m.iter().zip(&polys[i]).zip(&polys[j]).map(|((w, a), b)| w * a * b).sum();
                push(format!("sum m Q_{i} Q_{j} = 0"), s.is_zero());
            }
        }
        out
    }
}

fn exact_chains(model: &Model) -> Result<Vec<ExactChain>, OracleError> {
    match model {
        Model::Conjugate(c) => match *c.family() {
            ConjugateFamily::BetaBinomial { n, alpha, beta } => {
                if n > MAX_SIZE {
                    return Err(OracleError::Unsupported(format!("exact checks need n <= {MAX_SIZE}, got {n}")));
                }
                Ok(vec![beta_binomial_chain(n, to_rational("alpha", alpha)?, to_rational("beta", beta)?)])
            }
            _ => Err(OracleError::Unsupported(format!("no exact-rational chain for {}", model.name()))),
        },
        Model::Location(l) => match *l.family() {
            LocationFamily::Binomial { n1, n2, p } => {
                if n1 + n2 > MAX_SIZE {
                    return Err(OracleError::Unsupported(format!("exact checks need N <= {MAX_SIZE}, got {}", n1 + n2)));
                }
                let p = to_rational("p", p)?;
                Ok(vec![
                    location_binomial_chain(n1, n2, p.clone(), ChainKind::XChain),
                    location_binomial_chain(n1, n2, p, ChainKind::ThetaChain),
                ])
            }
            _ => Err(OracleError::Unsupported(format!("no exact-rational chain for {}", model.name()))),
        },
        Model::Disk(_) => Err(OracleError::Unsupported("no exact-rational chain for the disk".into())),
    }
}

fn to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Verifies, as identities of rationals, that the finite chains of a small
/// Beta/Binomial or location Binomial model are stochastic and reversible,
/// that their Hahn/Krawtchouk bases are orthogonal with the stated endpoint
/// values, and that K Q_j = β_j Q_j for j ≤ max_degree. Also reports how far
/// the floating-point matrices and catalog eigenfunctions sit from the exact
/// values.
pub fn rational_check(model: &Model, max_degree: u64) -> Result<Vec<RationalReport>, OracleError> {
    let mut out = Vec::new();
    for chain in exact_chains(model)? {
        let checks = chain.checks(max_degree);

        let spec = ChainSpec::new(model.clone(), chain.kind)?;
        let float = exact_matrix(&spec)?;
        let mut float_matrix_delta = 0.0f64;
        for (i, row) in chain.kernel.iter().enumerate() {
            for (j, k) in row.iter().enumerate() {
                float_matrix_delta = float_matrix_delta.max((float.get(i, j) - to_f64(k)).abs());
            }
        }
        let decomp = decompose(&spec)?;
        let mut float_polynomial_delta = 0.0f64;
        for j in 0..=max_degree.min(chain.size) {
            let exact: Vec<f64> = (0..=chain.size).map(|x| to_f64(&(chain.poly)(j, x))).collect();
            let scale = exact.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (x, e) in exact.iter().enumerate() {
                let got = decomp.eigenfunction(j, x as f64)?;
                float_polynomial_delta = float_polynomial_delta.max((got - e).abs() / scale);
            }
        }
        let passed = checks.iter().all(|c| c.passed) && float_matrix_delta < FLOAT_TOL && float_polynomial_delta < FLOAT_TOL;
        out.push(RationalReport {
            chain: chain.label,
            max_degree,
            checks,
            float_matrix_delta,
            float_polynomial_delta,
            passed,
        });
    }
    Ok(out)
}

/// A rational's sign as -1, 0 or 1, for tests that need exact comparisons.
pub fn sign(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[doc(hidden)]
pub fn exact_hahn(j: u64, x: u64, alpha: &BigRational, beta: &BigRational, n: u64) -> BigRational {
    hahn(j, x, alpha, beta, n)
}

#[doc(hidden)]
pub fn exact_krawtchouk(j: u64, x: u64, big_n: u64, p: &BigRational) -> BigRational {
    krawtchouk(j, x, big_n, p)
}

