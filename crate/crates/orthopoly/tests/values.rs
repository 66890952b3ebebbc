use gibbs_orthopoly::{eval_chebyshev_u, eval_hermite, Family, PolyBasis, PolyError};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::f64::consts::{FRAC_PI_2, PI};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

// ---- worked values ----

#[test]
fn hahn_endpoints() {
    for (a, b, n) in [(1.0, 1.0, 8), (2.0, 3.0, 10), (0.5, 4.5, 40), (3.0, 3.0, 100)] {
        let basis = PolyBasis::hahn(a, b, n).unwrap();
        let mut ratio = 1.0;
        for j in 0..=n {
            assert_eq!(basis.eval(j, 0.0).unwrap(), 1.0);
            let qn = basis.eval(j, n as f64).unwrap();
            assert!(close(qn, ratio, 1e-12), "j={j}: {qn} vs {ratio}");
            ratio *= -(b + j as f64) / (a + j as f64);
        }
        for x in 0..=n {
            assert_eq!(basis.eval(0, x as f64).unwrap(), 1.0);
        }
    }
}

#[test]
fn hahn_printed_endpoint_form_agrees_only_when_alpha_equals_beta() {
    // (-β-j)_j / (α+1)_j
    let printed = |a: f64, b: f64, j: u64| -> f64 { (0..j).map(|i| (-b - j as f64 + i as f64) / (a + 1.0 + i as f64)).product() };
    let sym = PolyBasis::hahn(2.5, 2.5, 12).unwrap();
    for j in 0..=12 {
        assert!(close(sym.eval(j, 12.0).unwrap(), printed(2.5, 2.5, j), 1e-12));
    }
    let asym = PolyBasis::hahn(2.0, 3.0, 12).unwrap();
    assert!(!close(asym.eval(1, 12.0).unwrap(), printed(2.0, 3.0, 1), 1e-3));
}

#[test]
fn jacobi_values() {
    let basis = PolyBasis::shifted_jacobi(2.5, 1.5).unwrap();
    let mut want = 1.0;
    for i in 0..15u64 {
        assert!(close(basis.eval(i, 0.0).unwrap(), want, 1e-12));
        want *= (2.5 + i as f64) / (i as f64 + 1.0);
    }
    for t in [0.0, 0.3, 1.0] {
        assert_eq!(basis.eval(0, t).unwrap(), 1.0);
    }
    let sym = PolyBasis::shifted_jacobi(0.7, 0.7).unwrap();
    for k in 0..10 {
        assert!(sym.eval(2 * k + 1, 0.5).unwrap().abs() < 1e-13);
    }
    assert!(matches!(basis.eval(1, 1.2), Err(PolyError::PointOutOfDomain { .. })));
}

#[test]
fn meixner_values() {
    let basis = PolyBasis::meixner(1.0, 1.0).unwrap();
    for j in 0..20u64 {
        assert_eq!(basis.eval(j, 0.0).unwrap(), 1.0);
        for x in 0..30u64 {
            let v = basis.eval(j, x as f64).unwrap();
            assert!(v.abs() <= (1.0 + x as f64).powi(j as i32) * (1.0 + 1e-12));
        }
    }
    for x in 0..10u64 {
        assert_eq!(basis.eval(0, x as f64).unwrap(), 1.0);
    }
}

#[test]
fn meixner_norm_constant() {
    // (a)_j c^j / j! with c = α/(1+α); at α = 1 this is (a)_j / (2^j j!)
    let basis = PolyBasis::meixner(2.5, 1.0).unwrap();
    let mut poch = 1.0;
    let mut fact = 1.0;
    for j in 0..20u64 {
        let want = poch / (2f64.powi(j as i32) * fact);
        assert!(close(basis.norm_constant(j).unwrap(), want, 1e-12));
        poch *= 2.5 + j as f64;
        fact *= j as f64 + 1.0;
    }
    let skew = PolyBasis::meixner(2.5, 3.0).unwrap();
    assert!(close(skew.norm_constant(2).unwrap(), 2.5 * 3.5 * 0.75f64.powi(2) / 2.0, 1e-13));
}

#[test]
fn laguerre_values() {
    for a in [0.5, 1.0, 4.0] {
        let basis = PolyBasis::laguerre(a).unwrap();
        for t in [0.0, 0.1, 1.0, 7.5] {
            assert_eq!(basis.eval(0, t).unwrap(), 1.0);
            assert!(close(basis.eval(1, t).unwrap(), a - t, 1e-14));
        }
        assert!(basis.eval(1, a).unwrap().abs() < 1e-14);
    }
}

#[test]
fn hermite_values() {
    for y in [-2.0, -0.3, 0.0, 1.7] {
        assert_eq!(eval_hermite(0, y).unwrap(), 1.0);
        assert!(close(eval_hermite(1, y).unwrap(), 2.0 * y, 1e-15));
        assert!(close(eval_hermite(2, y).unwrap(), 4.0 * y * y - 2.0, 1e-14));
    }
}

#[test]
fn krawtchouk_values() {
    let basis = PolyBasis::krawtchouk(30, 0.5).unwrap();
    for j in 0..=30 {
        assert_eq!(basis.eval(j, 0.0).unwrap(), 1.0);
    }
    for n in [10u64, 30, 64] {
        let basis = PolyBasis::krawtchouk(n, 0.5).unwrap();
        let mid = (n / 2) as f64;
        let mut want = 1.0;
        for j in 0..=n / 2 {
            // k_{2j}(N/2) = (1/2)_j / ((1-N)/2)_j
            let even = basis.eval(2 * j, mid).unwrap();
            assert!(close(even, want, 1e-10), "N={n} 2j={}: {even} vs {want}", 2 * j);
            if 2 * j < n {
                assert!(basis.eval(2 * j + 1, mid).unwrap().abs() < 1e-10);
            }
            want *= (0.5 + j as f64) / ((1.0 - n as f64) / 2.0 + j as f64);
        }
        assert!(close(basis.eval(2, mid).unwrap(), -1.0 / (n as f64 - 1.0), 1e-12));
        assert!(close(basis.eval(n, mid).unwrap().abs(), 1.0, 1e-10));
    }
}

#[test]
fn charlier_values() {
    let basis = PolyBasis::charlier(2.5).unwrap();
    for x in 0..12u64 {
        let x = x as f64;
        assert_eq!(basis.eval(0, x).unwrap(), 1.0);
        assert!(close(basis.eval(1, x).unwrap(), 1.0 - x / 2.5, 1e-15));
    }
    for j in 0..15 {
        assert_eq!(basis.eval(j, 0.0).unwrap(), 1.0);
    }
}

#[test]
fn meixner_pollaczek_values() {
    let basis = PolyBasis::meixner_pollaczek(1.0, FRAC_PI_2).unwrap();
    for x in [-3.0, -0.5, 0.0, 2.25] {
        assert_eq!(basis.eval(0, x).unwrap(), 1.0);
        assert!(close(basis.eval(1, x).unwrap(), 2.0 * x, 1e-15));
    }
    // E[P_1²] = Γ(1+2λ) / (1! Γ(2λ)) at λ = 1
    assert!(close(basis.norm_constant(1).unwrap(), 0.5, 1e-15));
}

#[test]
fn chebyshev_values() {
    for k in 0..20u64 {
        assert!(close(eval_chebyshev_u(k, 1.0).unwrap(), k as f64 + 1.0, 1e-15));
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        assert!(close(eval_chebyshev_u(k, -1.0).unwrap(), sign * (k as f64 + 1.0), 1e-15));
    }
    for k in 0..10u64 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        assert!(close(eval_chebyshev_u(2 * k, 0.0).unwrap(), sign, 1e-15));
        assert_eq!(eval_chebyshev_u(2 * k + 1, 0.0).unwrap(), 0.0);
    }
    assert!(eval_chebyshev_u(2, 1.01).is_err());
}

#[test]
fn norm_constants_start_at_one() {
    let all = [
        PolyBasis::hahn(0.3, 2.0, 7).unwrap(),
        PolyBasis::shifted_jacobi(0.4, 0.6).unwrap(),
        PolyBasis::meixner(1.5, 0.2).unwrap(),
        PolyBasis::laguerre(0.9).unwrap(),
        PolyBasis::hermite(),
        PolyBasis::krawtchouk(9, 0.1).unwrap(),
        PolyBasis::charlier(7.0).unwrap(),
        PolyBasis::meixner_pollaczek(0.5, 1.0).unwrap(),
        PolyBasis::chebyshev_u(),
        PolyBasis::discrete_chebyshev(4).unwrap(),
    ];
    for b in &all {
        assert_eq!(b.norm_constant(0).unwrap(), 1.0, "{}", b.name());
    }
}

#[test]
fn discrete_chebyshev_norms_follow_eigenvalues() {
    // z_i = β_i (2i+1) with β_i = n↓i / (n+2)_i
    let n = 50u64;
    let basis = PolyBasis::discrete_chebyshev(n).unwrap();
    let mut beta = 1.0;
    for i in 0..=n {
        let z = basis.norm_constant(i).unwrap();
        assert!(close(z, beta * (2 * i + 1) as f64, 1e-11), "i={i}");
        beta *= (n - i) as f64 / (n + 2 + i) as f64;
    }
}

#[test]
fn degree_and_parameter_errors() {
    let h = PolyBasis::hahn(1.0, 1.0, 5).unwrap();
    assert!(matches!(h.eval(6, 0.0), Err(PolyError::DegreeOutOfRange { degree: 6, max: 5 })));
    assert!(matches!(h.norm_constant(6), Err(PolyError::DegreeOutOfRange { .. })));
    assert!(matches!(h.eval(1, 2.5), Err(PolyError::PointOutOfDomain { .. })));
    assert!(PolyBasis::krawtchouk(5, 1.0).is_err());
    assert!(PolyBasis::meixner(0.0, 1.0).is_err());
    assert!(PolyBasis::meixner_pollaczek(1.0, PI).is_err());
    assert!(PolyBasis::charlier(2.0).unwrap().eval(3, -1.0).is_err());
}

// ---- recurrence against the defining sums ----

fn sample_points(lo: f64, hi: f64, integer: bool) -> Vec<f64> {
    (0..25)
        .map(|i| {
            let t = lo + (hi - lo) * i as f64 / 24.0;
            if integer {
                t.round()
            } else {
                t
            }
        })
        .collect()
}

fn q(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap()
}

/// Terminating pFq summed exactly.
fn pfq_exact(numer: &[BigRational], denom: &[BigRational], z: &BigRational, terms: u64) -> BigRational {
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for l in 0..terms {
        let lr = BigRational::from_integer(BigInt::from(l));
        for a in numer {
            term *= a + &lr;
        }
        for b in denom {
            term /= b + &lr;
        }
        term = term * z / (lr + BigInt::from(1));
        sum += &term;
    }
    sum
}

fn lead_ratio(a: f64, j: u64) -> BigRational {
    (0..j).fold(BigRational::one(), |acc, i| acc * (q(a) + BigInt::from(i)) / BigInt::from(i + 1))
}

fn binom(n: u64, k: u64) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// The defining sum of each family, in exact arithmetic at the f64 inputs.
fn exact_series(basis: &PolyBasis, j: u64, x: f64) -> BigRational {
    let jq = q(j as f64);
    let xq = q(x);
    let one = BigRational::one();
    match *basis.family() {
        Family::Hahn { alpha, beta, n } => pfq_exact(
            &[-jq.clone(), jq + q(alpha + beta - 1.0), -xq],
            &[q(alpha), q(-(n as f64))],
            &one,
            j.min(x as u64),
        ),
        Family::DiscreteChebyshev { n } => {
            pfq_exact(&[-jq.clone(), jq + &one, -xq], &[one.clone(), q(-(n as f64))], &one, j.min(x as u64))
        }
        Family::ShiftedJacobi { alpha, beta } => {
            lead_ratio(alpha, j) * pfq_exact(&[-jq.clone(), jq + q(alpha + beta - 1.0)], &[q(alpha)], &xq, j)
        }
        Family::Meixner { a, alpha } => pfq_exact(&[-jq, -xq], &[q(a)], &(-one / q(alpha)), j.min(x as u64)),
        Family::Laguerre { a } => lead_ratio(a, j) * pfq_exact(&[-jq], &[q(a)], &xq, j),
        Family::Krawtchouk { n, p } => {
            pfq_exact(&[-jq, -xq], &[q(-(n as f64))], &(one / q(p)), j.min(x as u64))
        }
        Family::Charlier { mu } => pfq_exact(&[-jq, -xq], &[], &(-one / q(mu)), j.min(x as u64)),
        Family::Hermite => {
            // n! / (m! (n-2m)!) = C(n, 2m) 2^m (2m-1)!!
            let two_y = q(2.0 * x);
            (0..=j / 2).fold(BigRational::zero(), |acc, m| {
                let c = binom(j, 2 * m) * (0..m).fold(one.clone(), |c, i| c * BigInt::from(2 * (2 * m - 1 - 2 * i)));
                let t = c * num_traits::pow(two_y.clone(), (j - 2 * m) as usize);
                if m % 2 == 0 {
                    acc + t
                } else {
                    acc - t
                }
            })
        }
        Family::ChebyshevU => {
            // Σ_m (-1)^m C(k-m, m) (2x)^{k-2m}
            let two_x = q(2.0 * x);
            (0..=j / 2).fold(BigRational::zero(), |acc, m| {
                let t = binom(j - m, m) * num_traits::pow(two_x.clone(), (j - 2 * m) as usize);
                if m % 2 == 0 {
                    acc + t
                } else {
                    acc - t
                }
            })
        }
        Family::MeixnerPollaczek { .. } => unreachable!(),
    }
}

fn recurrence_matches_series(basis: &PolyBasis, pts: &[f64]) {
    let top = basis.max_degree().map_or(10, |m| m.min(10));
    for &x in pts {
        for j in 0..=top {
            let r = basis.eval(j, x).unwrap();
            let s = exact_series(basis, j, x).to_f64().unwrap();
            let scale = s.abs().max(1.0 / basis.norm_constant(j).unwrap().sqrt());
            assert!((r - s).abs() <= 1e-10 * scale, "{} j={j} x={x}: {r} vs {s}", basis.name());
            // the f64 sum of the same series, which cancels more
            let f = basis.eval_series(j, x).unwrap();
            assert!((f - s).abs() <= 1e-7 * scale, "{} series j={j} x={x}: {f} vs {s}", basis.name());
        }
    }
}

#[test]
fn recurrence_agrees_with_series() {
    recurrence_matches_series(&PolyBasis::hahn(1.5, 0.5, 20).unwrap(), &sample_points(0.0, 20.0, true));
    recurrence_matches_series(&PolyBasis::hahn(2.0, 3.0, 60).unwrap(), &sample_points(0.0, 60.0, true));
    recurrence_matches_series(&PolyBasis::shifted_jacobi(0.5, 2.0).unwrap(), &sample_points(0.0, 1.0, false));
    recurrence_matches_series(&PolyBasis::meixner(1.7, 0.8).unwrap(), &sample_points(0.0, 24.0, true));
    recurrence_matches_series(&PolyBasis::laguerre(1.3).unwrap(), &sample_points(0.0, 12.0, false));
    recurrence_matches_series(&PolyBasis::hermite(), &sample_points(-3.0, 3.0, false));
    recurrence_matches_series(&PolyBasis::krawtchouk(24, 0.35).unwrap(), &sample_points(0.0, 24.0, true));
    recurrence_matches_series(&PolyBasis::charlier(4.0).unwrap(), &sample_points(0.0, 24.0, true));
    recurrence_matches_series(&PolyBasis::chebyshev_u(), &sample_points(-1.0, 1.0, false));
    recurrence_matches_series(&PolyBasis::discrete_chebyshev(9).unwrap(), &sample_points(0.0, 9.0, true));
}

/// P_n^λ(x; φ) = (2λ)_n / n! e^{inφ} ₂F₁(-n, λ+ix; 2λ | 1 - e^{-2iφ}) in complex arithmetic.
fn meixner_pollaczek_series(n: u64, lambda: f64, phi: f64, x: f64) -> Complex64 {
    let z = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -2.0 * phi);
    let b = Complex64::new(lambda, x);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for l in 0..n {
        let lf = l as f64;
        term *= (-(n as f64) + lf) * (b + lf) / ((2.0 * lambda + lf) * (lf + 1.0)) * z;
        sum += term;
    }
    let mut lead = 1.0;
    for i in 0..n {
        lead *= (2.0 * lambda + i as f64) / (i as f64 + 1.0);
    }
    sum * lead * Complex64::from_polar(1.0, n as f64 * phi)
}

#[test]
fn meixner_pollaczek_against_complex_series() {
    for (lambda, phi) in [(1.0, FRAC_PI_2), (0.5, FRAC_PI_2), (1.5, 0.8), (0.3, 2.5)] {
        let basis = PolyBasis::meixner_pollaczek(lambda, phi).unwrap();
        for x in sample_points(-4.0, 4.0, false) {
            for n in 0..=10 {
                let c = meixner_pollaczek_series(n, lambda, phi, x);
                let r = basis.eval(n, x).unwrap();
                let scale = c.re.abs().max(1.0 / basis.norm_constant(n).unwrap().sqrt());
                assert!(c.im.abs() <= 1e-10 * scale);
                assert!((r - c.re).abs() <= 1e-10 * scale, "λ={lambda} n={n} x={x}: {r} vs {}", c.re);
            }
        }
    }
}

// ---- exact rational Hahn ----

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Q_j(x) = ₃F₂(-j, j+α+β-1, -x; α, -n | 1) summed exactly.
fn hahn_exact(alpha: &BigRational, beta: &BigRational, n: u64, j: u64, x: u64) -> BigRational {
    let one = BigRational::one();
    let s = alpha + beta - &one;
    let mut term = one.clone();
    let mut sum = one.clone();
    for l in 0..j.min(x) {
        let lr = BigRational::from_integer(BigInt::from(l));
        let num = (lr.clone() - BigInt::from(j)) * (&s + BigInt::from(j) + &lr) * (lr.clone() - BigInt::from(x));
        let den = (alpha + &lr) * (lr.clone() - BigInt::from(n)) * (lr + &one);
        term = term * num / den;
        sum += &term;
    }
    sum
}

fn rising(a: &BigRational, j: u64) -> BigRational {
    (0..j).fold(BigRational::one(), |acc, i| acc * (a + BigInt::from(i)))
}

#[test]
fn hahn_endpoints_exact_in_rationals() {
    for (alpha, beta) in [(rat(1, 1), rat(1, 1)), (rat(2, 1), rat(3, 1)), (rat(1, 2), rat(7, 3)), (rat(5, 4), rat(5, 4))] {
        for n in 1..=12u64 {
            for j in 0..=n {
                assert!(hahn_exact(&alpha, &beta, n, j, 0).is_one());
                let mut want = rising(&beta, j) / rising(&alpha, j);
                if j % 2 == 1 {
                    want = -want;
                }
                assert_eq!(hahn_exact(&alpha, &beta, n, j, n), want);
                if alpha == beta {
                    // the (-β-j)_j / (α+1)_j form coincides on the diagonal
                    let minus = -(&beta) - BigInt::from(j);
                    let printed = rising(&minus, j) / rising(&(alpha.clone() + BigInt::from(1)), j);
                    assert_eq!(printed, want);
                }
            }
        }
    }
}

#[test]
fn hahn_float_matches_rational_oracle() {
    for (alpha, beta, n) in [(rat(1, 2), rat(7, 3), 12u64), (rat(2, 1), rat(3, 1), 40), (rat(1, 1), rat(1, 1), 100)] {
        let (af, bf) = (alpha.to_f64().unwrap(), beta.to_f64().unwrap());
        let basis = PolyBasis::hahn(af, bf, n).unwrap();
        for x in (0..=n).step_by(if n > 20 { 7 } else { 1 }) {
            let vals = basis.eval_upto(n, x as f64).unwrap();
            let w = basis.weight(x as f64).unwrap();
            for j in 0..=n {
                let exact = hahn_exact(&alpha, &beta, n, j, x);
                let ef = exact.to_f64().unwrap();
                // compare in the orthonormal scale √(z_j w(x)) Q_j(x)
                let s = (basis.norm_constant(j).unwrap() * w).sqrt();
                let err = s * (vals[j as usize] - ef).abs();
                assert!(err < 1e-10, "n={n} x={x} j={j}: {} vs {ef}", vals[j as usize]);
                if exact.is_zero() {
                    assert!(vals[j as usize].abs() * s < 1e-10);
                } else if exact.abs() > rat(1, 1000) {
                    assert!(close(vals[j as usize], ef, 1e-8 * (1.0 + 1.0 / s)));
                }
            }
        }
    }
}
