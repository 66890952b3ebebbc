//! Acceptance suite: one pass/fail line per criterion, then a nonzero exit
//! if any criterion failed.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use gibbs_chains::{exact_distribution, exact_matrix, simulate_with, ChainKind, ChainSpec, SimOptions, State};
use gibbs_models::{ConjugatePair, DiskModel, LocationPair, Model};
use gibbs_oracle::{compare, to_rational, OracleCase};
use gibbs_orthopoly::PolyBasis;
use gibbs_specfun::quad::{expect_beta, expect_gamma, expect_normal, integrate, integrate_real_line};
use gibbs_spectral::{
    chi_square, chi_square_closed_form, chi_square_real, cutoff_threshold, decompose, gaussian_chi_square_at_zero,
    intertwining_grid, intertwining_residual, tv_bounds, CutoffCheck, SpectralDecomp,
};
use num_bigint::BigInt;
use num_rational::BigRational;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn decomp(model: impl Into<Model>, kind: ChainKind) -> SpectralDecomp {
    decompose(&ChainSpec::new(model.into(), kind).unwrap()).unwrap()
}

fn headline_numbers() -> Outcome {
    let d = decomp(ConjugatePair::beta_binomial(100, 1.0, 1.0).unwrap(), ChainKind::BivariateKTilde);
    let start = State::Pair { x: 100.0, theta: 0.5 };
    let up = tv_bounds(&d, start, 200).unwrap();
    let low = tv_bounds(&d, start, 50).unwrap();
    let beta = d.eigenvalue(1);
    let exact = to_rational("beta_1", beta).ok() == Some(BigRational::new(BigInt::from(100), BigInt::from(102)));
    let passed = up.tv_upper <= 0.0192 && low.tv_lower >= 0.1858 && exact;
    outcome(
        passed,
        format!(
            "tv_upper(200) = {:.6} (<= 0.0192), tv_lower(50) = {:.6} (>= 0.1858, {}), beta_1 = 50/51 exactly: {exact}",
            up.tv_upper, low.tv_lower, low.tv_lower_method
        ),
    )
}

fn beta_binomial_cases() -> Vec<OracleCase> {
    let mut out = Vec::new();
    for n in [1u64, 2, 5, 12] {
        for (a, b) in [(1.0, 1.0), (2.0, 3.0), (0.5, 0.5)] {
            out.push(OracleCase::new(ConjugatePair::beta_binomial(n, a, b).unwrap(), ChainKind::XChain));
        }
    }
    out
}

fn oracle_eigenvalues() -> Outcome {
    let mut worst = 0.0f64;
    for case in beta_binomial_cases() {
        let r = compare(&case, None).unwrap();
        worst = worst.max(r.worst_eigenvalue_delta());
    }
    outcome(worst < 1e-10, format!("12 chains, max |catalog - dense eigensolver| = {worst:.3e} (< 1e-10)"))
}

fn oracle_distances() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for case in beta_binomial_cases() {
        let spec = ChainSpec::new(case.model.clone(), case.kind).unwrap();
        let d = decompose(&spec).unwrap();
        let m = exact_matrix(&spec).unwrap();
        for (i, s) in m.states().iter().enumerate() {
            for ell in 1..=10u64 {
                let p = exact_distribution(&m, i, ell as usize);
                let brute: f64 = p.iter().zip(m.stationary()).map(|(a, b)| (a - b) * (a - b) / b).sum();
                let series = chi_square(&d, *s, ell).unwrap().value;
                worst = worst.max((series - brute).abs());
                count += 1;
            }
        }
    }
    outcome(worst < 1e-9, format!("{count} (chain, start, ell) triples, max |series - matrix power| = {worst:.3e} (< 1e-9)"))
}

fn closed_forms() -> Outcome {
    let mut worst_laguerre = 0.0f64;
    let mut worst_hermite = 0.0f64;
    let mut worst_zero = 0.0f64;
    let ells = [1u64, 2, 3, 5, 8];
    for a in [0.5, 1.0, 2.0, 3.5, 7.0] {
        let d = decomp(ConjugatePair::poisson_gamma(a, 1.0).unwrap(), ChainKind::ThetaChain);
        for ell in ells {
            for theta in [0.3, 9.0] {
                let s = chi_square(&d, State::Single(theta), ell).unwrap().value;
                let c = chi_square_closed_form(&d, State::Single(theta), ell as f64).unwrap();
                worst_laguerre = worst_laguerre.max((s - c).abs() / c);
            }
        }
    }
    for tau2 in [0.05, 0.1, 0.15, 0.2, 0.24] {
        let d = decomp(ConjugatePair::gaussian(0.5 - tau2, 0.0, tau2).unwrap(), ChainKind::XChain);
        for ell in ells {
            for x in [0.7, -2.0, 3.0] {
                let s = chi_square(&d, State::Single(x), ell).unwrap().value;
                let c = chi_square_closed_form(&d, State::Single(x), ell as f64).unwrap();
                worst_hermite = worst_hermite.max((s - c).abs() / c);
            }
            let want = gaussian_chi_square_at_zero(tau2, ell as f64);
            let s = chi_square(&d, State::Single(0.0), ell).unwrap().value;
            let c = chi_square_closed_form(&d, State::Single(0.0), ell as f64).unwrap();
            worst_zero = worst_zero.max((s - want).abs() / want).max((c - want).abs() / want);
        }
    }
    let passed = worst_laguerre < 1e-9 && worst_hermite < 1e-9 && worst_zero < 1e-12;
    outcome(
        passed,
        format!(
            "Laguerre rel {worst_laguerre:.2e}, Hermite rel {worst_hermite:.2e} (< 1e-9); start-0 identity rel {worst_zero:.2e} (< 1e-12)"
        ),
    )
}

/// Failed (label, parameters, χ², bound) over one setting.
fn run_checks(d: &SpectralDecomp, start: f64, c: f64, tag: &str, total: &mut usize, failed: &mut Vec<String>) {
    let checks: Vec<CutoffCheck> =
        cutoff_threshold(d, State::Single(start), c).unwrap().check(d, State::Single(start)).unwrap();
    for k in checks {
        *total += 1;
        if !k.holds {
            failed.push(format!("{tag} c={c} [{}] ell={:.3}: chi2={:.5} vs {:.5}", k.label, k.ell, k.chi_square, k.bound));
        }
    }
}

fn cutoff_statements() -> Outcome {
    let mut total = 0usize;
    let mut failed = Vec::new();
    // Beta/Binomial θ-chain from the edge
    for alpha in [1.0, 5.0, 20.0] {
        for beta in [1.0, 2.0] {
            for n in [50u64, 500] {
                let d = decomp(ConjugatePair::beta_binomial(n, alpha, beta).unwrap(), ChainKind::ThetaChain);
                let start = if alpha >= beta { 0.0 } else { 1.0 };
                for c in [0.5, 1.0, 2.0, 4.0] {
                    run_checks(&d, start, c, &format!("beta-binomial a={alpha} b={beta} n={n}"), &mut total, &mut failed);
                }
            }
        }
    }
    // ... and from the middle, with the two-sided β₂ bounds
    for ab in [2.0, 8.0] {
        for n in [40u64, 200] {
            let d = decomp(ConjugatePair::beta_binomial(n, ab, ab).unwrap(), ChainKind::ThetaChain);
            let b2 = d.eigenvalue(2);
            let first = (1.0 / (-2.0 * b2.ln())).ceil().max(1.0) as u64;
            for ell in first..first + 30 {
                let chi = chi_square_real(&d, State::Single(0.5), ell as f64).unwrap().value;
                let r = b2.powi(2 * ell as i32);
                total += 1;
                if !(0.5 * r <= chi && chi <= 13.0 * r) {
                    failed.push(format!("beta-binomial middle a=b={ab} n={n} ell={ell}"));
                }
            }
            for c in [0.5, 1.0, 2.0] {
                run_checks(&d, 0.5, c, &format!("beta-binomial middle a=b={ab} n={n}"), &mut total, &mut failed);
            }
        }
    }
    // Poisson/Gamma x-chain from n
    let d = decomp(ConjugatePair::poisson_gamma(1.0, 1.0).unwrap(), ChainKind::XChain);
    for n in [5.0, 20.0, 100.0, 500.0] {
        for c in [0.5, 1.0, 2.0, 3.0] {
            run_checks(&d, n, c, &format!("poisson-gamma x from {n}"), &mut total, &mut failed);
        }
    }
    // Poisson/Gamma θ-chain, starts in (0, a/2) ∪ (2a, ∞)
    for a in [0.5, 1.0, 2.0, 5.0] {
        let d = decomp(ConjugatePair::poisson_gamma(a, 1.0).unwrap(), ChainKind::ThetaChain);
        for theta in [0.1 * a, 0.4 * a, 3.0 * a, 10.0 * a] {
            for c in [0.5, 1.0, 2.0] {
                run_checks(&d, theta, c, &format!("poisson-gamma theta a={a} from {theta}"), &mut total, &mut failed);
            }
        }
    }
    // Gaussian x-chain, σ² + τ² = 1/2
    for frac in [0.1, 0.2, 0.4] {
        let tau2 = 0.5 * frac;
        let d = decomp(ConjugatePair::gaussian(0.5 - tau2, 0.0, tau2).unwrap(), ChainKind::XChain);
        for x in [0.0, 0.5, -1.0, 3.0] {
            for c in [0.5, 1.0, 2.0] {
                run_checks(&d, x, c, &format!("gaussian tau2={tau2} from {x}"), &mut total, &mut failed);
            }
        }
    }
    // location Binomial x-chain from 0
    for big_n in [20u64, 100] {
        for p in [0.5, 1.0 / big_n as f64] {
            for n2 in [1, big_n / 4, big_n / 2, big_n - 1] {
                let d = decomp(LocationPair::binomial(big_n - n2, n2, p).unwrap(), ChainKind::XChain);
                for c in [0.5, 1.0, 2.0, 5.0] {
                    run_checks(&d, 0.0, c, &format!("location-binomial N={big_n} p={p:.3} n2={n2}"), &mut total, &mut failed);
                }
            }
        }
    }
    let mut detail = format!("{} of {total} checks fail", failed.len());
    let mut by_setting: std::collections::BTreeMap<String, usize> = Default::default();
    for f in &failed {
        let key: Vec<&str> = f.split(' ').take(2).collect();
        *by_setting.entry(key.join(" ")).or_default() += 1;
    }
    if !by_setting.is_empty() {
        let parts: Vec<String> = by_setting.iter().map(|(k, v)| format!("{k}: {v}")).collect();
        detail.push_str(&format!(" [{}]", parts.join(", ")));
    }
    if !failed.is_empty() {
        let shown: Vec<&str> = failed.iter().take(4).map(String::as_str).collect();
        detail.push_str(&format!("; e.g. {}", shown.join("; ")));
    }
    outcome(failed.is_empty(), detail)
}

fn disk_bounds() -> Outcome {
    let d = decomp(DiskModel, ChainKind::XChain);
    let mut ok = true;
    let mut worst_tail = 0.0f64;
    for ell in 1..=6u64 {
        let l = ell as f64;
        let at0 = chi_square(&d, State::Single(0.0), ell).unwrap();
        let base = 3f64.powf(-4.0 * l);
        ok &= base <= at0.value && at0.value <= (8.0 * l + 1.0) / (8.0 * l - 2.0) * base;
        worst_tail = worst_tail.max(at0.truncation_bound);
        for x in [1.0, -1.0] {
            let edge = chi_square(&d, State::Single(x), ell).unwrap();
            let base = 3f64.powf(-(4.0 * l - 2.0));
            ok &= base <= edge.value && edge.value <= (8.0 * l - 3.0) / (8.0 * l - 6.0) * base;
            worst_tail = worst_tail.max(edge.truncation_bound);
        }
    }
    outcome(ok && worst_tail < 1e-15, format!("ell 1..6 at 0 and |x| = 1: bounds hold = {ok}, max tail = {worst_tail:.1e} (< 1e-15)"))
}

fn intertwining() -> Outcome {
    const EXACT: f64 = 1e-8;
    const QUADRATURE: f64 = 1e-6;
    let cases: Vec<(Model, f64, f64)> = vec![
        (ConjugatePair::beta_binomial(10, 1.0, 1.0).unwrap().into(), EXACT, QUADRATURE),
        (ConjugatePair::beta_binomial(7, 2.0, 0.5).unwrap().into(), EXACT, QUADRATURE),
        (ConjugatePair::poisson_gamma(2.0, 1.0).unwrap().into(), EXACT, QUADRATURE),
        (ConjugatePair::poisson_gamma(0.7, 3.0).unwrap().into(), EXACT, QUADRATURE),
        (ConjugatePair::gaussian(1.0, 0.5, 2.0).unwrap().into(), QUADRATURE, QUADRATURE),
        (LocationPair::binomial(6, 5, 0.3).unwrap().into(), EXACT, EXACT),
        (LocationPair::poisson(2.0, 3.0, 1.5).unwrap().into(), EXACT, EXACT),
        (LocationPair::neg_binomial(2.0, 1.5, 0.4).unwrap().into(), EXACT, EXACT),
        (LocationPair::normal(1.0, 2.0, 0.5, 1.5).unwrap().into(), QUADRATURE, QUADRATURE),
        (LocationPair::gamma(2.5, 1.5, 2.0).unwrap().into(), QUADRATURE, QUADRATURE),
        (LocationPair::hyperbolic_cauchy_log().into(), QUADRATURE, QUADRATURE),
    ];
    let mut bad = Vec::new();
    let (mut worst_exact, mut worst_quad) = (0.0f64, 0.0f64);
    for (m, like_tol, post_tol) in &cases {
        let (tg, xg) = intertwining_grid(m, 9);
        for k in 0..=5u64 {
            let r = intertwining_residual(m, k, &tg, &xg).unwrap();
            for (v, tol) in [(r.likelihood_side, *like_tol), (r.posterior_side, *post_tol)] {
                if tol == EXACT {
                    worst_exact = worst_exact.max(v);
                } else {
                    worst_quad = worst_quad.max(v);
                }
                if !(v < tol) {
                    bad.push(format!("{} k={k}: {v:.2e}", m.name()));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("11 models, k <= 5: exact-sum max {worst_exact:.2e} (< 1e-8), quadrature max {worst_quad:.2e} (< 1e-6) {}", bad.join("; ")),
    )
}

/// Largest |Gram - diag(1/z)| scaled by 1/√(z_j z_k).
fn gram_error(basis: &PolyBasis, gram: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0f64;
    for (j, row) in gram.iter().enumerate() {
        for (k, &g) in row.iter().enumerate() {
            let zj = basis.norm_constant(j as u64).unwrap();
            let zk = basis.norm_constant(k as u64).unwrap();
            let want = if j == k { 1.0 / zj } else { 0.0 };
            worst = worst.max((g - want).abs() * (zj * zk).sqrt());
        }
    }
    worst
}

fn discrete_gram(basis: &PolyBasis, end: u64) -> Vec<Vec<f64>> {
    let top = basis.max_degree().map_or(12, |m| m.min(12)) as usize;
    let mut gram = vec![vec![0.0; top + 1]; top + 1];
    for x in 0..=end {
        let w = basis.weight(x as f64).unwrap();
        let p = basis.eval_upto(top as u64, x as f64).unwrap();
        for j in 0..=top {
            for k in 0..=top {
                gram[j][k] += w * p[j] * p[k];
            }
        }
    }
    gram
}

/// Past the last x where Σ_j z_j w P_j² exceeds 1e-20.
fn discrete_end(basis: &PolyBasis) -> u64 {
    let (mut x, mut quiet) = (0u64, 0);
    loop {
        let w = basis.weight(x as f64).unwrap();
        let p = basis.eval_upto(12, x as f64).unwrap();
        let mass: f64 = p.iter().enumerate().map(|(j, v)| w * basis.norm_constant(j as u64).unwrap() * v * v).sum();
        quiet = if mass < 1e-20 { quiet + 1 } else { 0 };
        if quiet > 20 {
            return x;
        }
        x += 1;
    }
}

/// Off-diagonal entries come from E(q_j + q_k)² with q = √z P, so every
/// integrand is positive and a relative tolerance stays meaningful.
fn continuous_gram(basis: &PolyBasis, expect: &dyn Fn(&dyn Fn(f64) -> f64) -> f64) -> Vec<Vec<f64>> {
    const DEG: usize = 10;
    let scale: Vec<f64> = (0..=DEG as u64).map(|j| basis.norm_constant(j).unwrap().sqrt()).collect();
    let q = |x: f64| {
        let p = basis.eval_upto(DEG as u64, x).unwrap();
        p.iter().zip(&scale).map(|(v, s)| v * s).collect::<Vec<f64>>()
    };
    let mut unit = vec![vec![0.0; DEG + 1]; DEG + 1];
    for j in 0..=DEG {
        unit[j][j] = expect(&|x| q(x)[j].powi(2));
    }
    for j in 0..=DEG {
        for k in j + 1..=DEG {
            let both = expect(&|x| {
                let v = q(x);
                (v[j] + v[k]).powi(2)
            });
            unit[j][k] = 0.5 * (both - unit[j][j] - unit[k][k]);
            unit[k][j] = unit[j][k];
        }
    }
    (0..=DEG).map(|j| (0..=DEG).map(|k| unit[j][k] / (scale[j] * scale[k])).collect()).collect()
}

fn orthogonality() -> Outcome {
    let mut rows: Vec<(&str, f64, f64)> = Vec::new();
    let mut push = |name, err, tol| rows.push((name, err, tol));
    let mut worst = 0.0f64;
    for (a, b, n) in [(1.0, 1.0, 10), (0.5, 2.5, 12), (2.0, 3.0, 20), (0.5, 2.0, 100)] {
        let basis = PolyBasis::hahn(a, b, n).unwrap();
        worst = worst.max(gram_error(&basis, &discrete_gram(&basis, n)));
    }
    push("hahn", worst, 1e-9);
    let mut worst = 0.0f64;
    for (n, p) in [(10, 0.5), (20, 0.3), (60, 0.85)] {
        let basis = PolyBasis::krawtchouk(n, p).unwrap();
        worst = worst.max(gram_error(&basis, &discrete_gram(&basis, n)));
    }
    push("krawtchouk", worst, 1e-9);
    let mut worst = 0.0f64;
    for (a, alpha) in [(1.0, 1.0), (2.5, 0.4), (0.6, 3.0)] {
        let basis = PolyBasis::meixner(a, alpha).unwrap();
        worst = worst.max(gram_error(&basis, &discrete_gram(&basis, discrete_end(&basis))));
    }
    push("meixner", worst, 1e-9);
    let mut worst = 0.0f64;
    for mu in [0.5, 3.0, 12.0] {
        let basis = PolyBasis::charlier(mu).unwrap();
        worst = worst.max(gram_error(&basis, &discrete_gram(&basis, discrete_end(&basis))));
    }
    push("charlier", worst, 1e-9);
    let mut worst = 0.0f64;
    for (a, b) in [(1.0, 1.0), (0.5, 0.5), (2.0, 0.7)] {
        let basis = PolyBasis::shifted_jacobi(a, b).unwrap();
        worst = worst.max(gram_error(&basis, &continuous_gram(&basis, &|f| expect_beta(f, a, b, 1e-13).value)));
    }
    push("shifted-jacobi", worst, 1e-7);
    let mut worst = 0.0f64;
    for a in [1.0, 0.5, 3.5] {
        let basis = PolyBasis::laguerre(a).unwrap();
        worst = worst.max(gram_error(&basis, &continuous_gram(&basis, &|f| expect_gamma(f, a, 1.0, 1e-13).value)));
    }
    push("laguerre", worst, 1e-7);
    let basis = PolyBasis::hermite();
    push("hermite", gram_error(&basis, &continuous_gram(&basis, &|f| expect_normal(f, 0.0, 0.5, 1e-13).value)), 1e-7);
    let mut worst = 0.0f64;
    for (lambda, phi) in [(1.0, std::f64::consts::FRAC_PI_2), (1.5, 1.0)] {
        let basis = PolyBasis::meixner_pollaczek(lambda, phi).unwrap();
        let expect = |f: &dyn Fn(f64) -> f64| integrate_real_line(|x| basis.weight(x).unwrap() * f(x), 0.0, 2.0, 1e-13).value;
        worst = worst.max(gram_error(&basis, &continuous_gram(&basis, &expect)));
    }
    push("meixner-pollaczek", worst, 1e-7);
    let basis = PolyBasis::chebyshev_u();
    let expect = |f: &dyn Fn(f64) -> f64| {
        let c = 2.0 / std::f64::consts::PI;
        integrate(|t: f64| c * t.sin().powi(2) * f(t.cos()), 0.0, std::f64::consts::PI, 1e-15, 1e-13).value
    };
    push("chebyshev-u", gram_error(&basis, &continuous_gram(&basis, &expect)), 1e-7);

    let passed = rows.iter().all(|(_, e, t)| e <= t);
    let detail: Vec<String> = rows.iter().map(|(n, e, _)| format!("{n} {e:.1e}")).collect();
    outcome(passed, format!("9 families: {}", detail.join(", ")))
}

fn simulation() -> Outcome {
    let reps = 3000usize;
    let spec = ChainSpec::new(ConjugatePair::beta_binomial(100, 1.0, 1.0).unwrap().into(), ChainKind::XChain).unwrap();
    let matrix = exact_matrix(&spec).unwrap();
    let opts = SimOptions { workers: 0, keep_traces: false, bins: 50 };
    let mut lines = Vec::new();
    let mut ok = true;
    let mut empirical = [0.0; 2];
    for (slot, steps) in [50usize, 200].into_iter().enumerate() {
        let sim = simulate_with(&spec, State::Single(100.0), steps, reps, 20240601, &opts).unwrap();
        let p = exact_distribution(&matrix, 100, steps);
        let exact_tv = 0.5 * p.iter().zip(matrix.stationary()).map(|(a, b)| (a - b).abs()).sum::<f64>();
        let mut counts = vec![0u64; 101];
        for b in &sim.histogram.bins {
            counts[b.lo as usize] = b.count;
        }
        let n = reps as f64;
        // every cell within 4σ of the exact law, and the TV within the summed 4σ band
        let mut band = 0.0;
        let mut cells_ok = true;
        for (x, &c) in counts.iter().enumerate() {
            let sd = (p[x] * (1.0 - p[x]) / n).sqrt();
            band += 0.5 * 4.0 * sd;
            cells_ok &= (c as f64 / n - p[x]).abs() <= 4.0 * sd + 0.5 / n;
        }
        let tv = sim.empirical_tv(&spec).unwrap();
        empirical[slot] = tv;
        let in_band = (tv - exact_tv).abs() <= band;
        if steps == 200 {
            ok &= in_band && cells_ok && exact_tv <= 0.02;
        } else {
            ok &= exact_tv >= 0.15;
        }
        lines.push(format!("ell={steps}: empirical {tv:.4}, exact {exact_tv:.4}, band +/-{band:.4}, cells within 4 sd: {cells_ok}"));
    }
    ok &= empirical[0] > empirical[1];
    outcome(ok, lines.join("; "))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_gibbs-spectra")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism() -> Outcome {
    let model = r#"{"model":"beta-binomial","params":{"n":100,"alpha":1,"beta":1}}"#;
    let sim = |w: &str| {
        run_cli(&[
            "--model", model, "--seed", "7", "--workers", w, "simulate", "--start", "100", "--steps", "200", "--reps", "3000",
        ])
    };
    let verify = |w: &str| run_cli(&["--workers", w, "--format", "json", "verify"]);
    let (s1, s1b, s8) = (sim("1"), sim("1"), sim("8"));
    let (v1, v1b, v8) = (verify("1"), verify("1"), verify("8"));
    let codes = [s1.0, s1b.0, s8.0, v1.0, v1b.0, v8.0];
    let sim_same = s1.1 == s1b.1 && s1.1 == s8.1 && !s1.1.is_empty();
    let verify_same = v1.1 == v1b.1 && v1.1 == v8.1 && !v1.1.is_empty();
    outcome(
        sim_same && verify_same && codes.iter().all(|&c| c == 0),
        format!(
            "simulate identical across runs and workers 1/8: {sim_same} ({} bytes); verify: {verify_same} ({} bytes); exit codes {codes:?}",
            s1.1.len(),
            v1.1.len()
        ),
    )
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("uniform Beta/Binomial headline bounds", Duration::from_secs(1), headline_numbers),
        ("oracle eigenvalue match", Duration::from_secs(5), oracle_eigenvalues),
        ("oracle distance match", Duration::from_secs(10), oracle_distances),
        ("closed-form identities", Duration::MAX, closed_forms),
        ("cutoff statements as inequality suites", Duration::from_secs(30), cutoff_statements),
        ("disk two-sided bounds", Duration::MAX, disk_bounds),
        ("intertwining residuals", Duration::MAX, intertwining),
        ("orthogonality suites", Duration::MAX, orthogonality),
        ("simulation sanity", Duration::MAX, simulation),
        ("determinism of simulate and verify", Duration::MAX, determinism),
    ];
    let mut failures = 0;
    let mut err = std::io::stderr().lock();
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let took = t.elapsed();
        let in_time = took <= budget;
        let passed = o.passed && in_time;
        if !passed {
            failures += 1;
        }
        let budget_note = if budget == Duration::MAX { String::new() } else { format!(", budget {}s", budget.as_secs()) };
        let _ = writeln!(
            err,
            "acceptance {:>2} {}: {} ({}; {:.2}s{})",
            i + 1,
            name,
            if passed { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64(),
            budget_note
        );
    }
    let _ = writeln!(err, "acceptance: {} of 10 criteria pass", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
