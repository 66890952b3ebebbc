//! Adaptive Gauss–Kronrod (7/15) quadrature and a few weighted expectations.
//!
//! Endpoint singularities of Beta and Gamma weights are removed by the
//! substitution θ = u^{1/α} before integrating, so the panels only ever see
//! smooth integrands.

use crate::gamma::lgamma;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> QuadResult {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let d = h * XGK[i];
        let s = f(c - d) + f(c + d);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    QuadResult { value: k * h, error: ((k - g) * h).abs() }
}

/// ∫_a^b f by adaptive bisection of the worst panel.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> QuadResult {
    if a == b {
        return QuadResult { value: 0.0, error: 0.0 };
    }
    let mut panels = vec![(a, b, kronrod(&f, a, b))];
    loop {
        let value: f64 = panels.iter().map(|p| p.2.value).sum();
        let error: f64 = panels.iter().map(|p| p.2.error).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) || panels.len() >= 4000 {
            return QuadResult { value, error };
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2.error.total_cmp(&y.1 .2.error))
            .unwrap();
        let (lo, hi, _) = panels.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return QuadResult { value, error };
        }
        panels.push((lo, mid, kronrod(&f, lo, mid)));
        panels.push((mid, hi, kronrod(&f, mid, hi)));
    }
}

/// ∫_a^∞ f over panels of doubling width starting at `scale`.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, a: f64, scale: f64, rel_tol: f64) -> QuadResult {
    let mut total = QuadResult { value: 0.0, error: 0.0 };
    let mut lo = a;
    let mut width = scale;
    let mut quiet = 0;
    let mut covered = 0.0;
    for _ in 0..200 {
        let hi = lo + width;
        let p = integrate(&f, lo, hi, 1e-300, rel_tol * 0.1);
        total.value += p.value;
        total.error += p.error;
        covered += width;
        if p.value.abs() <= 1e-18 * total.value.abs().max(1e-300) && covered > 16.0 * scale {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        lo = hi;
        width *= 2.0;
    }
    total
}

/// ∫_ℝ f, split at `center` and integrated outward on both sides.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, center: f64, scale: f64, rel_tol: f64) -> QuadResult {
    let right = integrate_half_line(&f, center, scale, rel_tol);
    let left = integrate_half_line(|u| f(2.0 * center - u), center, scale, rel_tol);
    QuadResult { value: right.value + left.value, error: right.error + left.error }
}

/// E f(Θ) for Θ ~ Beta(α, β).
pub fn expect_beta<F: Fn(f64) -> f64>(f: F, alpha: f64, beta: f64, rel_tol: f64) -> QuadResult {
    let ln_b = lgamma(alpha) + lgamma(beta) - lgamma(alpha + beta);
    // Left half: θ = u^{1/α}, θ^{α-1} dθ = du / α.
    let left = integrate(
        |u: f64| {
            let th = u.powf(1.0 / alpha);
            ((beta - 1.0) * (-th).ln_1p() - ln_b).exp() / alpha * f(th)
        },
        0.0,
        0.5f64.powf(alpha),
        1e-300,
        rel_tol,
    );
    let right = integrate(
        |u: f64| {
            let om = u.powf(1.0 / beta);
            ((alpha - 1.0) * (-om).ln_1p() - ln_b).exp() / beta * f(1.0 - om)
        },
        0.0,
        0.5f64.powf(beta),
        1e-300,
        rel_tol,
    );
    QuadResult { value: left.value + right.value, error: left.error + right.error }
}

/// E f(Θ) for Θ ~ Gamma(shape, scale).
pub fn expect_gamma<F: Fn(f64) -> f64>(f: F, shape: f64, scale: f64, rel_tol: f64) -> QuadResult {
    let ln_norm = lgamma(shape);
    let cut = scale * shape.min(1.0) * 0.5;
    // On [0, cut]: θ = cut u^{1/shape}; θ^{shape-1} dθ = cut^shape du / shape.
    let head = integrate(
        |u: f64| {
            let th = cut * u.powf(1.0 / shape);
            let lw = shape * (cut / scale).ln() - th / scale - ln_norm;
            lw.exp() / shape * f(th)
        },
        0.0,
        1.0,
        1e-300,
        rel_tol,
    );
    let density = |th: f64| ((shape - 1.0) * (th / scale).ln() - th / scale - ln_norm).exp() / scale;
    let width = scale * shape.sqrt().max(1.0);
    let tail = integrate_half_line(|th| density(th) * f(th), cut, width, rel_tol);
    QuadResult { value: head.value + tail.value, error: head.error + tail.error }
}

/// E f(X) for X ~ N(mean, var).
pub fn expect_normal<F: Fn(f64) -> f64>(f: F, mean: f64, var: f64, rel_tol: f64) -> QuadResult {
    let sd = var.sqrt();
    let c = 1.0 / (sd * (2.0 * std::f64::consts::PI).sqrt());
    integrate_real_line(
        |x| {
            let z = (x - mean) / sd;
            c * (-0.5 * z * z).exp() * f(x)
        },
        mean,
        sd,
        rel_tol,
    )
}
