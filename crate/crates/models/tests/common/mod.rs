#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Upper 1e-4 quantile of χ²(df), Wilson–Hilferty.
pub fn chi2_critical(df: usize) -> f64 {
    let d = df as f64;
    let z = 3.719;
    d * (1.0 - 2.0 / (9.0 * d) + z * (2.0 / (9.0 * d)).sqrt()).powi(3)
}

/// Pearson statistic after pooling cells until each expects at least 5.
/// Returns (statistic, degrees of freedom).
pub fn pearson(observed: &[f64], expected: &[f64]) -> (f64, usize) {
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut o, mut e) = (0.0, 0.0);
    for (&oi, &ei) in observed.iter().zip(expected) {
        o += oi;
        e += ei;
        if e >= 5.0 {
            cells.push((o, e));
            o = 0.0;
            e = 0.0;
        }
    }
    if e > 0.0 || o > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += o;
                last.1 += e;
            }
            None => cells.push((o, e)),
        }
    }
    let stat = cells.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    (stat, cells.len().saturating_sub(1))
}

/// Goodness of fit of integer draws against a mass function on 0..=top (top collects the tail).
pub fn assert_discrete_fit(draws: &[f64], mass: impl Fn(u64) -> f64, top: u64, label: &str) {
    let n = draws.len() as f64;
    let mut obs = vec![0.0; top as usize + 1];
    for &d in draws {
        assert!(d.fract() == 0.0 && d >= 0.0, "{label}: non-integer draw {d}");
        obs[(d as u64).min(top) as usize] += 1.0;
    }
    let mut exp: Vec<f64> = (0..top).map(|k| n * mass(k)).collect();
    let head: f64 = exp.iter().sum();
    exp.push((n - head).max(0.0));
    let (stat, df) = pearson(&obs, &exp);
    let crit = chi2_critical(df.max(1));
    assert!(stat < crit, "{label}: chi-square {stat:.2} on {df} df exceeds {crit:.2}");
}

/// Goodness of fit of real draws against bin probabilities between consecutive `edges`,
/// plus the two outer tails given by `cdf`.
pub fn assert_continuous_fit(draws: &[f64], cdf: impl Fn(f64) -> f64, edges: &[f64], label: &str) {
    let n = draws.len() as f64;
    let mut obs = vec![0.0; edges.len() + 1];
    for &d in draws {
        let i = edges.partition_point(|&e| e <= d);
        obs[i] += 1.0;
    }
    let mut probs = Vec::with_capacity(edges.len() + 1);
    let mut prev = 0.0;
    for &e in edges {
        let c = cdf(e);
        probs.push(c - prev);
        prev = c;
    }
    probs.push(1.0 - prev);
    let exp: Vec<f64> = probs.iter().map(|p| p * n).collect();
    let (stat, df) = pearson(&obs, &exp);
    let crit = chi2_critical(df.max(1));
    assert!(stat < crit, "{label}: chi-square {stat:.2} on {df} df exceeds {crit:.2}");
}

/// k-th forward difference with unit step of the values, divided by k!.
pub fn top_difference(values: &[f64]) -> f64 {
    let mut d = values.to_vec();
    let k = d.len() - 1;
    for level in 1..=k {
        for i in (level..d.len()).rev() {
            d[i] = d[i] - d[i - 1];
        }
    }
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    d[k] / fact
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}
