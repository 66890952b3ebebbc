//! Orthonormal polynomial values at an eigenvalue of a finite Jacobi matrix.
//!
//! At a support point x of a finite family, (p̃_0(x), ..., p̃_n(x)) is an
//! eigenvector of the symmetric recurrence matrix. The forward recurrence loses
//! everything once the entries start to decay in j, so the eigenvector is
//! built from a twisted factorization instead: LDU from the top, UDL from the
//! bottom, joined where the two pivots agree best. Each side only ever
//! multiplies by ratios that shrink toward the joint.

/// Signed log-magnitudes of v_j / v_0 for the eigenvector of the tridiagonal
/// matrix (diag `b`, off-diagonals `a[1..]`) with eigenvalue `x`.
pub(crate) fn eigenvector_log_ratios(b: &[f64], a: &[f64], x: f64) -> Vec<(f64, f64)> {
    let n = b.len();
    let scale = b.iter().map(|v| v.abs()).chain(a.iter().map(|v| v.abs())).fold(1.0, f64::max);
    let tiny = f64::EPSILON * f64::EPSILON * scale;
    let fix = |d: f64| if d == 0.0 { tiny } else { d };
    let off = |j: usize| if j < n { a[j] } else { 0.0 };

    let mut dp = vec![0.0; n];
    for j in 0..n {
        let d = if j == 0 { b[0] - x } else { b[j] - x - off(j) * off(j) / dp[j - 1] };
        dp[j] = fix(d);
    }
    let mut dm = vec![0.0; n];
    for j in (0..n).rev() {
        let d = if j + 1 == n { b[j] - x } else { b[j] - x - off(j + 1) * off(j + 1) / dm[j + 1] };
        dm[j] = fix(d);
    }
    let k = (0..n)
        .min_by(|&i, &j| {
            let gi = (dp[i] + dm[i] - (b[i] - x)).abs();
            let gj = (dp[j] + dm[j] - (b[j] - x)).abs();
            gi.total_cmp(&gj)
        })
        .unwrap_or(0);

    // (ln|v_j|, sign v_j) with v_k = 1
    let mut v = vec![(0.0f64, 1.0f64); n];
    for j in (0..k).rev() {
        let r = -off(j + 1) / dp[j];
        v[j] = (v[j + 1].0 + r.abs().ln(), v[j + 1].1 * r.signum());
    }
    for j in k + 1..n {
        let r = -off(j) / dm[j];
        v[j] = (v[j - 1].0 + r.abs().ln(), v[j - 1].1 * r.signum());
    }
    let (l0, s0) = v[0];
    v.iter().map(|&(l, s)| (l - l0, s * s0)).collect()
}

pub(crate) fn eigenvector_ratios(b: &[f64], a: &[f64], x: f64) -> Vec<f64> {
    eigenvector_log_ratios(b, a, x)
        .into_iter()
        .map(|(l, s)| if l == f64::NEG_INFINITY { 0.0 } else { s * l.exp() })
        .collect()
}
