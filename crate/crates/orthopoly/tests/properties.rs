use gibbs_orthopoly::PolyBasis;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Σ_j z_j P_j(x)² = 1 / w(x) at every node (dual orthogonality).
    #[test]
    fn hahn_completeness(alpha in 0.2f64..5.0, beta in 0.2f64..5.0, n in 1u64..90, frac in 0.0f64..=1.0) {
        let basis = PolyBasis::hahn(alpha, beta, n).unwrap();
        let x = (frac * n as f64).round();
        let p = basis.eval_upto(n, x).unwrap();
        let w = basis.weight(x).unwrap();
        let total: f64 = p.iter().enumerate().map(|(j, v)| basis.norm_constant(j as u64).unwrap() * v * v).sum();
        prop_assert!(rel(total * w, 1.0) < 1e-9, "total {}", total * w);
    }

    #[test]
    fn krawtchouk_self_dual(n in 1u64..60, p in 0.05f64..0.95, j in 0u64..60, x in 0u64..60) {
        let (j, x) = (j % (n + 1), x % (n + 1));
        let basis = PolyBasis::krawtchouk(n, p).unwrap();
        let a = basis.eval(j, x as f64).unwrap();
        let b = basis.eval(x, j as f64).unwrap();
        let scale = 1.0 / (basis.norm_constant(j).unwrap() * basis.weight(x as f64).unwrap()).sqrt();
        prop_assert!((a - b).abs() <= 1e-9 * scale.max(a.abs()), "{a} vs {b}");
    }

    #[test]
    fn meixner_self_dual(a in 0.3f64..4.0, alpha in 0.1f64..4.0, j in 0u64..15, x in 0u64..15) {
        let basis = PolyBasis::meixner(a, alpha).unwrap();
        let u = basis.eval(j, x as f64).unwrap();
        let v = basis.eval(x, j as f64).unwrap();
        prop_assert!(rel(u, v) < 1e-9, "{u} vs {v}");
    }

    #[test]
    fn charlier_self_dual(mu in 0.2f64..10.0, j in 0u64..15, x in 0u64..15) {
        let basis = PolyBasis::charlier(mu).unwrap();
        let u = basis.eval(j, x as f64).unwrap();
        let v = basis.eval(x, j as f64).unwrap();
        prop_assert!(rel(u, v) < 1e-9, "{u} vs {v}");
    }

    // The j-th divided difference of P_j is its leading coefficient.
    #[test]
    fn leading_coefficient_is_top_divided_difference(
        which in 0usize..5, j in 0u64..7, s in 0.3f64..3.0, t in 0.3f64..3.0,
    ) {
        let basis = match which {
            0 => PolyBasis::shifted_jacobi(s, t).unwrap(),
            1 => PolyBasis::laguerre(s).unwrap(),
            2 => PolyBasis::hermite(),
            3 => PolyBasis::meixner_pollaczek(s, t).unwrap(),
            _ => PolyBasis::chebyshev_u(),
        };
        let nodes: Vec<f64> = (0..=j).map(|i| 0.05 + 0.9 * i as f64 / (j.max(1)) as f64).collect();
        let mut dd: Vec<f64> = nodes.iter().map(|&x| basis.eval(j, x).unwrap()).collect();
        for level in 1..=j as usize {
            for i in (level..dd.len()).rev() {
                dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
            }
        }
        let lead = basis.leading_coefficient(j).unwrap();
        prop_assert!(rel(dd[j as usize], lead) < 1e-6, "{} vs {lead}", dd[j as usize]);
    }

    #[test]
    fn discrete_leading_coefficients(alpha in 0.3f64..4.0, beta in 0.3f64..4.0, n in 6u64..20, j in 0u64..6) {
        for basis in [
            PolyBasis::hahn(alpha, beta, n).unwrap(),
            PolyBasis::krawtchouk(n, alpha / (alpha + beta)).unwrap(),
            PolyBasis::meixner(alpha, beta).unwrap(),
            PolyBasis::charlier(alpha).unwrap(),
        ] {
            // forward differences at 0..=j
            let mut d: Vec<f64> = (0..=j).map(|x| basis.eval(j, x as f64).unwrap()).collect();
            for level in 1..=j as usize {
                for i in (level..d.len()).rev() {
                    d[i] = (d[i] - d[i - 1]) / level as f64;
                }
            }
            let lead = basis.leading_coefficient(j).unwrap();
            prop_assert!((d[j as usize] - lead).abs() <= 1e-8 * lead.abs().max(1e-300) + 1e-12,
                "{} j={j}: {} vs {lead}", basis.name(), d[j as usize]);
        }
    }
}
