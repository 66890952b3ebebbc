use gibbs_chains::{exact_matrix, ChainKind, ChainSpec};
use gibbs_models::{ConjugatePair, LocationPair, Model};
use gibbs_oracle::{brute_distances, brute_eigenvalues, to_rational};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn finite_chain() -> impl Strategy<Value = (Model, ChainKind)> {
    prop_oneof![
        (1u64..15, 0.2f64..5.0, 0.2f64..5.0)
            .prop_map(|(n, a, b)| (ConjugatePair::beta_binomial(n, a, b).unwrap().into(), ChainKind::XChain)),
        (1u64..8, 1u64..8, 0.05f64..0.95, any::<bool>()).prop_map(|(n1, n2, p, x)| {
            let kind = if x { ChainKind::XChain } else { ChainKind::ThetaChain };
            (LocationPair::binomial(n1, n2, p).unwrap().into(), kind)
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn small_fractions_round_trip(num in -100_000i64..100_000, den in 1i64..100_000) {
        let v = num as f64 / den as f64;
        let q = to_rational("v", v).unwrap();
        prop_assert_eq!(q, BigRational::new(BigInt::from(num), BigInt::from(den)));
    }

    #[test]
    fn spectra_lie_in_the_unit_interval((model, kind) in finite_chain()) {
        let m = exact_matrix(&ChainSpec::new(model, kind).unwrap()).unwrap();
        let e = brute_eigenvalues(&m).unwrap();
        prop_assert!((e[0] - 1.0).abs() < 1e-12);
        // Gibbs marginal chains are positive operators
        prop_assert!(e.iter().all(|v| *v > -1e-12 && *v < 1.0 + 1e-12));
        prop_assert!(e.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn exact_distances_shrink((model, kind) in finite_chain(), start in 0.0f64..1.0, ell in 0usize..15) {
        let m = exact_matrix(&ChainSpec::new(model, kind).unwrap()).unwrap();
        let s = ((m.dim() - 1) as f64 * start).round() as usize;
        let a = brute_distances(&m, s, ell);
        let b = brute_distances(&m, s, ell + 1);
        prop_assert!(a.tv <= 0.5 * a.chi_square.sqrt() + 1e-12);
        prop_assert!(b.tv <= a.tv + 1e-12);
        prop_assert!(b.chi_square <= a.chi_square * (1.0 + 1e-9) + 1e-12);
    }
}
