use proptest::prelude::*;
use umbra_core::bell::{bell_partition_oracle, complete_bell, partial_bell, PartialBellTable};
use umbra_core::rational::{pow, ratio};
use umbra_core::Rational;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

fn g_vector(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(small_rational(), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn recursion_matches_partition_oracle(g in g_vector(9)) {
        for n in 1..=9 {
            for k in 1..=n {
                prop_assert_eq!(partial_bell(n, k, &g).unwrap(), bell_partition_oracle(n, k, &g).unwrap());
            }
        }
    }

    // B_{n,k}(α β g_1, α β^2 g_2, ...) = α^k β^n B_{n,k}(g)
    #[test]
    fn homogeneous_and_isobaric(g in g_vector(8), alpha in small_rational(), beta in small_rational()) {
        let scaled: Vec<Rational> = g
            .iter()
            .enumerate()
            .map(|(i, gi)| &alpha * pow(&beta, i + 1) * gi)
            .collect();
        let plain = PartialBellTable::new(8, &g);
        let moved = PartialBellTable::new(8, &scaled);
        for (n, k, b) in plain.entries() {
            let expected = pow(&alpha, k) * pow(&beta, n) * b;
            prop_assert_eq!(moved.get(n, k).unwrap(), &expected);
        }
    }

    // Y_n(f; β g_1, β^2 g_2, ...) = β^n Y_n(f; g)
    #[test]
    fn complete_bell_scaling(f in g_vector(8), g in g_vector(8), beta in small_rational()) {
        for n in 1..=8 {
            let gs: Vec<Rational> = g[..n].iter().enumerate().map(|(k, gk)| pow(&beta, k + 1) * gk).collect();
            let lhs = complete_bell(n, &f[..n], &gs).unwrap();
            let rhs = pow(&beta, n) * complete_bell(n, &f[..n], &g[..n]).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
