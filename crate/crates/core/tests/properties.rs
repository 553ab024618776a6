use proptest::prelude::*;

use gpfree_core::analysis::{lemma7_bound, reduced_inequality_holds, sum_s_range};
use gpfree_core::arith::{count_factorizations, factorize, gcd};
use gpfree_core::functions::round_to_even_at_least_six;
use gpfree_core::mix::coin;
use gpfree_core::process::{run_process, ProcessConfig};
use gpfree_core::{GapFunction, GeomProgression, LengthFunction};

proptest! {
    #[test]
    fn d_is_multiplicative(m in 1u64..3000, n in 1u64..3000, i in 1u32..5, j in 1u32..5) {
        prop_assume!(gcd(m, n) == 1);
        prop_assert_eq!(
            count_factorizations(m * n, i, j),
            count_factorizations(m, i, j) * count_factorizations(n, i, j)
        );
    }

    #[test]
    fn d_prime_power_base_case(e in 0u32..30, i in 1u32..5, j in 1u32..5) {
        let brute = (0..=e).flat_map(|b| (0..=e).map(move |c| (b, c)))
            .filter(|&(b, c)| i * b + j * c <= e)
            .count() as u64;
        prop_assert_eq!(count_factorizations(2u64.pow(e.min(62)), i, j), brute);
    }

    #[test]
    fn factorization_reconstructs(n in 1u64..u64::MAX / 2) {
        let f = factorize(n);
        prop_assert_eq!(f.value(), Some(n));
        prop_assert!(f.pairs().windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn sum_s_is_additive(x in 1u64..200_000, len in 0u64..400, cut in 0u64..400, half in 3u32..6) {
        let cut = cut.min(len);
        let whole = sum_s_range(x, x + len, half);
        let parts = sum_s_range(x, x + cut, half) + sum_s_range(x + cut, x + len, half);
        prop_assert!((whole - parts).abs() <= 1e-12 * whole.max(1.0));
    }

    #[test]
    fn smoothing_bound_implies_power_bound(x in 2u64..10_000_000_000, h in 3.0f64..1e6, k in 3u32..40) {
        let kv = f64::from(2 * k);
        prop_assume!(reduced_inequality_holds(x, h, kv));
        let v = lemma7_bound(x, &GapFunction::Constant(h), &LengthFunction::Constant(kv), 1.0, 1.0).unwrap();
        prop_assert!(v >= h.powf(1.0 - std::f64::consts::LN_2) * (1.0 - 1e-12));
    }

    #[test]
    fn normalized_value_is_even_and_close(v in 3.0f64..200.0) {
        let r = round_to_even_at_least_six(v);
        prop_assert!(r >= 6.0 && r % 2.0 == 0.0);
        if v > 5.0 {
            prop_assert!(v.ceil() - r <= 1.0 && r <= v.ceil());
        }
    }

    #[test]
    fn constructor_is_orientation_and_gcd_invariant(a in 1u64..50, b in 1u64..30, c in 1u64..30, g in 1u64..5, len in 3u32..7) {
        prop_assume!(b != c);
        let p = GeomProgression::new(a, b, c, len).unwrap();
        let q = GeomProgression::new(a, c * g, b * g, len).unwrap();
        prop_assert_eq!(p, q);
        prop_assert!(p.b() < p.c() && gcd(p.b(), p.c()) == 1);
    }

    #[test]
    fn coin_ignores_enumeration_context(seed: u64, a in 1u64..1000, b in 1u64..50, c in 1u64..50) {
        prop_assume!(b != c);
        let p = GeomProgression::new(a, b, c, 6).unwrap();
        let q = GeomProgression::new(a, c, b, 6).unwrap();
        prop_assert_eq!(coin(seed, &p), coin(seed, &q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn process_is_reproducible(seed: u64, max in 1u64..20_000) {
        let cfg = ProcessConfig { max, k: LengthFunction::Constant(6.0), seed };
        prop_assert_eq!(run_process(&cfg).unwrap(), run_process(&cfg).unwrap());
    }
}
