use lab::{chi_square, mann_kendall, tv_windows};
use proptest::prelude::*;
use rand::SeedableRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tv_is_a_symmetric_distance_in_unit_interval(
        a in prop::collection::vec(0u8..6, 1..60),
        b in prop::collection::vec(0u8..6, 1..60),
    ) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let ab = tv_windows(&a, &b, &mut rng).unwrap();
        let ba = tv_windows(&b, &a, &mut rng).unwrap();
        prop_assert!((ab.tv_hat - ba.tv_hat).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&ab.tv_hat));
        prop_assert!((0.0..=1.0).contains(&ab.corrected));
        prop_assert!(ab.ci.0 <= ab.ci.1);
    }

    #[test]
    fn kendall_statistic_flips_with_the_response(
        pts in prop::collection::vec((0u8..5, 0u8..2), 3..40),
    ) {
        let x: Vec<f64> = pts.iter().map(|p| p.0 as f64).collect();
        let y: Vec<f64> = pts.iter().map(|p| p.1 as f64).collect();
        let neg: Vec<f64> = y.iter().map(|v| -v).collect();
        let (up, down) = (mann_kendall(&x, &y), mann_kendall(&x, &neg));
        if let (Ok(up), Ok(down)) = (up, down) {
            prop_assert_eq!(up.s, -down.s);
            prop_assert!((0.0..=1.0).contains(&up.p_decreasing));
        }
    }

    #[test]
    fn chi_square_vanishes_on_expected_counts(counts in prop::collection::vec(1u64..50, 2..10)) {
        let e: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
        let (stat, p) = chi_square(&counts, &e).unwrap();
        prop_assert!(stat.abs() < 1e-12);
        prop_assert!((p - 1.0).abs() < 1e-9);
    }
}
