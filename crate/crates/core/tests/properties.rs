use pliwave_core::signal::two_sided_transform;
use pliwave_core::{coif2_filters, dwt, idwt, power, soft_threshold, Signal};
use proptest::prelude::*;

fn samples(min: usize, max: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0f64..100.0, min..max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_any_length(x in samples(32, 3000), levels in 1usize..=5) {
        let bank = coif2_filters();
        let s = Signal::new(x.clone(), 1000.0).unwrap();
        let y = idwt(&dwt(&s, &bank, levels).unwrap(), &bank).unwrap();
        let scale = x.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (a, b) in x.iter().zip(y.samples()) {
            prop_assert!((a - b).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn parseval(x in samples(1, 2000)) {
        let s = Signal::new(x.clone(), 1000.0).unwrap();
        let et: f64 = x.iter().map(|v| v * v).sum();
        let ef: f64 = two_sided_transform(&s).iter().map(|z| z.norm_sqr()).sum::<f64>() / x.len() as f64;
        prop_assert!((ef - et).abs() <= 1e-9 * et.max(1e-300));
    }

    #[test]
    fn power_is_quadratic(x in samples(1, 500), a in -10.0f64..10.0) {
        let s = Signal::new(x, 1000.0).unwrap();
        let p = power(&s.scaled(a).unwrap());
        prop_assert!((p - a * a * power(&s)).abs() <= 1e-12 * (1.0 + p));
    }

    #[test]
    fn soft_threshold_shrinks(x in samples(0, 300), lambda in 0.0f64..50.0) {
        let y = soft_threshold(&x, lambda).unwrap();
        for (a, b) in x.iter().zip(&y) {
            prop_assert!(b.abs() <= a.abs());
            prop_assert!(*b == 0.0 || b.signum() == a.signum());
            prop_assert!(((a.abs() - b.abs()) - lambda.min(a.abs())).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }
}
