use proptest::prelude::*;
use tcoh_core::threshold::{evaluate, pauli_probability_from_angle, theta_threshold, threshold_lower_bound, ThresholdInputs};

proptest! {
    #[test]
    fn angle_round_trip(p in 0.0f64..=1.0, n in 1u32..10) {
        let theta = theta_threshold(p, n).unwrap();
        prop_assert!((pauli_probability_from_angle(theta, n).unwrap() - p).abs() < 1e-12);
    }

    #[test]
    fn theta_increases_with_p(a in 0.0f64..1.0, d in 1e-9f64..0.5, n in 1u32..10) {
        let b = (a + d).min(1.0);
        prop_assume!(b > a);
        prop_assert!(theta_threshold(b, n).unwrap() > theta_threshold(a, n).unwrap());
    }

    #[test]
    fn bound_decreases_with_b(b in 2u32..1000) {
        prop_assert!(threshold_lower_bound(b + 1).unwrap() < threshold_lower_bound(b).unwrap());
    }
}

#[test]
fn defaults() {
    let r = evaluate(&ThresholdInputs::default()).unwrap();
    assert_eq!(r.p_th_bound, 0.01);
    assert!((r.theta_bound - 0.020033484232311).abs() < 1e-12);
    assert!(theta_threshold(1.5, 5).is_err());
    assert!(threshold_lower_bound(1).is_err());
}
