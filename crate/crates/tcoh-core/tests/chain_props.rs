mod common;

use common::arb_weak;
use proptest::prelude::*;
use tcoh_core::bounds::epsilon_of;
use tcoh_core::chain::{
    enumerate_average_channel, exact_average_series, frame_after, frame_marginal, h_dressed_twirl_product, ChainSpec,
    PauliFrame,
};
use tcoh_core::ptm::{compose, pauli_channel_ptm, rot_z_ptm};

fn weak_spec(params: &[common::WeakParams]) -> ChainSpec {
    ChainSpec::new(params.iter().map(|p| p.ptm()).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn enumeration_matches_recursion(params in prop::collection::vec(arb_weak(0.15, 0.02), 12)) {
        let spec = weak_spec(&params);
        prop_assume!(epsilon_of(&spec).unwrap().epsilon < 0.3);
        let exact = exact_average_series(&spec);
        for t in 1..=12 {
            let e = enumerate_average_channel(&spec, t).unwrap();
            prop_assert!(e.max_abs_diff(&exact[t - 1]) < 1e-12, "t = {}", t);
        }
    }

    #[test]
    fn z_like_errors_become_pauli(
        thetas in prop::collection::vec(-0.3f64..0.3, 50),
        pz in prop::collection::vec(0.0f64..0.01, 50),
    ) {
        let errors = thetas.iter().zip(&pz).map(|(t, p)| compose(&pauli_channel_ptm(0.0, 0.0, *p).unwrap(), &rot_z_ptm(*t)));
        let spec = ChainSpec::new(errors.collect()).unwrap();
        let exact = exact_average_series(&spec);
        for t in 1..=50 {
            let twirls = h_dressed_twirl_product(&spec, t).unwrap();
            prop_assert!(exact[t - 1].max_abs_diff(&twirls) < 1e-12, "t = {}", t);
            prop_assert!(exact[t - 1].is_pauli(1e-12));
        }
    }

    #[test]
    fn coherence_stays_bounded(params in arb_weak(0.1, 0.01)) {
        let spec = ChainSpec::homogeneous(params.ptm(), 200).unwrap();
        let eps = epsilon_of(&spec).unwrap().epsilon;
        prop_assume!(eps < 0.3);
        for (i, n) in exact_average_series(&spec).iter().enumerate() {
            let off = n.max_off_diagonal();
            prop_assert!(off <= 3.0 * eps + 1e-15, "t = {}: {} > 3 * {}", i + 1, off, eps);
        }
    }

    #[test]
    fn frames_are_markov(bits in prop::collection::vec(any::<bool>(), 1..40)) {
        let mut f = PauliFrame::IDENTITY;
        for (i, m) in bits.iter().enumerate() {
            f = f.advance(*m);
            prop_assert_eq!(f, frame_after(&bits[..=i]));
        }
    }
}

#[test]
fn marginals_are_uniform_over_support() {
    for t in 1..=12 {
        let m = frame_marginal(t).unwrap();
        let total: f64 = m.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-15);
        assert!(m.iter().all(|(f, _)| f.hadamard == (t % 2 == 1)));
    }
}
