mod common;

use common::arb_weak;
use proptest::prelude::*;
use tcoh_core::bounds::{
    epsilon_of, epsilon_from_infidelity, second_order_factor, simple_proof_estimate, third_order_factor,
    RotationSchedule,
};
use tcoh_core::chain::{exact_average_series, randomized_compiling_channel, ChainSpec};
use tcoh_core::ptm::{average_infidelity, pauli_channel_ptm, rotation_ptm};
use tcoh_core::Pauli;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn factors_contain_exact_ratios(params in prop::collection::vec(arb_weak(0.12, 0.01), 100)) {
        let spec = ChainSpec::new(params.iter().map(|p| p.ptm()).collect()).unwrap();
        prop_assume!(epsilon_of(&spec).unwrap().epsilon < 0.3);
        let n = exact_average_series(&spec);
        let d = |t: usize, p: Pauli| n[t - 1].get(p, p);
        for t in 3..=100 {
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                let f = second_order_factor(&spec, t, p).unwrap();
                let r = d(t, p) / d(t - 1, p);
                prop_assert!(f.lo - 1e-13 <= r && r <= f.hi + 1e-13, "t={} {:?}: {} not in [{}, {}]", t, p, r, f.lo, f.hi);
                if t >= 4 {
                    let g = third_order_factor(&spec, t, p).unwrap();
                    let r2 = d(t, p) / d(t - 2, p);
                    prop_assert!(g.lo - 1e-13 <= r2 && r2 <= g.hi + 1e-13, "t={} {:?}: {} not in [{}, {}]", t, p, r2, g.lo, g.hi);
                }
            }
        }
    }

    #[test]
    fn pauli_inputs_give_exact_factors(
        ps in prop::collection::vec(prop::array::uniform3(0.0f64..0.01), 8),
    ) {
        let spec = ChainSpec::new(ps.iter().map(|p| pauli_channel_ptm(p[0], p[1], p[2]).unwrap()).collect()).unwrap();
        for t in 4..=8 {
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                prop_assert!(second_order_factor(&spec, t, p).unwrap().width() < 1e-15);
                prop_assert!(third_order_factor(&spec, t, p).unwrap().width() < 1e-15);
            }
        }
    }

    #[test]
    fn simple_estimate_without_correlations(thetas in prop::collection::vec(prop::array::uniform3(-0.01f64..0.01), 1..20)) {
        // zero angles at even steps remove every adjacent correlation
        let sched: Vec<[f64; 3]> =
            thetas.iter().enumerate().map(|(i, th)| if i % 2 == 1 { [0.0; 3] } else { *th }).collect();
        let est = simple_proof_estimate(&RotationSchedule { thetas: sched.clone() });
        let spec = ChainSpec::new(sched.iter().map(|th| rotation_ptm(*th)).collect()).unwrap();
        for t in 1..=sched.len() {
            let rc = average_infidelity(&randomized_compiling_channel(&spec, t).unwrap());
            // agreement up to the quartic terms the expansion drops
            let budget: f64 = sched[..t].iter().map(|th| th.iter().map(|x| x * x).sum::<f64>()).sum();
            prop_assert!((est.values[t - 1] - rc).abs() <= budget * budget + 1e-18, "t = {}", t);
        }
    }
}

#[test]
fn epsilon_from_infidelity_value() {
    let e = epsilon_from_infidelity(0.01);
    assert!((e - 0.06f64.sqrt() / 0.97).abs() < 1e-15);
}
