use proptest::prelude::*;
use tcoh_core::foliation::{
    code_qubit_replacement, composed_flip_probability, convert_general_channel, convert_noise_model,
    convert_noise_model_with_stats, replacement_probability, syndrome_string, validate_code, Axis, CssCode,
    FoliationNoiseModel, GeneralPureZChannel, NoiseChannel, PureZKraus, PureZTerm, SpacetimeLocation,
    DEFAULT_TUPLE_CAP,
};
use tcoh_core::ptm::{ptm_from_kraus, rotation_unitary, KrausSet};
use tcoh_core::{Complex64, Error, Tolerances};

fn kraus_with_flip(q: f64) -> PureZKraus {
    PureZKraus::new(Complex64::new((1.0 - q).sqrt(), 0.0), Complex64::new(0.0, q.sqrt())).unwrap()
}

fn arb_pure_z() -> impl Strategy<Value = PureZKraus> {
    // trace preservation fixes the relative phase of beta to ±i
    (0.0f64..1.0, -3.2f64..3.2, any::<bool>()).prop_map(|(q, a, neg)| {
        let (sa, sb) = ((1.0 - q).sqrt(), if neg { -q.sqrt() } else { q.sqrt() });
        let i = Complex64::new(0.0, 1.0);
        PureZKraus::new(Complex64::new(sa * a.cos(), sa * a.sin()), i * Complex64::new(sb * a.cos(), sb * a.sin())).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composed_flip_inverts_replacement(p in 0.0f64..=0.5, w in 1usize..=8, t in 1usize..=4) {
        let q = composed_flip_probability(p, w);
        let beta = Complex64::new(0.0, q.sqrt());
        let (axis, back) = code_qubit_replacement(beta, w, t).unwrap();
        prop_assert_eq!(axis, if t % 2 == 1 { Axis::X } else { Axis::Z });
        prop_assert!((composed_flip_probability(back, w) - beta.norm_sqr()).abs() < 1e-12);
        // recovering p loses digits as p -> 1/2: dp/dq = 1 / (W (1-2p)^(W-1))
        let cond = 1.0 / (w as f64 * (1.0 - 2.0 * p).powi(w as i32 - 1));
        prop_assert!((back - p).abs() <= 1e-12 + 4.0 * f64::EPSILON * cond, "p = {}, W = {}: got {}", p, w, back);
        prop_assert_eq!(replacement_probability(beta.norm_sqr(), w).unwrap(), back);
    }

    #[test]
    fn single_term_general_equals_rank1(ks in prop::collection::vec(arb_pure_z(), 1..6)) {
        let rank1: Vec<NoiseChannel> = ks.iter().map(|k| NoiseChannel::Rank1(*k)).collect();
        let general: Vec<NoiseChannel> = ks
            .iter()
            .map(|k| NoiseChannel::General(GeneralPureZChannel::new(vec![PureZTerm { c: 1.0, alpha: k.alpha, beta: k.beta }]).unwrap()))
            .collect();
        let a = convert_general_channel(&rank1, DEFAULT_TUPLE_CAP).unwrap().flip;
        let b = convert_general_channel(&general, DEFAULT_TUPLE_CAP).unwrap().flip;
        prop_assert!((a - b).abs() < 1e-13);
        let prod = tcoh_core::foliation::combine_round_errors(&ks).beta.norm_sqr();
        prop_assert!((a - prod).abs() < 1e-13);
    }

    #[test]
    fn purity_gate_rejects_transverse_coherence(axis in prop::array::uniform3(-1.0f64..1.0), theta in 1e-4f64..0.5) {
        prop_assume!(axis[0].abs().max(axis[1].abs()) > 0.05);
        let k = KrausSet::unitary(rotation_unitary(axis, theta).unwrap()).unwrap();
        let e = NoiseChannel::from_kraus(&k, &Tolerances::default(), "here");
        prop_assert!(matches!(e, Err(Error::Purity { .. })), "{:?}", e);
    }
}

#[test]
fn purity_gate_threshold() {
    // X coherence just above and below the default 1e-10 tolerance
    for (theta, ok) in [(1e-9, false), (1e-12, true)] {
        let k = KrausSet::unitary(rotation_unitary([1.0, 0.0, 0.0], theta).unwrap()).unwrap();
        let r = NoiseChannel::from_kraus(&k, &Tolerances::default(), "slot");
        assert_eq!(r.is_ok(), ok, "theta = {theta}");
    }
    let z = KrausSet::unitary(rotation_unitary([0.0, 0.0, 1.0], 0.2).unwrap()).unwrap();
    let ch = NoiseChannel::from_kraus(&z, &Tolerances::default(), "slot").unwrap();
    assert!(ch.ptm().approx_eq(&ptm_from_kraus(&z).unwrap(), 1e-15));
}

#[test]
fn conversion_cost_is_linear() {
    let code = CssCode::four_qubit();
    let w = FoliationNoiseModel::default_widths(&code);
    let mut per_round = Vec::new();
    for rounds in 1..=4 {
        let m = FoliationNoiseModel::homogeneous(code.clone(), rounds, w.clone(), NoiseChannel::rotation(0.05)).unwrap();
        let (rep, stats) = convert_noise_model_with_stats(&m, &Tolerances::default(), DEFAULT_TUPLE_CAP).unwrap();
        assert_eq!(stats.kraus_products, m.locations().len() as u64);
        assert_eq!(stats.ptm_products, 0);
        assert_eq!(stats.tuples, 0);
        assert_eq!(rep.probs.len(), m.locations().len());
        per_round.push(stats.kraus_products);
    }
    let step = per_round[1] - per_round[0];
    assert!(per_round.windows(2).all(|x| x[1] - x[0] == step));
}

#[test]
fn homogeneous_rotation_is_uniform_per_qubit() {
    let code = CssCode::four_qubit();
    let w = FoliationNoiseModel::default_widths(&code);
    let m = FoliationNoiseModel::homogeneous(code, 2, w.clone(), NoiseChannel::rotation(0.1)).unwrap();
    let rep = convert_noise_model(&m).unwrap();
    // a code qubit's W rotations by θ compose to one rotation by Wθ
    for (loc, (_, p)) in &rep.probs {
        let wg = w[loc.gamma - 1];
        let q = (wg as f64 * 0.1).sin().powi(2);
        assert!((composed_flip_probability(*p, wg) - q).abs() < 1e-13, "{loc}");
    }
    assert!(rep.probs.contains_key(&SpacetimeLocation::new(5, 1, 6)));
    assert!(!rep.probs.contains_key(&SpacetimeLocation::new(5, 2, 1)));
}

#[test]
fn flip_probability_matches_kraus() {
    let k = kraus_with_flip(0.3);
    assert!((k.flip_probability() - 0.3).abs() < 1e-15);
    assert!(validate_code(&CssCode::four_qubit()).is_empty());
    assert_eq!(syndrome_string(&[vec![true], vec![]]), "1|-");
}
