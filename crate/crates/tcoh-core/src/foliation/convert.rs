use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use super::noise::{Axis, FoliationNoiseModel, NoiseChannel, PauliReplacement, PureZKraus, QubitRole, SpacetimeLocation};
use crate::ptm::{compose, is_pure_z_coherent, Ptm};
use crate::{math, Error, Pauli, Result, Tolerances};

/// Default cap on the number of Kraus-term tuples in one general conversion.
pub const DEFAULT_TUPLE_CAP: u64 = 1_000_000;

/// Operation counts of one conversion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConversionStats {
    /// Products of two `αI + βZ` operators.
    pub kraus_products: u64,
    /// 4×4 PTM products spent on the consistency cross-check of general channels.
    pub ptm_products: u64,
    /// Kraus-term tuples enumerated for general channels.
    pub tuples: u64,
}

fn mul(a: PureZKraus, b: PureZKraus) -> PureZKraus {
    PureZKraus { alpha: a.alpha * b.alpha + a.beta * b.beta, beta: a.alpha * b.beta + a.beta * b.alpha }
}

/// Product `N_W ⋯ N_1` of rank-1 channels at one (gamma, t). All factors
/// commute, so the order only matters for rounding.
pub fn combine_round_errors(channels: &[PureZKraus]) -> PureZKraus {
    let mut acc = PureZKraus::identity();
    for k in channels {
        acc = mul(*k, acc);
    }
    PureZKraus::normalized(acc.alpha, acc.beta)
}

/// Negative bases this close to zero are rounding, not a missing root.
const BASE_ROUNDING: f64 = 1e-14;

/// Per-slot flip probability `p = ½(1 − (1 − 2q)^{1/W})` whose `W`-fold
/// composition flips with total probability `q`.
pub fn replacement_probability(q: f64, w: usize) -> Result<f64> {
    if w == 0 {
        return Err(Error::Domain("slot count W must be at least 1".into()));
    }
    if !(-1e-15..=1.0 + 1e-12).contains(&q) {
        return Err(Error::Domain(format!("flip probability |beta|^2 = {q} outside [0, 1]")));
    }
    let q = q.clamp(0.0, 1.0);
    if w == 1 {
        return Ok(q);
    }
    let mut base = 1.0 - 2.0 * q;
    // |beta|^2 = 1/2 computed from a unit-norm pair can land a few ulps high
    if base < 0.0 && base > -BASE_ROUNDING {
        base = 0.0;
    }
    let root = if base >= 0.0 {
        math::pow(base, 1.0 / w as f64)
    } else if w % 2 == 1 {
        -math::pow(-base, 1.0 / w as f64)
    } else {
        return Err(Error::NoRealRoot { base, w });
    };
    Ok(0.5 * (1.0 - root))
}

/// `½(1 − (1 − 2p)^W)`: total flip probability of `W` independent flips.
pub fn composed_flip_probability(p: f64, w: usize) -> f64 {
    let mut base = 1.0;
    for _ in 0..w {
        base *= 1.0 - 2.0 * p;
    }
    0.5 * (1.0 - base)
}

/// Replacement for a code qubit in round `t`: X flips at odd `t`, Z at even `t`.
pub fn code_qubit_replacement(beta: C64, w: usize, t: usize) -> Result<(Axis, f64)> {
    let axis = if t % 2 == 1 { Axis::X } else { Axis::Z };
    Ok((axis, replacement_probability(beta.norm_sqr(), w)?))
}

/// Replacement for an ancilla: Z flips that reproduce its measurement-error rate.
pub fn ancilla_replacement(beta: C64, w: usize) -> Result<(Axis, f64)> {
    Ok((Axis::Z, replacement_probability(beta.norm_sqr(), w)?))
}

/// Total flip probability of the product of general channels at one (gamma, t).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralConversion {
    /// `Σ_tuples Π c_i |β_tuple|²`.
    pub flip: f64,
    pub tuples: u64,
}

/// Enumerates one Kraus term per channel, composes each tuple into a single
/// `αI + βZ` and sums `Π c_i |β|²`. The result is cross-checked against the
/// `(X,X)` entry of the composed PTM.
pub fn convert_general_channel(channels: &[NoiseChannel], cap: u64) -> Result<GeneralConversion> {
    let mut stats = ConversionStats::default();
    general_flip(channels, cap, &mut stats)
}

fn general_flip(channels: &[NoiseChannel], cap: u64, stats: &mut ConversionStats) -> Result<GeneralConversion> {
    let terms: Vec<_> = channels.iter().map(NoiseChannel::terms).collect();
    let count = terms.iter().fold(1u64, |acc, t| acc.saturating_mul(t.len() as u64));
    if count > cap {
        return Err(Error::ResourceLimit { what: "Kraus-term tuples".into(), requested: count, cap });
    }
    let mut flip = 0.0;
    let mut idx = alloc::vec![0usize; terms.len()];
    loop {
        let mut op = PureZKraus::identity();
        let mut c = 1.0;
        for (t, &i) in terms.iter().zip(&idx) {
            op = mul(PureZKraus { alpha: t[i].alpha, beta: t[i].beta }, op);
            c *= t[i].c;
            stats.kraus_products += 1;
        }
        flip += c * op.beta.norm_sqr();
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                stats.tuples += count;
                return finish(channels, flip, count, stats);
            }
            idx[pos] += 1;
            if idx[pos] < terms[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn finish(channels: &[NoiseChannel], flip: f64, tuples: u64, stats: &mut ConversionStats) -> Result<GeneralConversion> {
    let mut total = Ptm::identity();
    for ch in channels {
        total = compose(&ch.ptm(), &total);
        stats.ptm_products += 1;
    }
    let via_ptm = 0.5 * (1.0 - total.get(Pauli::X, Pauli::X));
    let residue = math::abs(via_ptm - flip);
    if residue > 1e-12 {
        return Err(Error::NumericConsistency { what: "tuple sum against PTM product".into(), residue, tol: 1e-12 });
    }
    Ok(GeneralConversion { flip, tuples })
}

pub fn convert_noise_model(model: &FoliationNoiseModel) -> Result<PauliReplacement> {
    Ok(convert_noise_model_with_stats(model, &Tolerances::default(), DEFAULT_TUPLE_CAP)?.0)
}

/// Converts every (gamma, t) independently and spreads the resulting p over
/// all `W_gamma` slots. Empty slots are noiseless.
pub fn convert_noise_model_with_stats(
    model: &FoliationNoiseModel,
    tol: &Tolerances,
    cap: u64,
) -> Result<(PauliReplacement, ConversionStats)> {
    let code = model.code();
    let mut stats = ConversionStats::default();
    let mut probs = BTreeMap::new();
    for (loc, ch) in model.channels() {
        if !is_pure_z_coherent(&ch.ptm(), tol.purity) {
            return Err(Error::Purity { location: format!("{loc}"), detail: "PTM fails the pure Z-coherence gate".into() });
        }
    }
    for gamma in 1..=code.num_locations() {
        let role = QubitRole::of(code, gamma).expect("gamma in range");
        let w = model.width(gamma);
        for t in (1..=2 * model.rounds()).filter(|t| role.active_in(*t)) {
            let slots: Vec<Option<&NoiseChannel>> =
                (1..=w).map(|s| model.channel(SpacetimeLocation::new(gamma, t, s))).collect();
            let here = format!("(gamma={gamma}, t={t})");
            let q = if slots.iter().all(|c| matches!(c, None | Some(NoiseChannel::Rank1(_)))) {
                let ks: Vec<PureZKraus> = slots
                    .iter()
                    .map(|c| match c {
                        Some(NoiseChannel::Rank1(k)) => *k,
                        _ => PureZKraus::identity(),
                    })
                    .collect();
                stats.kraus_products += ks.len() as u64;
                combine_round_errors(&ks).beta.norm_sqr()
            } else {
                let chans: Vec<NoiseChannel> =
                    slots.iter().map(|c| c.cloned().unwrap_or(NoiseChannel::Rank1(PureZKraus::identity()))).collect();
                general_flip(&chans, cap, &mut stats).map_err(|e| Error::at(here.clone(), e))?.flip
            };
            let beta = C64::new(math::sqrt(q.max(0.0)), 0.0);
            let (axis, p) = match role {
                QubitRole::Code(_) => code_qubit_replacement(beta, w, t),
                _ => ancilla_replacement(beta, w),
            }
            .map_err(|e| Error::at(here, e))?;
            for s in 1..=w {
                probs.insert(SpacetimeLocation::new(gamma, t, s), (axis, p));
            }
        }
    }
    let rep = PauliReplacement { code: code.clone(), rounds: model.rounds(), widths: model.widths().to_vec(), probs };
    Ok((rep, stats))
}
