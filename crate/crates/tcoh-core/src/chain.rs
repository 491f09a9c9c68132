//! The single-qubit teleportation chain.
//!
//! Each step applies the Kraus operator `H Z^{m_t} / √2` and then the error
//! `𝓔_t`. Moving all frames to the end turns the error at step `t` into
//! `F_t⁻¹ 𝓔_t F_t`, and the quantity of interest is the average over outcomes
//! of `𝓝_t = 𝓔'_t ∘ ··· ∘ 𝓔'_1`. Everything here is reported in that
//! interaction picture (final frame inverse already applied).

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub use crate::frame::PauliFrame;
use crate::ptm::{average_infidelity, conjugate, hadamard_ptm, pauli_twirl, Ptm};
use crate::{math, Error, Pauli, Result, Tolerances};

/// Largest `t` accepted by [`enumerate_average_channel`].
pub const ENUMERATION_MAX_T: usize = 20;

/// Samples per Monte Carlo block. Blocks are the unit of parallelism and each
/// one draws from its own ChaCha stream, so results do not depend on how
/// blocks are scheduled.
pub const MC_BLOCK: u64 = 4096;

/// Frame after the outcomes `m_1, m_2, ...`, from the closed form: the
/// Hadamard is present for odd length, odd-position outcomes feed the Z power
/// and even-position outcomes feed the X power.
pub fn frame_after(outcomes: &[bool]) -> PauliFrame {
    let t = outcomes.len();
    let mut x = false;
    let mut z = false;
    for (i, &m) in outcomes.iter().enumerate() {
        if (i + 1) % 2 == 0 {
            x ^= m;
        } else {
            z ^= m;
        }
    }
    if t % 2 == 0 {
        PauliFrame::new(false, Pauli::from_bits(x, z))
    } else {
        // H X^a Z^b with a from even positions, b from odd positions.
        PauliFrame::new(true, Pauli::from_bits(x, z))
    }
}

/// The frames reachable at step `t`, each with probability `1/len`.
pub fn frame_support(t: usize) -> Result<Vec<PauliFrame>> {
    match t {
        0 => Err(Error::Domain("frame marginal needs t >= 1".to_string())),
        1 => Ok(alloc::vec![PauliFrame::new(true, Pauli::I), PauliFrame::new(true, Pauli::Z)]),
        t => {
            let h = t % 2 == 1;
            Ok(Pauli::ALL.iter().map(|&p| PauliFrame::new(h, p)).collect())
        }
    }
}

/// Uniform marginal distribution of the frame at step `t`.
pub fn frame_marginal(t: usize) -> Result<Vec<(PauliFrame, f64)>> {
    let s = frame_support(t)?;
    let w = 1.0 / s.len() as f64;
    Ok(s.into_iter().map(|f| (f, w)).collect())
}

/// Per-timestep error channels of a chain, indexed from `t = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSpec {
    errors: Vec<Ptm>,
}

impl ChainSpec {
    pub fn new(errors: Vec<Ptm>) -> Result<ChainSpec> {
        if errors.is_empty() {
            return Err(Error::Domain("a chain needs at least one timestep".to_string()));
        }
        let tol = Tolerances::default().completeness;
        for (i, e) in errors.iter().enumerate() {
            let row = e.0[0];
            let dev = math::abs(row[0] - 1.0)
                .max(math::abs(row[1]))
                .max(math::abs(row[2]))
                .max(math::abs(row[3]));
            if dev > tol {
                return Err(Error::Domain(format!(
                    "error at t={} is not trace preserving: first row {:?}",
                    i + 1,
                    row
                )));
            }
        }
        Ok(ChainSpec { errors })
    }

    /// The same error at every step.
    pub fn homogeneous(error: Ptm, steps: usize) -> Result<ChainSpec> {
        ChainSpec::new(alloc::vec![error; steps])
    }

    pub fn len(&self) -> usize {
        self.errors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.errors.is_empty()
    }

    /// Error at step `t` (1-based).
    pub fn error(&self, t: usize) -> &Ptm {
        &self.errors[t - 1]
    }

    pub fn errors(&self) -> &[Ptm] {
        &self.errors
    }

    fn check_t(&self, t: usize) -> Result<()> {
        if t == 0 || t > self.errors.len() {
            return Err(Error::Domain(format!("t={t} outside 1..={}", self.errors.len())));
        }
        Ok(())
    }
}

/// The error at step `t` with the Hadamard of odd steps folded in:
/// `H 𝓔_t H` for odd `t`, `𝓔_t` for even `t`.
pub fn h_dressed_error(spec: &ChainSpec, t: usize) -> Ptm {
    let e = *spec.error(t);
    if t % 2 == 1 {
        let h = hadamard_ptm();
        h * e * h
    } else {
        e
    }
}

/// Frame-conditioned average channels after step `t`.
///
/// Stores `Pr(F_t = f) · E[𝓝_t | F_t = f]` together with `Pr(F_t = f)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalChannelState {
    t: usize,
    joint: [Ptm; 8],
    weight: [f64; 8],
}

impl ConditionalChannelState {
    /// Before the first teleportation: identity frame, identity channel.
    pub fn initial() -> ConditionalChannelState {
        let mut joint = [Ptm::zero(); 8];
        let mut weight = [0.0; 8];
        joint[PauliFrame::IDENTITY.index()] = Ptm::identity();
        weight[PauliFrame::IDENTITY.index()] = 1.0;
        ConditionalChannelState { t: 0, joint, weight }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn support(&self) -> Vec<PauliFrame> {
        PauliFrame::all().into_iter().filter(|f| self.weight[f.index()] > 0.0).collect()
    }

    pub fn weight(&self, f: PauliFrame) -> f64 {
        self.weight[f.index()]
    }

    /// `E[𝓝_t | F_t = f]`, or `None` outside the support.
    pub fn conditional(&self, f: PauliFrame) -> Option<Ptm> {
        let w = self.weight[f.index()];
        (w > 0.0).then(|| self.joint[f.index()].scale(1.0 / w))
    }

    /// Unconditional average `Σ_f Pr(f) E[𝓝_t | f]`.
    pub fn average(&self) -> Ptm {
        self.joint.iter().fold(Ptm::zero(), |a, j| a + *j)
    }

    /// Signed combination of conditional channels that carries the coherent
    /// part of the recursion.
    pub fn delta(&self) -> Ptm {
        let c = |h: bool, p: Pauli| self.conditional(PauliFrame::new(h, p)).unwrap_or(Ptm::zero());
        match self.t {
            0 => Ptm::zero(),
            1 => (c(true, Pauli::I) - c(true, Pauli::Z)).scale(0.5),
            t if t % 2 == 0 => {
                (c(false, Pauli::I) - c(false, Pauli::X) - c(false, Pauli::Y) + c(false, Pauli::Z))
                    .scale(0.25)
            }
            _ => (c(true, Pauli::I) + c(true, Pauli::X) - c(true, Pauli::Y) - c(true, Pauli::Z))
                .scale(0.25),
        }
    }
}

/// One step of the frame-conditioned recursion.
///
/// Each frame at step `t` is reached from predecessors `g` via `H Z^m ∘ g`;
/// with joint weights this is `J_t(f) = Σ_{g, m : H Z^m g = f} ½ · 𝓔'_t(f) J_{t−1}(g)`,
/// which equals summing `Pr(g | f) 𝓔'_t 𝓝̄_{t−1}|g` over the predecessors.
pub fn advance_conditional(state: &ConditionalChannelState, error_t: &Ptm) -> ConditionalChannelState {
    let mut joint = [Ptm::zero(); 8];
    let mut weight = [0.0; 8];
    for g in state.support() {
        for m in [false, true] {
            let f = g.advance(m);
            let step = conjugate(error_t, f) * state.joint[g.index()];
            joint[f.index()] = joint[f.index()] + step.scale(0.5);
            weight[f.index()] += 0.5 * state.weight[g.index()];
        }
    }
    ConditionalChannelState { t: state.t + 1, joint, weight }
}

/// Conditional state after step `t`.
pub fn conditional_state(spec: &ChainSpec, t: usize) -> Result<ConditionalChannelState> {
    spec.check_t(t)?;
    let mut s = ConditionalChannelState::initial();
    for e in &spec.errors[..t] {
        s = advance_conditional(&s, e);
    }
    Ok(s)
}

/// Exact averages `𝓝̄_1, ..., 𝓝̄_T` in one pass.
pub fn exact_average_series(spec: &ChainSpec) -> Vec<Ptm> {
    let mut s = ConditionalChannelState::initial();
    spec.errors
        .iter()
        .map(|e| {
            s = advance_conditional(&s, e);
            s.average()
        })
        .collect()
}

/// Exact average channel `𝓝̄_t`.
pub fn exact_average_channel(spec: &ChainSpec, t: usize) -> Result<Ptm> {
    Ok(conditional_state(spec, t)?.average())
}

/// The coherent companion `δ𝓝_t` of the recursion.
pub fn delta_channel(spec: &ChainSpec, t: usize) -> Result<Ptm> {
    Ok(conditional_state(spec, t)?.delta())
}

/// Brute-force average over all `2^t` outcome strings.
pub fn enumerate_average_channel(spec: &ChainSpec, t: usize) -> Result<Ptm> {
    spec.check_t(t)?;
    if t > ENUMERATION_MAX_T {
        return Err(Error::ResourceLimit {
            what: "outcome enumeration length".to_string(),
            requested: t as u64,
            cap: ENUMERATION_MAX_T as u64,
        });
    }
    // Depth-first over outcome prefixes, carrying (frame, product).
    let mut total = Ptm::zero();
    let mut stack: Vec<(usize, PauliFrame, Ptm)> = alloc::vec![(0, PauliFrame::IDENTITY, Ptm::identity())];
    while let Some((depth, frame, prod)) = stack.pop() {
        if depth == t {
            total = total + prod;
            continue;
        }
        for m in [false, true] {
            let f = frame.advance(m);
            stack.push((depth + 1, f, conjugate(spec.error(depth + 1), f) * prod));
        }
    }
    Ok(total.scale(1.0 / (1u64 << t) as f64))
}

/// `𝓔_t ∘ ··· ∘ 𝓔_1` with no frames.
pub fn free_accumulation_channel(spec: &ChainSpec, t: usize) -> Result<Ptm> {
    spec.check_t(t)?;
    Ok(spec.errors[..t].iter().fold(Ptm::identity(), |acc, e| *e * acc))
}

/// Composition of the in-place twirls of `𝓔_1 .. 𝓔_t`, with no Hadamards.
pub fn randomized_compiling_channel(spec: &ChainSpec, t: usize) -> Result<Ptm> {
    spec.check_t(t)?;
    Ok(spec.errors[..t].iter().fold(Ptm::identity(), |acc, e| pauli_twirl(e) * acc))
}

/// Ordered product of twirled H-dressed errors. Equals the exact average when
/// every error is Z-like.
pub fn h_dressed_twirl_product(spec: &ChainSpec, t: usize) -> Result<Ptm> {
    spec.check_t(t)?;
    Ok((1..=t).fold(Ptm::identity(), |acc, s| pauli_twirl(&h_dressed_error(spec, s)) * acc))
}

/// Running sums for a Monte Carlo estimate. Merge blocks in index order for
/// bit-reproducible results.
#[derive(Clone, Debug, PartialEq)]
pub struct McAccumulator {
    pub samples: u64,
    pub sum: Vec<[[f64; 4]; 4]>,
    pub sum_sq: Vec<[[f64; 4]; 4]>,
    pub r_sum: Vec<f64>,
    pub r_sum_sq: Vec<f64>,
}

impl McAccumulator {
    pub fn new(horizon: usize) -> McAccumulator {
        McAccumulator {
            samples: 0,
            sum: alloc::vec![[[0.0; 4]; 4]; horizon],
            sum_sq: alloc::vec![[[0.0; 4]; 4]; horizon],
            r_sum: alloc::vec![0.0; horizon],
            r_sum_sq: alloc::vec![0.0; horizon],
        }
    }

    pub fn merge(&mut self, other: &McAccumulator) {
        self.samples += other.samples;
        for t in 0..self.sum.len() {
            for r in 0..4 {
                for c in 0..4 {
                    self.sum[t][r][c] += other.sum[t][r][c];
                    self.sum_sq[t][r][c] += other.sum_sq[t][r][c];
                }
            }
            self.r_sum[t] += other.r_sum[t];
            self.r_sum_sq[t] += other.r_sum_sq[t];
        }
    }

    /// Estimates for `t = 1..=horizon`.
    pub fn estimates(&self) -> Vec<McEstimate> {
        let n = self.samples as f64;
        let se = |s: f64, s2: f64| {
            if self.samples < 2 {
                return 0.0;
            }
            let mean = s / n;
            let var = ((s2 - n * mean * mean) / (n - 1.0)).max(0.0);
            math::sqrt(var / n)
        };
        (0..self.sum.len())
            .map(|t| {
                let mut mean = Ptm::zero();
                let mut stderr = Ptm::zero();
                for r in 0..4 {
                    for c in 0..4 {
                        mean.0[r][c] = self.sum[t][r][c] / n;
                        stderr.0[r][c] = se(self.sum[t][r][c], self.sum_sq[t][r][c]);
                    }
                }
                McEstimate {
                    mean,
                    stderr,
                    infidelity: self.r_sum[t] / n,
                    infidelity_stderr: se(self.r_sum[t], self.r_sum_sq[t]),
                }
            })
            .collect()
    }
}

/// A Monte Carlo estimate of `𝓝̄_t` with per-entry standard errors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: Ptm,
    pub stderr: Ptm,
    pub infidelity: f64,
    pub infidelity_stderr: f64,
}

/// Number of blocks that [`monte_carlo_block`] splits `samples` into.
pub fn mc_block_count(samples: u64) -> u64 {
    samples.div_ceil(MC_BLOCK)
}

/// One block of the Monte Carlo run over the first `horizon` steps.
pub fn monte_carlo_block(spec: &ChainSpec, horizon: usize, samples: u64, seed: u64, block: u64) -> Result<McAccumulator> {
    spec.check_t(horizon)?;
    // 𝓔_s conjugated by each of the eight frames.
    let conj: Vec<[Ptm; 8]> = spec.errors[..horizon]
        .iter()
        .map(|e| {
            let mut a = [Ptm::zero(); 8];
            for f in PauliFrame::all() {
                a[f.index()] = conjugate(e, f);
            }
            a
        })
        .collect();
    let start = block * MC_BLOCK;
    let count = samples.saturating_sub(start).min(MC_BLOCK);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let mut acc = McAccumulator::new(horizon);
    acc.samples = count;
    for _ in 0..count {
        let mut frame = PauliFrame::IDENTITY;
        let mut prod = Ptm::identity();
        let mut bits = 0u64;
        for s in 0..horizon {
            if s % 64 == 0 {
                bits = rng.next_u64();
            }
            let m = (bits >> (s % 64)) & 1 == 1;
            frame = frame.advance(m);
            prod = conj[s][frame.index()] * prod;
            let (sum, sq) = (&mut acc.sum[s], &mut acc.sum_sq[s]);
            for r in 0..4 {
                for c in 0..4 {
                    let v = prod.0[r][c];
                    sum[r][c] += v;
                    sq[r][c] += v * v;
                }
            }
            let r = average_infidelity(&prod);
            acc.r_sum[s] += r;
            acc.r_sum_sq[s] += r * r;
        }
    }
    Ok(acc)
}

/// Monte Carlo estimates for every `t ≤ horizon` from shared sample paths.
pub fn monte_carlo_series(spec: &ChainSpec, horizon: usize, samples: u64, seed: u64) -> Result<Vec<McEstimate>> {
    if samples == 0 {
        return Err(Error::Domain("Monte Carlo needs at least one sample".to_string()));
    }
    let mut acc = McAccumulator::new(horizon);
    for b in 0..mc_block_count(samples) {
        acc.merge(&monte_carlo_block(spec, horizon, samples, seed, b)?);
    }
    Ok(acc.estimates())
}

/// Monte Carlo estimate of `𝓝̄_t`.
pub fn monte_carlo_average_channel(spec: &ChainSpec, t: usize, samples: u64, seed: u64) -> Result<McEstimate> {
    let mut s = monte_carlo_series(spec, t, samples, seed)?;
    Ok(s.pop().expect("horizon t >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptm::{coherence_decompose, rot_z_ptm, rotation_ptm};

    fn bits(v: u32, len: usize) -> Vec<bool> {
        (0..len).map(|i| (v >> i) & 1 == 1).collect()
    }

    #[test]
    fn closed_form_frames_match_update_rule() {
        for len in 0..=10 {
            for v in 0..(1u32 << len) {
                let m = bits(v, len);
                let iter = m.iter().fold(PauliFrame::IDENTITY, |f, &b| f.advance(b));
                assert_eq!(frame_after(&m), iter, "{m:?}");
            }
        }
    }

    #[test]
    fn frame_examples() {
        assert_eq!(frame_after(&[]), PauliFrame::IDENTITY);
        assert_eq!(frame_after(&[true]), PauliFrame::new(true, Pauli::Z));
        // m1 + m3 = 1, m2 = 1: H X Z, i.e. H·Y up to phase.
        assert_eq!(frame_after(&[true, true, false]), PauliFrame::new(true, Pauli::Y));
    }

    #[test]
    fn marginals_match_enumeration() {
        assert!(frame_marginal(0).is_err());
        for t in 1..=12 {
            let mut counts = [0u32; 8];
            for v in 0..(1u32 << t) {
                counts[frame_after(&bits(v, t)).index()] += 1;
            }
            let marginal = frame_marginal(t).unwrap();
            let total = (1u32 << t) as f64;
            for f in PauliFrame::all() {
                let want = marginal.iter().find(|(g, _)| *g == f).map_or(0.0, |x| x.1);
                assert_eq!(counts[f.index()] as f64 / total, want, "t={t} {f}");
            }
        }
    }

    #[test]
    fn frames_at_distance_two_are_independent() {
        let len = 10;
        for s in 1..=len {
            for t in (s + 2)..=len {
                let mut joint = [[0u32; 8]; 8];
                let mut ms = [0u32; 8];
                let mut mt = [0u32; 8];
                for v in 0..(1u32 << len) {
                    let o = bits(v, len);
                    let a = frame_after(&o[..s]).index();
                    let b = frame_after(&o[..t]).index();
                    joint[a][b] += 1;
                    ms[a] += 1;
                    mt[b] += 1;
                }
                let n = 1u64 << len;
                for a in 0..8 {
                    for b in 0..8 {
                        assert_eq!(joint[a][b] as u64 * n, ms[a] as u64 * mt[b] as u64);
                    }
                }
            }
        }
    }

    #[test]
    fn identity_errors_stay_identity() {
        let spec = ChainSpec::homogeneous(Ptm::identity(), 6).unwrap();
        for t in 1..=6 {
            let s = conditional_state(&spec, t).unwrap();
            for f in s.support() {
                assert!(s.conditional(f).unwrap().approx_eq(&Ptm::identity(), 1e-15));
            }
            assert!(s.delta().approx_eq(&Ptm::zero(), 1e-15));
        }
    }

    #[test]
    fn support_follows_parity() {
        let spec = ChainSpec::homogeneous(rotation_ptm([0.1, 0.05, 0.02]), 5).unwrap();
        for t in 1..=5 {
            assert_eq!(conditional_state(&spec, t).unwrap().support(), frame_support(t).unwrap());
        }
    }

    #[test]
    fn second_step_conditionals_match_hand_expansion() {
        // Frame at t=2 determines frame at t=1 uniquely: H Z^{m2} (H Z^{m1}) = X^{m2} Z^{m1}.
        let e1 = rotation_ptm([0.0, 0.0, 0.13]);
        let e2 = rotation_ptm([0.0, 0.0, -0.07]);
        let spec = ChainSpec::new(alloc::vec![e1, e2]).unwrap();
        let s = conditional_state(&spec, 2).unwrap();
        for m1 in [false, true] {
            for m2 in [false, true] {
                let f1 = frame_after(&[m1]);
                let f2 = frame_after(&[m1, m2]);
                let want = conjugate(&e2, f2) * conjugate(&e1, f1);
                assert!(s.conditional(f2).unwrap().approx_eq(&want, 1e-15));
            }
        }
    }

    #[test]
    fn first_step_enumeration_and_delta() {
        let e = rotation_ptm([0.2, -0.1, 0.3]);
        let spec = ChainSpec::homogeneous(e, 1).unwrap();
        let h = PauliFrame::new(true, Pauli::I);
        let hz = PauliFrame::new(true, Pauli::Z);
        let want = (conjugate(&e, h) + conjugate(&e, hz)).scale(0.5);
        assert!(enumerate_average_channel(&spec, 1).unwrap().approx_eq(&want, 1e-15));
        let parts = coherence_decompose(&e);
        let hp = hadamard_ptm();
        let want_delta = hp * (parts.part_y + parts.part_z) * hp;
        assert!(delta_channel(&spec, 1).unwrap().approx_eq(&want_delta, 1e-15));
    }

    #[test]
    fn z_rotation_average_is_h_dressed_twirl_product() {
        let spec = ChainSpec::homogeneous(rot_z_ptm(0.1), 8).unwrap();
        let exact = exact_average_channel(&spec, 8).unwrap();
        let enumerated = enumerate_average_channel(&spec, 8).unwrap();
        let prod = h_dressed_twirl_product(&spec, 8).unwrap();
        assert!(exact.approx_eq(&prod, 1e-13));
        assert!(enumerated.approx_eq(&prod, 1e-13));
        // diag(1, c, c, 1) and its H image diag(1, 1, c, c) alternate.
        let c = 0.2f64.cos();
        let want = Ptm::diag([1.0, c.powi(4), c.powi(8), c.powi(4)]);
        assert!(prod.approx_eq(&want, 1e-14));
    }

    #[test]
    fn enumeration_is_capped() {
        let spec = ChainSpec::homogeneous(Ptm::identity(), 21).unwrap();
        assert!(matches!(enumerate_average_channel(&spec, 21), Err(Error::ResourceLimit { .. })));
        assert!(exact_average_channel(&spec, 22).is_err());
    }

    #[test]
    fn comparison_channels() {
        let theta = 0.05;
        let spec = ChainSpec::homogeneous(rot_z_ptm(theta), 7).unwrap();
        for t in 1..=7 {
            let free = free_accumulation_channel(&spec, t).unwrap();
            assert!(free.approx_eq(&rot_z_ptm(theta * t as f64), 1e-13));
            let want_r = 2.0 / 3.0 * (theta * t as f64).sin().powi(2);
            assert!((average_infidelity(&free) - want_r).abs() < 1e-14);
            let rc = randomized_compiling_channel(&spec, t).unwrap();
            let p = theta.sin().powi(2);
            let q = 0.5 * (1.0 - (1.0 - 2.0 * p).powi(t as i32));
            let want = crate::ptm::pauli_channel_ptm(0.0, 0.0, q).unwrap();
            assert!(rc.approx_eq(&want, 1e-14));
        }
        let pauli = crate::ptm::pauli_channel_ptm(0.01, 0.02, 0.03).unwrap();
        let spec = ChainSpec::homogeneous(pauli, 4).unwrap();
        assert!(randomized_compiling_channel(&spec, 4)
            .unwrap()
            .approx_eq(&free_accumulation_channel(&spec, 4).unwrap(), 1e-15));
        assert_eq!(free_accumulation_channel(&spec, 1).unwrap(), pauli);
    }

    #[test]
    fn monte_carlo_identity_has_zero_variance() {
        let spec = ChainSpec::homogeneous(Ptm::identity(), 5).unwrap();
        let est = monte_carlo_average_channel(&spec, 5, 5000, 9).unwrap();
        assert_eq!(est.mean, Ptm::identity());
        assert_eq!(est.stderr.max_abs(), 0.0);
    }

    #[test]
    fn monte_carlo_is_reproducible_and_close() {
        let spec = ChainSpec::homogeneous(rotation_ptm([0.09, 0.03, 0.06]), 12).unwrap();
        let a = monte_carlo_average_channel(&spec, 12, 20_000, 42).unwrap();
        let b = monte_carlo_average_channel(&spec, 12, 20_000, 42).unwrap();
        assert_eq!(a, b);
        let exact = exact_average_channel(&spec, 12).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let d = (a.mean.0[r][c] - exact.0[r][c]).abs();
                assert!(d <= 5.0 * a.stderr.0[r][c] + 1e-15, "({r},{c}) {d} vs {}", a.stderr.0[r][c]);
            }
        }
    }

    #[test]
    fn non_trace_preserving_step_rejected() {
        let bad = Ptm::diag([0.9, 1.0, 1.0, 1.0]);
        assert!(ChainSpec::new(alloc::vec![bad]).is_err());
    }
}
