//! Bounds on how the diagonal of the frame-averaged chain channel evolves.
//!
//! All factor formulas use the H-dressed errors `𝓔ᴴ_t` (see
//! [`h_dressed_error`]) and unsigned Pauli products for the off-diagonal
//! indices. Every formula multiplies an entry `[·]_{P,QP}` by an entry
//! `[·]_{QP,·}`, so the phase of `QP` cancels.

use alloc::format;
use alloc::vec::Vec;

use crate::chain::{exact_average_series, frame_support, h_dressed_error, ChainSpec};
use crate::ptm::{infidelity_from_diagonal, Ptm};
use crate::{math, Error, Pauli, Result};

/// The coherence-to-population ratio of a chain and where it peaks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpsilonReport {
    pub epsilon: f64,
    /// (t, P, coherence axis) of the largest ratio, if any ratio is nonzero.
    pub worst_location: Option<(usize, Pauli, Pauli)>,
}

/// Largest of `|[𝓔]_{P,XP}|`, `|[𝓔]_{ZP,XP}|`, `|[𝓔]_{ZP,P}|` over `|[𝓔]_{P,P}|`,
/// across all steps and Paulis. The three ratios probe the X-, Y- and
/// Z-coherence of each error.
pub fn epsilon_of(spec: &ChainSpec) -> Result<EpsilonReport> {
    let mut best = EpsilonReport { epsilon: 0.0, worst_location: None };
    for t in 1..=spec.len() {
        let e = spec.error(t);
        for p in Pauli::ALL {
            let d = e.get(p, p);
            if d == 0.0 {
                return Err(Error::Singularity { t, pauli: p });
            }
            let xp = Pauli::X.times(p);
            let zp = Pauli::Z.times(p);
            let candidates = [
                (e.get(p, xp), Pauli::X),
                (e.get(zp, xp), Pauli::Y),
                (e.get(zp, p), Pauli::Z),
            ];
            for (v, axis) in candidates {
                let ratio = math::abs(v / d);
                if ratio > best.epsilon {
                    best = EpsilonReport { epsilon: ratio, worst_location: Some((t, p, axis)) };
                }
            }
        }
    }
    Ok(best)
}

fn small_epsilon(spec: &ChainSpec) -> Result<f64> {
    let eps = epsilon_of(spec)?.epsilon;
    if !(eps < 1.0 / 3.0) {
        return Err(Error::Precondition(format!("epsilon = {eps} is not below 1/3")));
    }
    Ok(eps)
}

/// Ratio interval for one diagonal entry over one or two steps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactorInterval {
    pub pauli: Pauli,
    pub lo: f64,
    pub hi: f64,
    pub order: u8,
    /// (from, to) timesteps.
    pub span: (usize, usize),
}

impl FactorInterval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Range of `Σ_k a_k · m_k` where each multiplier `m_k` ranges over an interval.
fn linear_range(terms: &[(f64, f64, f64)]) -> (f64, f64) {
    let mut lo = 0.0;
    let mut hi = 0.0;
    for &(a, m_lo, m_hi) in terms {
        let (x, y) = (a * m_lo, a * m_hi);
        lo += x.min(y);
        hi += x.max(y);
    }
    (lo, hi)
}

/// The Pauli that relates the recursion's paired entries at step `t`:
/// X for even `t`, Z for odd `t`.
fn step_axis(t: usize) -> Pauli {
    if t % 2 == 0 {
        Pauli::X
    } else {
        Pauli::Z
    }
}

fn nonzero(e: &Ptm, p: Pauli, t: usize) -> Result<f64> {
    let d = e.get(p, p);
    if d == 0.0 {
        return Err(Error::Singularity { t, pauli: p });
    }
    Ok(d)
}

/// One-step factor for `[𝓝̄_t]_{P,P} / [𝓝̄_{t−1}]_{P,P}`, valid for `t > 2`.
pub fn second_order_factor(spec: &ChainSpec, t: usize, pauli: Pauli) -> Result<FactorInterval> {
    if t <= 2 || t > spec.len() {
        return Err(Error::Domain(format!("second-order factor needs 2 < t <= {}, got {t}", spec.len())));
    }
    let eps = small_epsilon(spec)?;
    second_order_with(spec, t, pauli, eps)
}

fn second_order_with(spec: &ChainSpec, t: usize, p: Pauli, eps: f64) -> Result<FactorInterval> {
    let et = h_dressed_error(spec, t);
    let ep = h_dressed_error(spec, t - 1);
    let qp = step_axis(t).times(p);
    let a = et.get(p, p);
    let b = et.get(p, qp) * ep.get(qp, p) / nonzero(&ep, p, t - 1)?;
    let e2 = eps * eps;
    let d1 = 3.0 * e2 * eps / (1.0 - 3.0 * e2);
    let (lo, hi) = linear_range(&[
        (a, 1.0 - d1, 1.0 + d1),
        (b, 1.0 - 3.0 * e2 / (1.0 + 3.0 * e2), 1.0 + 3.0 * e2 / (1.0 - 3.0 * e2)),
    ]);
    Ok(FactorInterval { pauli: p, lo, hi, order: 2, span: (t - 1, t) })
}

/// Two-step factor for `[𝓝̄_t]_{P,P} / [𝓝̄_{t−2}]_{P,P}`, valid for `t ≥ 4`.
pub fn third_order_factor(spec: &ChainSpec, t: usize, pauli: Pauli) -> Result<FactorInterval> {
    if t < 4 || t > spec.len() {
        return Err(Error::Domain(format!("third-order factor needs 4 <= t <= {}, got {t}", spec.len())));
    }
    let eps = small_epsilon(spec)?;
    third_order_with(spec, t, pauli, eps)
}

fn third_order_with(spec: &ChainSpec, t: usize, p: Pauli, eps: f64) -> Result<FactorInterval> {
    let e = |s: usize| h_dressed_error(spec, s);
    let (e0, e1, e2, e3) = (e(t), e(t - 1), e(t - 2), e(t - 3));
    // Q1 pairs the step-t entries, Q2 the coherent companion; both flip with parity.
    let q1 = step_axis(t).times(p);
    let q2 = step_axis(t + 1).times(p);
    let r = e0.get(p, p) * e1.get(p, p) + e0.get(p, q1) * e1.get(q1, p);
    let gamma = e0.get(p, p) * e1.get(p, q2) + e0.get(p, q1) * e1.get(q1, q2);
    let delta = e2.get(q2, p) * e3.get(p, p) + e2.get(q2, q1) * e3.get(q1, p);
    let g = gamma * delta / (nonzero(&e2, p, t - 2)? * nonzero(&e3, p, t - 3)?);
    // The residual term scales with the step-t and step-(t−1) populations.
    let k = e0.get(p, p) * e1.get(p, p);
    let eps2 = eps * eps;
    let eta3 = 5.0 * eps2;
    let eta5 = 18.0 * eps2 * eps2;
    if eta3 >= 1.0 {
        return Err(Error::Precondition(format!("epsilon = {eps} too large for the two-step factor")));
    }
    let (lo, hi) = linear_range(&[
        (r, 1.0, 1.0),
        (g, 1.0 / (1.0 + eta3), 1.0 / (1.0 - eta3)),
        (k, -eta5, eta5),
    ]);
    Ok(FactorInterval { pauli: p, lo, hi, order: 3, span: (t - 2, t) })
}

/// Infidelity band at one timestep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InfidelityBand {
    pub t: usize,
    pub r_lo: f64,
    pub r_hi: f64,
}

type Interval = (f64, f64);

fn interval_mul(a: Interval, b: Interval) -> Interval {
    let c = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// Bands on `r(𝓝̄_t)` for `t = 1..=steps` from cumulative products of factor
/// intervals. Order 2 is seeded with the exact channel at `t = 1, 2`; order 3
/// is seeded at `t = 1, 2`, takes one order-2 step to `t = 3`, and then chains
/// two-step factors separately along odd and even `t`.
pub fn infidelity_band(spec: &ChainSpec, steps: usize, order: u8) -> Result<Vec<InfidelityBand>> {
    if steps == 0 || steps > spec.len() {
        return Err(Error::Domain(format!("band length {steps} outside 1..={}", spec.len())));
    }
    if order != 2 && order != 3 {
        return Err(Error::Domain(format!("band order must be 2 or 3, got {order}")));
    }
    let eps = small_epsilon(spec)?;
    let exact = exact_average_series(&ChainSpec::new(spec.errors()[..steps.min(2)].to_vec())?);
    let axes = [Pauli::X, Pauli::Y, Pauli::Z];
    // diag[t-1][k] is the interval for axis k at step t.
    let mut diag: Vec<[Interval; 3]> = Vec::with_capacity(steps);
    for t in 1..=steps {
        let mut row = [(0.0, 0.0); 3];
        for (k, &p) in axes.iter().enumerate() {
            row[k] = if t <= 2 {
                let v = exact[t - 1].get(p, p);
                (v, v)
            } else if order == 2 || t == 3 {
                let f = second_order_with(spec, t, p, eps)?;
                interval_mul(diag[t - 2][k], (f.lo, f.hi))
            } else {
                let f = third_order_with(spec, t, p, eps)?;
                interval_mul(diag[t - 3][k], (f.lo, f.hi))
            };
        }
        diag.push(row);
    }
    Ok(diag
        .iter()
        .enumerate()
        .map(|(i, row)| InfidelityBand {
            t: i + 1,
            r_lo: infidelity_from_diagonal(row[0].1, row[1].1, row[2].1),
            r_hi: infidelity_from_diagonal(row[0].0, row[1].0, row[2].0),
        })
        .collect())
}

/// Linear growth bound `(17/2) r0 t`, valid for `r0 ≤ 1/100`.
pub fn corollary_linear_bound(r0: f64, t: usize) -> Result<f64> {
    if !(0.0..=0.01).contains(&r0) {
        return Err(Error::Precondition(format!("r0 = {r0} outside [0, 1/100]")));
    }
    Ok(8.5 * r0 * t as f64)
}

/// The bound `√(6 r0) / (1 − 3 r0)` on epsilon implied by a per-step
/// infidelity `r0`.
pub fn epsilon_from_infidelity(r0: f64) -> f64 {
    math::sqrt(6.0 * r0) / (1.0 - 3.0 * r0)
}

/// Angle vectors of unitary errors `e^{iθ_t·σ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationSchedule {
    pub thetas: Vec<[f64; 3]>,
}

/// Small-angle infidelity estimates for each `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleEstimate {
    pub values: Vec<f64>,
    /// `max ‖θ_t‖ · T`. The expansion is only meaningful when this is small;
    /// callers should warn above [`SIMPLE_ESTIMATE_WARN`].
    pub angle_budget: f64,
}

pub const SIMPLE_ESTIMATE_WARN: f64 = 0.3;

/// `E[θ'_s · θ'_{s+1}]` over the joint distribution of adjacent frames, where
/// `θ' = R_Fᵀ θ` is the angle vector seen through the inverse frame.
fn adjacent_correlation(s: usize, a: [f64; 3], b: [f64; 3]) -> f64 {
    let support = frame_support(s).expect("s >= 1");
    let w = 0.5 / support.len() as f64;
    let mut acc = 0.0;
    for f in support {
        for m in [false, true] {
            let g = f.advance(m);
            let x = f.inverse().apply_to_vector(a);
            let y = g.inverse().apply_to_vector(b);
            acc += w * (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]);
        }
    }
    acc
}

/// `r̂(t) = (2/3) Σ_{s≤t} ‖θ_s‖² + (4/3) Σ_{s<t} E[θ'_s·θ'_{s+1}]`.
pub fn simple_proof_estimate(sched: &RotationSchedule) -> SimpleEstimate {
    let mut values = Vec::with_capacity(sched.thetas.len());
    let mut sq = 0.0;
    let mut corr = 0.0;
    let mut max_norm: f64 = 0.0;
    for (i, th) in sched.thetas.iter().enumerate() {
        let n2 = th[0] * th[0] + th[1] * th[1] + th[2] * th[2];
        max_norm = max_norm.max(math::sqrt(n2));
        sq += n2;
        if i > 0 {
            corr += adjacent_correlation(i, sched.thetas[i - 1], *th);
        }
        values.push(2.0 / 3.0 * sq + 4.0 / 3.0 * corr);
    }
    SimpleEstimate { values, angle_budget: max_norm * sched.thetas.len() as f64 }
}

impl RotationSchedule {
    pub fn homogeneous(theta: [f64; 3], steps: usize) -> RotationSchedule {
        RotationSchedule { thetas: alloc::vec![theta; steps] }
    }
}
