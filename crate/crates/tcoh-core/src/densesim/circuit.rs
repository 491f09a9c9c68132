use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::state::{diagonal_table, DensityMatrix, MAX_QUBITS};
use super::{tomography_inputs, GroupSum, LogicalChannelReport};
use crate::chain::frame_after;
use crate::foliation::{
    cluster_stabilizer_outcomes, syndrome_string, BitMatrix, CssCode, FoliationNoiseModel, GeneralPureZChannel,
    NoiseChannel, PauliReplacement, PureZKraus, PureZTerm, SpacetimeLocation, SyndromeRecord,
};
use crate::ptm::Mat2;
use crate::{Error, Pauli, Ptm, Result};

/// One step of the effective circuit. Qubit and check indices are 0-based;
/// the ancilla is the qubit after the code qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitOp {
    /// `H Z^m / √2` on a code qubit with `m = m[qubit][t - 1]`.
    Teleport { qubit: usize, t: usize },
    Noise(SpacetimeLocation),
    /// Fresh `|+⟩` ancilla for a check of round `t`.
    PrepAncilla { check: usize, t: usize },
    Cz { qubit: usize, check: usize, t: usize },
    /// X measurement of the ancilla with outcome `s[t - 1][check]`; the
    /// ancilla is discarded.
    MeasureAncilla { check: usize, t: usize },
    /// Undo the accumulated Pauli frame of every code qubit.
    FrameCorrection,
}

/// Ordered ops of `rounds` foliation rounds. Noise slots are spread over the
/// round: slot 1 right after teleportation (or preparation), one after each
/// CZ the qubit takes part in, and the rest at the end of the round.
pub fn build_effective_circuit(code: &CssCode, rounds: usize, widths: &[usize]) -> Result<Vec<CircuitOp>> {
    if code.n + 1 > MAX_QUBITS {
        return Err(Error::ResourceLimit { what: "simulated qubits".into(), requested: code.n as u64 + 1, cap: MAX_QUBITS as u64 });
    }
    if widths.len() != code.num_locations() {
        return Err(Error::Dimension { expected: alloc::format!("{} widths", code.num_locations()), found: alloc::format!("{}", widths.len()) });
    }
    let mut ops = Vec::new();
    for t in 1..=2 * rounds {
        let mut next_code_slot = alloc::vec![1usize; code.n];
        let code_slot = |ops: &mut Vec<CircuitOp>, next: &mut [usize], i: usize| {
            if next[i] <= widths[i] {
                ops.push(CircuitOp::Noise(SpacetimeLocation::new(i + 1, t, next[i])));
                next[i] += 1;
            }
        };
        for i in 0..code.n {
            ops.push(CircuitOp::Teleport { qubit: i, t });
        }
        for i in 0..code.n {
            code_slot(&mut ops, &mut next_code_slot, i);
        }
        let (checks, offset) = if t % 2 == 1 { (&code.x_checks, code.n) } else { (&code.z_checks, code.n + code.num_x_checks()) };
        for (j, row) in checks.iter().enumerate() {
            let gamma = offset + j + 1;
            let w = widths[gamma - 1];
            let mut slot = 1;
            ops.push(CircuitOp::PrepAncilla { check: j, t });
            let anc_slot = |ops: &mut Vec<CircuitOp>, slot: &mut usize| {
                if *slot <= w {
                    ops.push(CircuitOp::Noise(SpacetimeLocation::new(gamma, t, *slot)));
                    *slot += 1;
                }
            };
            anc_slot(&mut ops, &mut slot);
            for i in CssCode::support(row) {
                ops.push(CircuitOp::Cz { qubit: i, check: j, t });
                anc_slot(&mut ops, &mut slot);
                code_slot(&mut ops, &mut next_code_slot, i);
            }
            while slot <= w {
                anc_slot(&mut ops, &mut slot);
            }
            ops.push(CircuitOp::MeasureAncilla { check: j, t });
        }
        for i in 0..code.n {
            while next_code_slot[i] <= widths[i] {
                code_slot(&mut ops, &mut next_code_slot, i);
            }
        }
    }
    if rounds > 0 {
        ops.push(CircuitOp::FrameCorrection);
    }
    Ok(ops)
}

/// Noise fed to the simulator.
#[derive(Clone, Debug, PartialEq)]
pub enum RunNoise {
    Coherent(FoliationNoiseModel),
    Pauli(PauliReplacement),
}

/// Which measurement records a report covers.
#[derive(Clone, Debug, PartialEq)]
pub enum OutcomePolicy {
    EnumerateAll,
    Fixed(SyndromeRecord),
    /// Records drawn with their Born probabilities.
    Sample { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoliationRun {
    pub noise: RunNoise,
    pub policy: OutcomePolicy,
}

impl FoliationRun {
    pub fn new(noise: RunNoise, policy: OutcomePolicy) -> FoliationRun {
        FoliationRun { noise, policy }
    }

    /// The noise as pure Z-diagonal channels on the physical circuit.
    pub fn effective_model(&self) -> Result<FoliationNoiseModel> {
        match &self.noise {
            RunNoise::Coherent(m) => Ok(m.clone()),
            RunNoise::Pauli(r) => pauli_noise_model(r),
        }
    }
}

/// A replacement as physical Z-flip channels. X-axis entries become Z flips
/// because the simulator places code noise after the round's Hadamard.
pub fn pauli_noise_model(rep: &PauliReplacement) -> Result<FoliationNoiseModel> {
    let mut m = FoliationNoiseModel::new(rep.code.clone(), rep.rounds, rep.widths.clone())?;
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    for (loc, (_, p)) in &rep.probs {
        let ch = if *p <= 0.0 {
            continue;
        } else if *p >= 1.0 {
            NoiseChannel::Rank1(PureZKraus::new(zero, one)?)
        } else {
            NoiseChannel::General(GeneralPureZChannel::new(alloc::vec![
                PureZTerm { c: 1.0 - p, alpha: one, beta: zero },
                PureZTerm { c: *p, alpha: zero, beta: one },
            ])?)
        };
        m.set(*loc, ch)?;
    }
    Ok(m)
}

fn channel_table(model: &FoliationNoiseModel, loc: SpacetimeLocation) -> Option<[[C64; 2]; 2]> {
    model.channel(loc).map(|c| diagonal_table(&c.terms()))
}

/// Runs `ops` on every operator in `states` for one record.
fn run_ops(model: &FoliationNoiseModel, ops: &[CircuitOp], rec: &SyndromeRecord, states: &mut [DensityMatrix]) -> Result<()> {
    let code = model.code();
    let ancilla = code.n;
    for op in ops {
        match *op {
            CircuitOp::Teleport { qubit, t } => {
                let mut u = Mat2::hadamard();
                if rec.m[qubit][t - 1] {
                    u = u * Mat2::pauli(Pauli::Z);
                }
                for s in states.iter_mut() {
                    s.apply_1q(qubit, &u);
                    s.scale(0.5);
                }
            }
            CircuitOp::Noise(loc) => {
                if let Some(tab) = channel_table(model, loc) {
                    let q = if loc.gamma <= code.n { loc.gamma - 1 } else { ancilla };
                    for s in states.iter_mut() {
                        s.apply_diagonal_channel(q, &tab);
                    }
                }
            }
            CircuitOp::PrepAncilla { .. } => {
                for s in states.iter_mut() {
                    *s = s.push_plus()?;
                }
            }
            CircuitOp::Cz { qubit, .. } => {
                for s in states.iter_mut() {
                    s.cz(qubit, ancilla);
                }
            }
            CircuitOp::MeasureAncilla { check, t } => {
                let bit = rec.s[t - 1][check];
                for s in states.iter_mut() {
                    *s = s.measure_top_x(bit);
                }
            }
            CircuitOp::FrameCorrection => {
                for (i, row) in rec.m.iter().enumerate() {
                    let f = frame_after(row);
                    debug_assert!(!f.hadamard);
                    if f.pauli != Pauli::I {
                        let p = Mat2::pauli(f.pauli);
                        for s in states.iter_mut() {
                            s.apply_1q(i, &p);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Result of one measurement record.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalResult {
    pub probability: f64,
    /// Renormalized logical PTMs, one per logical qubit; `None` when the
    /// record has zero probability.
    pub ptms: Option<Vec<Ptm>>,
    pub corrected: BitMatrix,
}

/// Applies the circuit literally for one record, including the final frame
/// correction, and reads out the logical channel.
pub fn run_conditional(run: &FoliationRun, record: &SyndromeRecord) -> Result<ConditionalResult> {
    let model = run.effective_model()?;
    let code = model.code();
    if record.rounds() != model.rounds() {
        return Err(Error::Domain(alloc::format!("record covers {} rounds, model has {}", record.rounds(), model.rounds())));
    }
    let corrected = cluster_stabilizer_outcomes(record, code)?;
    let ops = build_effective_circuit(code, model.rounds(), model.widths())?;
    let mut states = tomography_inputs(code)?;
    run_ops(&model, &ops, record, &mut states)?;
    let mut g = GroupSum::new(code.k);
    g.add(code, &states, |_, _| 1.0);
    let ch = g.finish();
    Ok(ConditionalResult { probability: ch.probability, ptms: ch.ptms, corrected })
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draws records from the run's Born distribution. Teleportation outcomes are
/// uniform; each check outcome is drawn from the current branch weights.
pub fn sample_records(model: &FoliationNoiseModel, samples: u64, seed: u64) -> Result<Vec<SyndromeRecord>> {
    let code = model.code();
    let ops = build_effective_circuit(code, model.rounds(), model.widths())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pi = super::code_projector(code)?;
    pi.scale(1.0 / (1u64 << code.k) as f64);
    let mut out = Vec::with_capacity(samples as usize);
    for _ in 0..samples {
        let mut rec = SyndromeRecord::zeros(code, model.rounds());
        for row in rec.m.iter_mut() {
            for b in row.iter_mut() {
                *b = rng.next_u32() & 1 == 1;
            }
        }
        let mut st = alloc::vec![pi.clone()];
        for op in &ops {
            if let CircuitOp::MeasureAncilla { check, t } = *op {
                let p0 = st[0].measure_top_x(false).trace().re;
                let p1 = st[0].measure_top_x(true).trace().re;
                rec.s[t - 1][check] = uniform(&mut rng) * (p0 + p1) >= p0;
            }
            run_ops(model, core::slice::from_ref(op), &rec, &mut st)?;
        }
        out.push(rec);
    }
    Ok(out)
}

/// Sampled estimate: group probability is the record frequency and the
/// channel is the plain mean over the group's records.
pub(crate) fn sampled_report(run: &FoliationRun, samples: u64, seed: u64) -> Result<LogicalChannelReport> {
    let model = run.effective_model()?;
    let code = model.code();
    let mut sums: BTreeMap<String, (u64, Vec<[[f64; 4]; 4]>)> = BTreeMap::new();
    for rec in sample_records(&model, samples, seed)? {
        let r = run_conditional(run, &rec)?;
        let key = syndrome_string(&r.corrected);
        let e = sums.entry(key).or_insert_with(|| (0, alloc::vec![[[0.0; 4]; 4]; code.k]));
        e.0 += 1;
        if let Some(ptms) = r.ptms {
            for (acc, m) in e.1.iter_mut().zip(ptms) {
                for a in 0..4 {
                    for b in 0..4 {
                        acc[a][b] += m.0[a][b];
                    }
                }
            }
        }
    }
    let mut report = LogicalChannelReport::default();
    for (key, (count, ms)) in sums {
        let ptms = ms.into_iter().map(|m| Ptm(m).scale(1.0 / count as f64)).collect();
        report
            .groups
            .insert(key, super::GroupChannel { probability: count as f64 / samples as f64, ptms: Some(ptms) });
    }
    Ok(report)
}
