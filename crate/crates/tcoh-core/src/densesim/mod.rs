//! Dense simulation of small foliated codes in the effective code-qubit
//! picture: each teleportation is the Kraus operator `H Z^m / √2` on a code
//! qubit and each check is measured through one reused ancilla.
//!
//! Code-qubit noise of round `t` acts after that round's teleportation, so
//! the physical error is always a Z rotation while its image in the logical
//! frame is X at odd `t` and Z at even `t`.
//!
//! Logical channels are read out by evolving `P̄ Π / 2^k` for every logical
//! Pauli `P̄` (`Π` the code projector) and taking `Tr[Q̄ ρ]` after the final
//! frame correction.

mod circuit;
mod enumerate;
mod state;
mod verify;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::foliation::CssCode;
use crate::{Pauli, Ptm, Result};

pub use circuit::{
    build_effective_circuit, pauli_noise_model, run_conditional, sample_records, CircuitOp, ConditionalResult,
    FoliationRun, OutcomePolicy, RunNoise,
};
pub use enumerate::{enumerate_report, Grouping, ENUMERATION_MAX_OUTCOMES};
pub use state::{DensityMatrix, MAX_QUBITS};
pub use verify::{
    averaged_logical_report, imperfect_projector, measure_z_parity, stabilizer_eigenstate_check, verify_theorem2,
    GroupDeviation, Theorem2Report, PTM_COMPARE_MIN_PROBABILITY,
};

pub(crate) fn mask(row: &[bool]) -> usize {
    row.iter().enumerate().filter(|(_, b)| **b).fold(0, |m, (i, _)| m | 1 << i)
}

/// `(x, z, phase)` with the logical operator equal to `phase · X^x Z^z`;
/// `Ȳ = i X̄ Z̄`.
pub(crate) fn logical_op(code: &CssCode, j: usize, p: Pauli) -> (usize, usize, C64) {
    let (lx, lz) = (mask(&code.logical_x[j]), mask(&code.logical_z[j]));
    match p {
        Pauli::I => (0, 0, C64::new(1.0, 0.0)),
        Pauli::X => (lx, 0, C64::new(1.0, 0.0)),
        Pauli::Y => (lx, lz, C64::new(0.0, 1.0)),
        Pauli::Z => (0, lz, C64::new(1.0, 0.0)),
    }
}

/// Projector onto the code space.
pub fn code_projector(code: &CssCode) -> Result<DensityMatrix> {
    let mut p = DensityMatrix::identity(code.n)?;
    let gens = code.x_checks.iter().map(|r| (mask(r), 0)).chain(code.z_checks.iter().map(|r| (0, mask(r))));
    for (x, z) in gens {
        let mut sp = p.clone();
        sp.left_mul_pauli(x, z);
        p.add_assign(&sp);
        p.scale(0.5);
    }
    Ok(p)
}

/// Tomography inputs `Π/2^k` followed by `P̄_j Π / 2^k` for every logical `j`
/// and `P ∈ {X, Y, Z}`.
pub(crate) fn tomography_inputs(code: &CssCode) -> Result<Vec<DensityMatrix>> {
    let mut pi = code_projector(code)?;
    pi.scale(1.0 / (1u64 << code.k) as f64);
    let mut out = alloc::vec![pi.clone()];
    for j in 0..code.k {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            let (x, z, ph) = logical_op(code, j, p);
            let mut a = pi.clone();
            a.left_mul_pauli_phased(x, z, ph);
            out.push(a);
        }
    }
    Ok(out)
}

pub(crate) fn input_index(j: usize, p: Pauli) -> usize {
    match p {
        Pauli::I => 0,
        _ => 1 + 3 * j + p.index() - 1,
    }
}

/// Probability-weighted sums for one syndrome group.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct GroupSum {
    prob: f64,
    ptms: Vec<[[f64; 4]; 4]>,
}

impl GroupSum {
    pub(crate) fn new(k: usize) -> GroupSum {
        GroupSum { prob: 0.0, ptms: alloc::vec![[[0.0; 4]; 4]; k] }
    }

    /// Adds one output set; `sign(j, P)` is the frame-correction sign of `P̄_j`.
    pub(crate) fn add(&mut self, code: &CssCode, outputs: &[DensityMatrix], sign: impl Fn(usize, Pauli) -> f64) {
        self.prob += outputs[0].trace().re;
        for j in 0..code.k {
            for row in Pauli::ALL {
                let (x, z, ph) = logical_op(code, j, row);
                let s = sign(j, row);
                for col in Pauli::ALL {
                    let v = outputs[input_index(j, col)].pauli_expectation_phased(x, z, ph).re;
                    self.ptms[j][row.index()][col.index()] += s * v;
                }
            }
        }
    }

    pub(crate) fn finish(&self) -> GroupChannel {
        let ptms = (self.prob > ZERO_PROBABILITY).then(|| {
            self.ptms.iter().map(|m| Ptm(*m).scale(1.0 / self.prob)).collect()
        });
        GroupChannel { probability: self.prob.max(0.0), ptms }
    }
}

/// Groups at or below this probability carry no channel.
pub const ZERO_PROBABILITY: f64 = 1e-300;

/// Outcome probability and renormalized logical channels of one group.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupChannel {
    pub probability: f64,
    /// One PTM per logical qubit; `None` for a zero-probability group.
    pub ptms: Option<Vec<Ptm>>,
}

/// Logical channels keyed by syndrome string (see
/// [`syndrome_string`](crate::foliation::syndrome_string)).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LogicalChannelReport {
    pub groups: BTreeMap<String, GroupChannel>,
}

impl LogicalChannelReport {
    pub fn total_probability(&self) -> f64 {
        self.groups.values().map(|g| g.probability).sum()
    }
}

pub use verify::code_state;
