//! Exhaustive enumeration over every measurement record.
//!
//! Between two Hadamard layers every operation is diagonal, so one round acts
//! on the operators as a permutation (the teleportation Paulis) followed by an
//! entrywise product. Records are merged as soon as they agree on everything
//! later steps can see: the frame-correction signs of the logical operators,
//! the group key so far, and the previous outcomes of each check type.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use super::state::{diagonal_table, parity, DensityMatrix};
use super::{mask, tomography_inputs, GroupSum, LogicalChannelReport};
use crate::foliation::{syndrome_string, FoliationNoiseModel, QubitRole, SpacetimeLocation};
use crate::ptm::Mat2;
use crate::{Error, Pauli, Result};

/// Cap on the number of outcome bits (teleportations plus check outcomes).
pub const ENUMERATION_MAX_OUTCOMES: u32 = 24;

/// How records are grouped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grouping {
    /// By the corrected cluster-stabilizer outcomes.
    Corrected,
    /// By the raw check outcomes.
    Raw,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Register {
    key: Vec<bool>,
    /// Bit `2j`: sign of `X̄_j` under the frame correction; bit `2j+1`: of `Z̄_j`.
    signs: u64,
    /// Most recent outcomes of the Z-checks (index 0) and X-checks (index 1).
    last: [u64; 2],
}

const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

fn slot_product(model: &FoliationNoiseModel, gamma: usize, t: usize) -> [[C64; 2]; 2] {
    let mut acc = [[ONE; 2]; 2];
    for w in 1..=model.width(gamma) {
        if let Some(ch) = model.channel(SpacetimeLocation::new(gamma, t, w)) {
            let tab = diagonal_table(&ch.terms());
            for a in 0..2 {
                for b in 0..2 {
                    acc[a][b] *= tab[a][b];
                }
            }
        }
    }
    acc
}

/// All records enumerated and merged into groups.
pub fn enumerate_report(model: &FoliationNoiseModel, grouping: Grouping) -> Result<LogicalChannelReport> {
    let code = model.code();
    let (n, rounds) = (code.n, model.rounds());
    let bits = 2 * rounds * n + rounds * (code.num_x_checks() + code.num_z_checks());
    if bits as u32 > ENUMERATION_MAX_OUTCOMES {
        return Err(Error::ResourceLimit {
            what: "enumerated outcome bits (use the sampling policy)".into(),
            requested: bits as u64,
            cap: ENUMERATION_MAX_OUTCOMES as u64,
        });
    }
    let dim = 1usize << n;
    let lx: Vec<usize> = code.logical_x.iter().map(|r| mask(r)).collect();
    let lz: Vec<usize> = code.logical_z.iter().map(|r| mask(r)).collect();

    let mut map: BTreeMap<Register, Vec<DensityMatrix>> = BTreeMap::new();
    map.insert(Register { key: Vec::new(), signs: 0, last: [0, 0] }, tomography_inputs(code)?);

    for t in 1..=2 * rounds {
        // entrywise factor of code noise and teleport normalization
        let mut dcode = alloc::vec![C64::new(1.0 / dim as f64, 0.0); dim * dim];
        for g in 0..n {
            let tab = slot_product(model, g + 1, t);
            for i in 0..dim {
                for j in 0..dim {
                    dcode[i * dim + j] *= tab[(i >> g) & 1][(j >> g) & 1];
                }
            }
        }
        let checks = code.checks_for_round(t);
        let supports: Vec<usize> = checks.iter().map(|r| mask(r)).collect();
        let nc = checks.len();
        // f[c][s][p][q]: check c with outcome s on parities p, q
        let mut f = alloc::vec![[[[ZERO; 2]; 2]; 2]; nc];
        for c in 0..nc {
            let role = if t % 2 == 1 { QubitRole::XAncilla(c) } else { QubitRole::ZAncilla(c) };
            let a = slot_product(model, role.gamma(code), t);
            for s in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        let mut v = ZERO;
                        for x in 0..2 {
                            for y in 0..2 {
                                let e = s * (x + y) + x * p + y * q;
                                let sign = if e % 2 == 1 { -0.25 } else { 0.25 };
                                v += a[x][y] * sign;
                            }
                        }
                        f[c][s][p][q] = v;
                    }
                }
            }
        }
        let factors: Vec<Option<Vec<C64>>> = (0..1usize << nc)
            .map(|sv| {
                let mut g = dcode.clone();
                for i in 0..dim {
                    for j in 0..dim {
                        for (c, sup) in supports.iter().enumerate() {
                            let (p, q) = (parity(i & sup) as usize, parity(j & sup) as usize);
                            g[i * dim + j] *= f[c][(sv >> c) & 1][p][q];
                        }
                    }
                }
                g.iter().any(|z| *z != ZERO).then_some(g)
            })
            .collect();

        let mut next: BTreeMap<Register, Vec<DensityMatrix>> = BTreeMap::new();
        for (reg, ops) in map {
            let mut hs = ops;
            for op in hs.iter_mut() {
                for g in 0..n {
                    op.apply_1q(g, &Mat2::hadamard());
                }
            }
            let mut by_m: BTreeMap<(u64, u64), Vec<DensityMatrix>> = BTreeMap::new();
            for m in 0..dim {
                let mut signs = reg.signs;
                for j in 0..code.k {
                    if t % 2 == 1 && parity(m & lx[j]) {
                        signs ^= 1 << (2 * j);
                    }
                    if t % 2 == 0 && parity(m & lz[j]) {
                        signs ^= 1 << (2 * j + 1);
                    }
                }
                let u = supports.iter().enumerate().fold(0u64, |acc, (c, s)| acc | (parity(m & s) as u64) << c);
                let entry = by_m.entry((signs, u)).or_insert_with(|| {
                    hs.iter().map(|h| DensityMatrix::zeros(h.qubits()).expect("same size")).collect()
                });
                for (acc, h) in entry.iter_mut().zip(&hs) {
                    let src = h.data();
                    let dst = acc.data_mut();
                    for i in 0..dim {
                        for j in 0..dim {
                            dst[i * dim + j] += src[(i ^ m) * dim + (j ^ m)];
                        }
                    }
                }
            }
            for ((signs, u), acc) in by_m {
                for (sv, g) in factors.iter().enumerate() {
                    let Some(g) = g else { continue };
                    let mut outs = acc.clone();
                    let mut nonzero = false;
                    for o in outs.iter_mut() {
                        for (z, w) in o.data_mut().iter_mut().zip(g) {
                            *z *= *w;
                            nonzero |= *z != ZERO;
                        }
                    }
                    if !nonzero {
                        continue;
                    }
                    let mut key = reg.key.clone();
                    let prev = if t > 2 { reg.last[t % 2] } else { 0 };
                    for c in 0..nc {
                        let s = (sv >> c) & 1 == 1;
                        key.push(match grouping {
                            Grouping::Corrected => s ^ ((prev >> c) & 1 == 1) ^ ((u >> c) & 1 == 1),
                            Grouping::Raw => s,
                        });
                    }
                    let mut last = reg.last;
                    last[t % 2] = sv as u64;
                    let r = Register { key, signs, last };
                    match next.get_mut(&r) {
                        Some(v) => v.iter_mut().zip(&outs).for_each(|(a, b)| a.add_assign(b)),
                        None => {
                            next.insert(r, outs);
                        }
                    }
                }
            }
        }
        map = next;
    }

    let widths: Vec<usize> = (1..=2 * rounds).map(|t| code.checks_for_round(t).len()).collect();
    let mut groups: BTreeMap<String, GroupSum> = BTreeMap::new();
    for (reg, outs) in map {
        let mut rows = Vec::with_capacity(widths.len());
        let mut pos = 0;
        for w in &widths {
            rows.push(reg.key[pos..pos + w].to_vec());
            pos += w;
        }
        let sign = |j: usize, p: Pauli| {
            let sx = if (reg.signs >> (2 * j)) & 1 == 1 { -1.0 } else { 1.0 };
            let sz = if (reg.signs >> (2 * j + 1)) & 1 == 1 { -1.0 } else { 1.0 };
            match p {
                Pauli::I => 1.0,
                Pauli::X => sx,
                Pauli::Y => sx * sz,
                Pauli::Z => sz,
            }
        };
        groups.entry(syndrome_string(&rows)).or_insert_with(|| GroupSum::new(code.k)).add(code, &outs, sign);
    }
    Ok(LogicalChannelReport { groups: groups.into_iter().map(|(k, g)| (k, g.finish())).collect() })
}
