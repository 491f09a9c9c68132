use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use super::circuit::{run_conditional, sampled_report, FoliationRun, OutcomePolicy, RunNoise};
use super::enumerate::{enumerate_report, Grouping};
use super::state::{diagonal_table, parity, DensityMatrix};
use super::{code_projector, mask, GroupChannel, LogicalChannelReport};
use crate::foliation::{convert_noise_model, syndrome_string, CssCode, FoliationNoiseModel, NoiseChannel};
use crate::ptm::KrausSet;
use crate::{Error, Result};

/// Logical channels grouped by corrected syndrome under the run's policy.
pub fn averaged_logical_report(run: &FoliationRun) -> Result<LogicalChannelReport> {
    match &run.policy {
        OutcomePolicy::EnumerateAll => enumerate_report(&run.effective_model()?, Grouping::Corrected),
        OutcomePolicy::Fixed(rec) => {
            let r = run_conditional(run, rec)?;
            let mut rep = LogicalChannelReport::default();
            rep.groups.insert(syndrome_string(&r.corrected), GroupChannel { probability: r.probability, ptms: r.ptms });
            Ok(rep)
        }
        OutcomePolicy::Sample { samples, seed } => sampled_report(run, *samples, *seed),
    }
}

/// Groups rarer than this in both models are left out of the PTM comparison:
/// their renormalized channels amplify rounding by `1/probability`.
pub const PTM_COMPARE_MIN_PROBABILITY: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct GroupDeviation {
    pub syndrome: String,
    pub prob_coherent: f64,
    pub prob_pauli: f64,
    /// Largest entry difference of the logical PTMs; `None` when the group
    /// is too rare to compare.
    pub max_ptm_delta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Theorem2Report {
    pub groups: Vec<GroupDeviation>,
    pub max_probability_deviation: f64,
    pub max_ptm_deviation: f64,
    /// The same comparison grouped by raw outcomes; reported, not asserted.
    pub raw_max_probability_deviation: f64,
    pub raw_max_ptm_deviation: f64,
}

impl Theorem2Report {
    pub fn max_deviation(&self) -> f64 {
        self.max_probability_deviation.max(self.max_ptm_deviation)
    }
}

fn compare(a: &LogicalChannelReport, b: &LogicalChannelReport) -> Vec<GroupDeviation> {
    let keys: BTreeSet<&String> = a.groups.keys().chain(b.groups.keys()).collect();
    keys.into_iter()
        .map(|k| {
            let ga = a.groups.get(k);
            let gb = b.groups.get(k);
            let pa = ga.map_or(0.0, |g| g.probability);
            let pb = gb.map_or(0.0, |g| g.probability);
            let delta = match (ga.and_then(|g| g.ptms.as_ref()), gb.and_then(|g| g.ptms.as_ref())) {
                (Some(x), Some(y)) if pa.min(pb) >= PTM_COMPARE_MIN_PROBABILITY => {
                    Some(x.iter().zip(y).map(|(m, n)| m.max_abs_diff(n)).fold(0.0, f64::max))
                }
                _ => None,
            };
            GroupDeviation { syndrome: k.clone(), prob_coherent: pa, prob_pauli: pb, max_ptm_delta: delta }
        })
        .collect()
}

fn maxima(groups: &[GroupDeviation]) -> (f64, f64) {
    groups.iter().fold((0.0f64, 0.0f64), |(p, m), g| {
        (p.max((g.prob_coherent - g.prob_pauli).abs()), m.max(g.max_ptm_delta.unwrap_or(0.0)))
    })
}

/// Simulates the coherent model and its Pauli replacement and compares the
/// grouped logical channels.
pub fn verify_theorem2(model: &FoliationNoiseModel) -> Result<Theorem2Report> {
    let rep = convert_noise_model(model)?;
    let coherent = FoliationRun::new(RunNoise::Coherent(model.clone()), OutcomePolicy::EnumerateAll).effective_model()?;
    let pauli = FoliationRun::new(RunNoise::Pauli(rep), OutcomePolicy::EnumerateAll).effective_model()?;
    let groups = compare(&enumerate_report(&coherent, Grouping::Corrected)?, &enumerate_report(&pauli, Grouping::Corrected)?);
    let raw = compare(&enumerate_report(&coherent, Grouping::Raw)?, &enumerate_report(&pauli, Grouping::Raw)?);
    let (mp, mm) = maxima(&groups);
    let (rp, rm) = maxima(&raw);
    Ok(Theorem2Report {
        groups,
        max_probability_deviation: mp,
        max_ptm_deviation: mm,
        raw_max_probability_deviation: rp,
        raw_max_ptm_deviation: rm,
    })
}

/// Maximally mixed state of the code space, `Π / 2^k`.
pub fn code_state(code: &CssCode) -> Result<DensityMatrix> {
    let mut p = code_projector(code)?;
    p.scale(1.0 / (1u64 << code.k) as f64);
    Ok(p)
}

/// Applies a single-qubit channel to `state` and reports whether the result
/// has no coherence between different eigenvalues of any check, i.e.
/// `S ρ S = ρ` for every generator `S` to within `tol`.
pub fn stabilizer_eigenstate_check(
    code: &CssCode,
    qubit: usize,
    error: &KrausSet,
    state: &DensityMatrix,
    tol: f64,
) -> Result<bool> {
    if state.qubits() != code.n || qubit >= code.n {
        return Err(Error::Dimension {
            expected: alloc::format!("a {}-qubit state and qubit < {}", code.n, code.n),
            found: alloc::format!("{} qubits, qubit {qubit}", state.qubits()),
        });
    }
    let mut out = DensityMatrix::zeros(code.n)?;
    for (k, w) in error.ops().iter().zip(error.weights()) {
        let mut r = state.clone();
        r.apply_1q(qubit, k);
        r.scale(*w);
        out.add_assign(&r);
    }
    let gens = code.x_checks.iter().map(|r| (mask(r), 0)).chain(code.z_checks.iter().map(|r| (0, mask(r))));
    for (x, z) in gens {
        let mut c = out.clone();
        c.conjugate_pauli(x, z);
        if c.max_abs_diff(&out) > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Measures `Z` on the qubits of `support` through a `|+⟩` ancilla with an
/// optional ancilla channel before the CZs. Returns the unnormalized
/// post-measurement states for outcomes 0 and 1.
pub fn measure_z_parity(state: &DensityMatrix, support: usize, ancilla_noise: Option<&NoiseChannel>) -> Result<[DensityMatrix; 2]> {
    let anc = state.qubits();
    let mut big = state.push_plus()?;
    if let Some(ch) = ancilla_noise {
        big.apply_diagonal_channel(anc, &diagonal_table(&ch.terms()));
    }
    for q in (0..anc).filter(|q| support >> q & 1 == 1) {
        big.cz(q, anc);
    }
    Ok([big.measure_top_x(false), big.measure_top_x(true)])
}

/// `α Π[s] + β Π[1−s]` with `Π[s] = (I + (−1)^s Z_support)/2`.
pub fn imperfect_projector(qubits: usize, support: usize, alpha: C64, beta: C64, s: bool) -> Result<DensityMatrix> {
    let mut k = DensityMatrix::zeros(qubits)?;
    let d = k.dim();
    for i in 0..d {
        let hit = parity(i & support) == s;
        k.data_mut()[i * d + i] = if hit { alpha } else { beta };
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::PureZKraus;
    use crate::ptm::{rotation_unitary, Mat2};
    use crate::Pauli;

    #[test]
    fn errors_keep_check_eigenstates() {
        let c = CssCode::four_qubit();
        let rho = code_state(&c).unwrap();
        let x = KrausSet::unitary(Mat2::pauli(Pauli::X)).unwrap();
        assert!(stabilizer_eigenstate_check(&c, 0, &x, &rho, 1e-12).unwrap());
        let none = KrausSet::unitary(Mat2::identity()).unwrap();
        assert!(stabilizer_eigenstate_check(&c, 2, &none, &rho, 1e-12).unwrap());
        let rx = KrausSet::unitary(rotation_unitary([1.0, 0.0, 0.0], 0.1).unwrap()).unwrap();
        assert!(!stabilizer_eigenstate_check(&c, 0, &rx, &rho, 1e-12).unwrap());
    }

    #[test]
    fn noisy_measurement_matches_imperfect_projector() {
        let c = CssCode::four_qubit();
        let n = PureZKraus::rotation(0.37);
        // a state that is not a check eigenstate
        let mut rho = DensityMatrix::basis(4, 0).unwrap();
        rho.apply_1q(0, &Mat2::hadamard());
        let sup = mask(&c.z_checks[0]);
        let outs = measure_z_parity(&rho, sup, Some(&NoiseChannel::Rank1(n))).unwrap();
        for (s, out) in outs.iter().enumerate() {
            let k = imperfect_projector(4, sup, n.alpha, n.beta, s == 1).unwrap();
            let want = k.matmul(&rho).matmul(&k.adjoint());
            assert!(out.max_abs_diff(&want) < 1e-15);
        }
    }
}
