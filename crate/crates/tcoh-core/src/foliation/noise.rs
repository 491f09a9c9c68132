use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64 as C64;

use super::code::CssCode;
use crate::ptm::{is_pure_z_coherent, ptm_from_kraus_tol, KrausSet, Mat2, Ptm};
use crate::{math, Error, Pauli, Result, Tolerances};

/// A noise slot `(gamma, t, w)`, all 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpacetimeLocation {
    pub gamma: usize,
    pub t: usize,
    pub w: usize,
}

impl SpacetimeLocation {
    pub const fn new(gamma: usize, t: usize, w: usize) -> SpacetimeLocation {
        SpacetimeLocation { gamma, t, w }
    }
}

impl fmt::Display for SpacetimeLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(gamma={}, t={}, w={})", self.gamma, self.t, self.w)
    }
}

/// What a qubit label refers to. Indices inside the variants are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QubitRole {
    Code(usize),
    XAncilla(usize),
    ZAncilla(usize),
}

impl QubitRole {
    pub fn of(code: &CssCode, gamma: usize) -> Option<QubitRole> {
        let (n, nx, nz) = (code.n, code.num_x_checks(), code.num_z_checks());
        match gamma {
            g if g >= 1 && g <= n => Some(QubitRole::Code(g - 1)),
            g if g > n && g <= n + nx => Some(QubitRole::XAncilla(g - n - 1)),
            g if g > n + nx && g <= n + nx + nz => Some(QubitRole::ZAncilla(g - n - nx - 1)),
            _ => None,
        }
    }

    pub fn gamma(self, code: &CssCode) -> usize {
        match self {
            QubitRole::Code(i) => i + 1,
            QubitRole::XAncilla(p) => code.n + p + 1,
            QubitRole::ZAncilla(q) => code.n + code.num_x_checks() + q + 1,
        }
    }

    /// Whether this qubit is active in round `t`. Ancillas exist only in
    /// the rounds after which their check is measured.
    pub fn active_in(self, t: usize) -> bool {
        match self {
            QubitRole::Code(_) => true,
            QubitRole::XAncilla(_) => t % 2 == 1,
            QubitRole::ZAncilla(_) => t % 2 == 0,
        }
    }
}

/// Kraus operator `αI + βZ` of a trace-preserving rank-1 channel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureZKraus {
    pub alpha: C64,
    pub beta: C64,
}

const RANK1_TOL: f64 = 1e-10;

impl PureZKraus {
    /// Requires `|α|² + |β|² = 1` and `Re(ᾱβ) = 0`. The global phase is
    /// normalized so that α is real and nonnegative.
    pub fn new(alpha: C64, beta: C64) -> Result<PureZKraus> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        let cross = (alpha.conj() * beta).re;
        if math::abs(norm - 1.0) > RANK1_TOL || math::abs(cross) > RANK1_TOL {
            return Err(Error::Domain(format!(
                "alpha I + beta Z with |alpha|^2+|beta|^2 = {norm} and Re(conj(alpha) beta) = {cross} is not trace preserving"
            )));
        }
        Ok(PureZKraus::normalized(alpha, beta))
    }

    pub(crate) fn normalized(alpha: C64, beta: C64) -> PureZKraus {
        let a = math::cabs(alpha);
        let phase = if a > 0.0 {
            alpha.conj() / a
        } else {
            let b = math::cabs(beta);
            if b > 0.0 {
                beta.conj() / b
            } else {
                C64::new(1.0, 0.0)
            }
        };
        PureZKraus { alpha: alpha * phase, beta: beta * phase }
    }

    pub fn identity() -> PureZKraus {
        PureZKraus { alpha: C64::new(1.0, 0.0), beta: C64::new(0.0, 0.0) }
    }

    /// `e^{iθZ} = cos θ I + i sin θ Z`.
    pub fn rotation(theta: f64) -> PureZKraus {
        PureZKraus { alpha: C64::new(math::cos(theta), 0.0), beta: C64::new(0.0, math::sin(theta)) }
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::identity().scale(self.alpha) + Mat2::pauli(Pauli::Z).scale(self.beta)
    }

    pub fn flip_probability(&self) -> f64 {
        self.beta.norm_sqr()
    }
}

/// One weighted term `c · (αI + βZ)ρ(αI + βZ)†`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureZTerm {
    pub c: f64,
    pub alpha: C64,
    pub beta: C64,
}

/// A channel whose Kraus operators all lie in `span{I, Z}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralPureZChannel {
    terms: Vec<PureZTerm>,
}

impl GeneralPureZChannel {
    /// Requires `c_i ≥ 0`, `Σ c_i(|α_i|²+|β_i|²) = 1` and `Σ c_i Re(ᾱ_i β_i) = 0`.
    pub fn new(terms: Vec<PureZTerm>) -> Result<GeneralPureZChannel> {
        if terms.is_empty() {
            return Err(Error::Domain("a channel needs at least one term".into()));
        }
        if let Some((i, t)) = terms.iter().enumerate().find(|(_, t)| !(t.c >= 0.0)) {
            return Err(Error::Domain(format!("term {i} has coefficient c = {}; coefficients must be nonnegative", t.c)));
        }
        let norm: f64 = terms.iter().map(|t| t.c * (t.alpha.norm_sqr() + t.beta.norm_sqr())).sum();
        let cross: f64 = terms.iter().map(|t| t.c * (t.alpha.conj() * t.beta).re).sum();
        if math::abs(norm - 1.0) > RANK1_TOL || math::abs(cross) > RANK1_TOL {
            return Err(Error::Domain(format!(
                "terms give sum c(|alpha|^2+|beta|^2) = {norm} and sum c Re(conj(alpha) beta) = {cross}; not trace preserving"
            )));
        }
        Ok(GeneralPureZChannel { terms })
    }

    pub fn terms(&self) -> &[PureZTerm] {
        &self.terms
    }
}

/// Noise at one slot.
#[derive(Clone, Debug, PartialEq)]
pub enum NoiseChannel {
    Rank1(PureZKraus),
    General(GeneralPureZChannel),
}

impl NoiseChannel {
    pub fn rotation(theta: f64) -> NoiseChannel {
        NoiseChannel::Rank1(PureZKraus::rotation(theta))
    }

    /// Weighted `(c, α, β)` terms; a rank-1 channel has a single unit term.
    pub fn terms(&self) -> Vec<PureZTerm> {
        match self {
            NoiseChannel::Rank1(k) => alloc::vec![PureZTerm { c: 1.0, alpha: k.alpha, beta: k.beta }],
            NoiseChannel::General(g) => g.terms.clone(),
        }
    }

    pub fn kraus(&self) -> KrausSet {
        let terms = self.terms();
        let ops = terms
            .iter()
            .map(|t| Mat2::identity().scale(t.alpha) + Mat2::pauli(Pauli::Z).scale(t.beta))
            .collect();
        KrausSet::subnormalized(ops, terms.iter().map(|t| t.c).collect()).expect("validated terms")
    }

    pub fn ptm(&self) -> Ptm {
        // Kraus ops in span{I, Z} give a real PTM.
        ptm_from_kraus_tol(&self.kraus(), f64::INFINITY).expect("span{I,Z} channel")
    }

    /// Accepts an arbitrary Kraus set if it passes the pure Z-coherence gate
    /// and every operator lies in `span{I, Z}`.
    pub fn from_kraus(k: &KrausSet, tol: &Tolerances, location: &str) -> Result<NoiseChannel> {
        let ptm = ptm_from_kraus_tol(k, tol.imaginary)?;
        if !is_pure_z_coherent(&ptm, tol.purity) {
            return Err(Error::Purity {
                location: location.into(),
                detail: format!("PTM has X/Y coherence or (Z,Z) != 1: {:?}", ptm.0),
            });
        }
        let mut terms = Vec::with_capacity(k.ops().len());
        for (e, c) in k.ops().iter().zip(k.weights()) {
            let off = math::cabs(e.0[0][1]).max(math::cabs(e.0[1][0]));
            if off > tol.purity {
                return Err(Error::Purity {
                    location: location.into(),
                    detail: format!("Kraus operator has off-diagonal magnitude {off:e}"),
                });
            }
            let alpha = (e.0[0][0] + e.0[1][1]) * 0.5;
            let beta = (e.0[0][0] - e.0[1][1]) * 0.5;
            terms.push(PureZTerm { c: *c, alpha, beta });
        }
        if terms.len() == 1 && math::abs(terms[0].c - 1.0) <= RANK1_TOL {
            return Ok(NoiseChannel::Rank1(PureZKraus::new(terms[0].alpha, terms[0].beta)?));
        }
        Ok(NoiseChannel::General(GeneralPureZChannel::new(terms)?))
    }
}

/// Circuit-level pure Z-coherent noise on a foliated code.
#[derive(Clone, Debug, PartialEq)]
pub struct FoliationNoiseModel {
    code: CssCode,
    rounds: usize,
    widths: Vec<usize>,
    channels: BTreeMap<SpacetimeLocation, NoiseChannel>,
}

impl FoliationNoiseModel {
    /// Noise-free model; `widths[gamma - 1]` is `W_gamma`.
    pub fn new(code: CssCode, rounds: usize, widths: Vec<usize>) -> Result<FoliationNoiseModel> {
        if widths.len() != code.num_locations() {
            return Err(Error::Dimension {
                expected: format!("{} slot widths", code.num_locations()),
                found: format!("{}", widths.len()),
            });
        }
        Ok(FoliationNoiseModel { code, rounds, widths, channels: BTreeMap::new() })
    }

    /// The same channel in every slot.
    pub fn homogeneous(code: CssCode, rounds: usize, widths: Vec<usize>, ch: NoiseChannel) -> Result<FoliationNoiseModel> {
        let mut m = FoliationNoiseModel::new(code, rounds, widths)?;
        for loc in m.locations() {
            m.channels.insert(loc, ch.clone());
        }
        Ok(m)
    }

    /// Default slot widths: check weight + 2 for an ancilla, and for a code
    /// qubit the larger of its X- and Z-check counts plus 2.
    pub fn default_widths(code: &CssCode) -> Vec<usize> {
        let weight = |r: &Vec<bool>| r.iter().filter(|b| **b).count() + 2;
        let mut w: Vec<usize> = (0..code.n)
            .map(|i| {
                let nx = code.x_checks.iter().filter(|r| r[i]).count();
                let nz = code.z_checks.iter().filter(|r| r[i]).count();
                nx.max(nz) + 2
            })
            .collect();
        w.extend(code.x_checks.iter().map(weight));
        w.extend(code.z_checks.iter().map(weight));
        w
    }

    pub fn code(&self) -> &CssCode {
        &self.code
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    pub fn width(&self, gamma: usize) -> usize {
        self.widths[gamma - 1]
    }

    pub fn check_location(&self, loc: SpacetimeLocation) -> Result<QubitRole> {
        let bad = |why: String| Err(Error::Domain(format!("location {loc}: {why}")));
        let Some(role) = QubitRole::of(&self.code, loc.gamma) else {
            return bad(format!("gamma outside 1..={}", self.code.num_locations()));
        };
        if loc.t == 0 || loc.t > 2 * self.rounds {
            return bad(format!("t outside 1..={}", 2 * self.rounds));
        }
        if !role.active_in(loc.t) {
            return bad("ancilla is not used in this round".into());
        }
        if loc.w == 0 || loc.w > self.width(loc.gamma) {
            return bad(format!("w outside 1..={}", self.width(loc.gamma)));
        }
        Ok(role)
    }

    pub fn set(&mut self, loc: SpacetimeLocation, ch: NoiseChannel) -> Result<()> {
        self.check_location(loc)?;
        self.channels.insert(loc, ch);
        Ok(())
    }

    /// Channel at a slot; `None` means noiseless.
    pub fn channel(&self, loc: SpacetimeLocation) -> Option<&NoiseChannel> {
        self.channels.get(&loc)
    }

    pub fn channels(&self) -> &BTreeMap<SpacetimeLocation, NoiseChannel> {
        &self.channels
    }

    /// Every valid slot, ordered by (gamma, t, w).
    pub fn locations(&self) -> Vec<SpacetimeLocation> {
        let mut out = Vec::new();
        for gamma in 1..=self.code.num_locations() {
            let role = QubitRole::of(&self.code, gamma).expect("in range");
            for t in (1..=2 * self.rounds).filter(|t| role.active_in(*t)) {
                for w in 1..=self.width(gamma) {
                    out.push(SpacetimeLocation::new(gamma, t, w));
                }
            }
        }
        out
    }
}

/// Pauli axis of a replacement channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Z,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "X",
            Axis::Z => "Z",
        })
    }
}

/// Per-slot Pauli channels equivalent to a pure Z-coherent model.
///
/// Axes are given in the frame where the Hadamards of odd rounds have been
/// moved past the code-qubit noise: code qubits carry X flips in odd rounds
/// and Z flips in even rounds, ancillas always carry Z flips. In the physical
/// circuit every slot is a Z flip with the same probability.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliReplacement {
    pub code: CssCode,
    pub rounds: usize,
    pub widths: Vec<usize>,
    pub probs: BTreeMap<SpacetimeLocation, (Axis, f64)>,
}
