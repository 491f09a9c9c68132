//! JSON input formats and their conversion into library types.
//!
//! Every subcommand shares one channel object. It is either a Kraus list
//! `{"kraus": [[[re, im], ...], ...], "weights": [...]}` or a named shorthand
//! `{"type": "rot_z" | "rot_axis" | "pauli", ...}`. Foliation noise also
//! accepts `{"alpha": [re, im], "beta": [re, im]}` and
//! `{"terms": [{"c": .., "alpha": .., "beta": ..}]}`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tcoh_core::foliation::{
    validate_code, CssCode, FoliationNoiseModel, GeneralPureZChannel, NoiseChannel, PureZKraus, PureZTerm,
    SpacetimeLocation,
};
use tcoh_core::ptm::{pauli_channel, rotation_unitary, Mat2};
use tcoh_core::{Complex64, KrausSet, Ptm, Tolerances};

use crate::error::{CliError, CliResult};

/// Parses JSON text into `T`, naming the offending key on failure.
pub fn parse<T: DeserializeOwned>(text: &str) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::usage(format!("parse error at `{path}`: {}", e.into_inner()))
    })
}

pub type ComplexSpec = [f64; 2];

fn c(z: ComplexSpec) -> Complex64 {
    Complex64::new(z[0], z[1])
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub c: f64,
    pub alpha: ComplexSpec,
    pub beta: ComplexSpec,
}

/// The shared channel object. Which keys are required depends on the form.
#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub px: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub py: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kraus: Option<Vec<Vec<Vec<ComplexSpec>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ComplexSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<ComplexSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermSpec>>,
}

fn need<T: Copy>(v: Option<T>, key: &str, at: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::usage(format!("{at}: missing key `{key}`")))
}

impl ChannelSpec {
    pub fn rot_z(theta: f64) -> ChannelSpec {
        ChannelSpec { kind: Some("rot_z".into()), theta: Some(theta), ..Default::default() }
    }

    pub fn rot_axis(axis: [f64; 3], theta: f64) -> ChannelSpec {
        ChannelSpec { kind: Some("rot_axis".into()), axis: Some(axis), theta: Some(theta), ..Default::default() }
    }

    /// The channel as Kraus operators. `at` names the object in messages.
    pub fn to_kraus(&self, at: &str, tol: &Tolerances) -> CliResult<KrausSet> {
        if let Some(kind) = &self.kind {
            return match kind.as_str() {
                "rot_z" => Ok(KrausSet::unitary(rotation_unitary([0.0, 0.0, 1.0], need(self.theta, "theta", at)?)?)?),
                "rot_axis" => {
                    Ok(KrausSet::unitary(rotation_unitary(need(self.axis, "axis", at)?, need(self.theta, "theta", at)?)?)?)
                }
                "pauli" => Ok(pauli_channel(
                    self.px.unwrap_or(0.0),
                    self.py.unwrap_or(0.0),
                    self.pz.unwrap_or(0.0),
                )?),
                other => Err(CliError::usage(format!(
                    "{at}: unknown channel type `{other}` (expected rot_z, rot_axis or pauli)"
                ))),
            };
        }
        if let Some(ops) = &self.kraus {
            let mats = ops
                .iter()
                .enumerate()
                .map(|(i, rows)| {
                    let rows: Vec<Vec<Complex64>> = rows.iter().map(|r| r.iter().map(|z| c(*z)).collect()).collect();
                    Mat2::from_rows(&rows).map_err(|e| CliError::usage(format!("{at}.kraus[{i}]: {e}")))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let weights = self.weights.clone().unwrap_or_else(|| vec![1.0; mats.len()]);
            let k = KrausSet::weighted(mats, weights).map_err(|e| CliError::usage(format!("{at}: {e}")))?;
            k.check_complete(tol.completeness)?;
            return Ok(k);
        }
        if self.alpha.is_some() || self.beta.is_some() || self.terms.is_some() {
            return Ok(self.to_noise_channel(at, tol)?.kraus());
        }
        Err(CliError::usage(format!("{at}: channel needs `type`, `kraus`, `alpha`/`beta` or `terms`")))
    }

    pub fn to_ptm(&self, at: &str, tol: &Tolerances) -> CliResult<Ptm> {
        Ok(tcoh_core::ptm::ptm_from_kraus_tol(&self.to_kraus(at, tol)?, tol.imaginary)?)
    }

    /// Angle vector `θ` with the channel equal to `e^{iθ·σ}`, for rotations.
    pub fn angle_vector(&self) -> Option<[f64; 3]> {
        let theta = self.theta?;
        match self.kind.as_deref()? {
            "rot_z" => Some([0.0, 0.0, theta]),
            "rot_axis" => {
                let a = self.axis?;
                let n = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
                (n > 0.0).then(|| [a[0] / n * theta, a[1] / n * theta, a[2] / n * theta])
            }
            _ => None,
        }
    }

    /// The channel as foliation noise; other forms go through the pure
    /// Z-coherence gate.
    pub fn to_noise_channel(&self, at: &str, tol: &Tolerances) -> CliResult<NoiseChannel> {
        if let Some(terms) = &self.terms {
            let terms = terms.iter().map(|t| PureZTerm { c: t.c, alpha: c(t.alpha), beta: c(t.beta) }).collect();
            return Ok(NoiseChannel::General(
                GeneralPureZChannel::new(terms).map_err(|e| tcoh_core::Error::At { location: at.into(), source: Box::new(e) })?,
            ));
        }
        if self.alpha.is_some() || self.beta.is_some() {
            let k = PureZKraus::new(c(need(self.alpha, "alpha", at)?), c(need(self.beta, "beta", at)?))
                .map_err(|e| tcoh_core::Error::At { location: at.into(), source: Box::new(e) })?;
            return Ok(NoiseChannel::Rank1(k));
        }
        Ok(NoiseChannel::from_kraus(&self.to_kraus(at, tol)?, tol, at)?)
    }
}

/// Chain input: `{"T": 100, "error": {...}}` or `{"errors": [{...}, ...]}`.
#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ChainConfig {
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ChannelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub errors: Option<Vec<ChannelSpec>>,
}

impl ChainConfig {
    /// Channel spec for every step.
    pub fn channels(&self) -> CliResult<Vec<ChannelSpec>> {
        match (&self.error, &self.errors) {
            (Some(e), None) => {
                let t = need(self.steps, "T", "chain config")?;
                if t == 0 {
                    return Err(CliError::usage("chain config: `T` must be at least 1"));
                }
                Ok(vec![e.clone(); t])
            }
            (None, Some(list)) => {
                if list.is_empty() {
                    return Err(CliError::usage("chain config: `errors` is empty"));
                }
                if let Some(t) = self.steps {
                    if t != list.len() {
                        return Err(CliError::usage(format!("chain config: `T` = {t} but `errors` has {} entries", list.len())));
                    }
                }
                Ok(list.clone())
            }
            _ => Err(CliError::usage("chain config: give exactly one of `error` (with `T`) or `errors`")),
        }
    }

    pub fn chain_spec(&self, tol: &Tolerances) -> CliResult<tcoh_core::chain::ChainSpec> {
        let ptms = self
            .channels()?
            .iter()
            .enumerate()
            .map(|(i, ch)| ch.to_ptm(&format!("chain error t={}", i + 1), tol))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(tcoh_core::chain::ChainSpec::new(ptms)?)
    }

    /// Angle vectors if every step is a rotation.
    pub fn angle_schedule(&self) -> CliResult<Option<Vec<[f64; 3]>>> {
        Ok(self.channels()?.iter().map(ChannelSpec::angle_vector).collect())
    }
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LogicalsSpec {
    pub x: Vec<Vec<u8>>,
    pub z: Vec<Vec<u8>>,
}

/// A CSS code, either `{"named": "four_qubit" | "repetition_<n>"}` or explicit
/// binary matrices.
#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub named: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_checks: Option<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_checks: Option<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logicals: Option<LogicalsSpec>,
}

fn bit_rows(m: &[Vec<u8>], key: &str) -> CliResult<Vec<Vec<bool>>> {
    m.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .map(|b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    _ => Err(CliError::usage(format!("code.{key}[{i}]: entries must be 0 or 1"))),
                })
                .collect()
        })
        .collect()
}

impl CodeSpec {
    pub fn to_code(&self) -> CliResult<CssCode> {
        let code = if let Some(name) = &self.named {
            if name == "four_qubit" {
                CssCode::four_qubit()
            } else if let Some(n) = name.strip_prefix("repetition_").and_then(|n| n.parse().ok()) {
                CssCode::repetition(n).map_err(|e| CliError::usage(format!("code.named: {e}")))?
            } else {
                return Err(CliError::usage(format!("code.named: unknown code `{name}` (four_qubit or repetition_<n>)")));
            }
        } else {
            let n = need(self.n, "n", "code")?;
            let logicals = self.logicals.as_ref().ok_or_else(|| CliError::usage("code: missing key `logicals`"))?;
            let code = CssCode::new(
                n,
                bit_rows(self.x_checks.as_deref().unwrap_or(&[]), "x_checks")?,
                bit_rows(self.z_checks.as_deref().unwrap_or(&[]), "z_checks")?,
                bit_rows(&logicals.x, "logicals.x")?,
                bit_rows(&logicals.z, "logicals.z")?,
            )
            .map_err(|e| CliError::usage(format!("code: {e}")))?;
            if let Some(k) = self.k {
                if k != code.k {
                    return Err(CliError::usage(format!("code.k = {k} but {} logical pairs are given", code.k)));
                }
            }
            code
        };
        let violations = validate_code(&code);
        if !violations.is_empty() {
            let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(CliError::usage(format!("code: {}", list.join("; "))));
        }
        Ok(code)
    }
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LocatedChannel {
    pub gamma: usize,
    pub t: usize,
    pub w: usize,
    pub channel: ChannelSpec,
}

/// Noise on a foliated code: `default` fills every slot, `locations`
/// overrides single slots, `widths` gives `W_gamma` (default: check weight
/// + 2 for ancillas, incident-check count + 2 for code qubits).
#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub widths: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<ChannelSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub locations: Vec<LocatedChannel>,
}

/// Input of `foliate` and `verify`.
#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FoliationConfig {
    pub code: CodeSpec,
    #[serde(rename = "L")]
    pub rounds: usize,
    pub noise: NoiseSpec,
}

impl FoliationConfig {
    pub fn model(&self, tol: &Tolerances) -> CliResult<FoliationNoiseModel> {
        let code = self.code.to_code()?;
        let widths = self.noise.widths.clone().unwrap_or_else(|| FoliationNoiseModel::default_widths(&code));
        let mut model =
            FoliationNoiseModel::new(code, self.rounds, widths).map_err(|e| CliError::usage(format!("noise.widths: {e}")))?;
        if let Some(d) = &self.noise.default {
            let ch = d.to_noise_channel("noise.default", tol)?;
            for loc in model.locations() {
                model.set(loc, ch.clone())?;
            }
        }
        for (i, l) in self.noise.locations.iter().enumerate() {
            let loc = SpacetimeLocation::new(l.gamma, l.t, l.w);
            let at = format!("noise.locations[{i}] {loc}");
            let ch = l.channel.to_noise_channel(&at, tol)?;
            model.set(loc, ch).map_err(|e| CliError::usage(format!("noise.locations[{i}]: {e}")))?;
        }
        Ok(model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_channels() {
        let tol = Tolerances::default();
        let ch: ChannelSpec = parse(r#"{"type":"rot_axis","axis":[3,1,2],"theta":0.08}"#).unwrap();
        let p = ch.to_ptm("x", &tol).unwrap();
        assert!((p.get(tcoh_core::Pauli::I, tcoh_core::Pauli::I) - 1.0).abs() < 1e-15);
        let v = ch.angle_vector().unwrap();
        assert!((v[0] - 0.08 * 3.0 / 14f64.sqrt()).abs() < 1e-16);
        let ch: ChannelSpec = parse(r#"{"type":"pauli","px":0.1,"py":0,"pz":0.2}"#).unwrap();
        assert!(ch.to_ptm("x", &tol).unwrap().is_pauli(1e-15));
        let ch: ChannelSpec = parse(r#"{"kraus":[[[[1,0],[0,0]],[[0,0],[1,0]]]]}"#).unwrap();
        assert!(ch.to_ptm("x", &tol).unwrap().approx_eq(&Ptm::identity(), 1e-15));
    }

    #[test]
    fn errors_name_keys() {
        let e = parse::<ChainConfig>(r#"{"T":3,"error":{"type":"rot_z","thet":0.1}}"#).unwrap_err();
        assert!(e.to_string().contains("error.thet") || e.to_string().contains("thet"), "{e}");
        assert_eq!(e.exit_code(), 2);
        let cfg: ChainConfig = parse(r#"{"T":3,"error":{"type":"rot_z"}}"#).unwrap();
        let e = cfg.chain_spec(&Tolerances::default()).unwrap_err();
        assert!(e.to_string().contains("theta"));
    }

    #[test]
    fn foliation_config() {
        let cfg: FoliationConfig =
            parse(r#"{"code":{"named":"four_qubit"},"L":1,"noise":{"default":{"type":"rot_z","theta":0.1}}}"#).unwrap();
        let m = cfg.model(&Tolerances::default()).unwrap();
        assert_eq!(m.channels().len(), m.locations().len());
        let cfg: FoliationConfig = parse(
            r#"{"code":{"n":4,"k":1,"x_checks":[[1,1,1,1]],"z_checks":[[1,1,0,0],[0,0,1,1]],
                "logicals":{"x":[[1,1,0,0]],"z":[[1,0,1,0]]}},"L":1,
                "noise":{"widths":[1,1,1,1,1,1,1],"locations":[{"gamma":5,"t":1,"w":1,"channel":{"alpha":[0.6,0],"beta":[0,0.8]}}]}}"#,
        )
        .unwrap();
        assert_eq!(cfg.model(&Tolerances::default()).unwrap().channels().len(), 1);
        let bad: FoliationConfig =
            parse(r#"{"code":{"named":"four_qubit"},"L":1,"noise":{"default":{"type":"rot_axis","axis":[1,0,0],"theta":0.1}}}"#)
                .unwrap();
        let e = bad.model(&Tolerances::default()).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().contains("noise.default"), "{e}");
    }
}
