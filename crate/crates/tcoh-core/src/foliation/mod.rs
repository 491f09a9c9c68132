//! CSS codes run as foliated (cluster-state) protocols, pure Z-coherent
//! circuit noise on them, and its exact conversion to Pauli noise.
//!
//! Qubits are labelled `gamma = 1..=n` for code qubits, then one ancilla per
//! X-check, then one per Z-check. Rounds run `t = 1..=2L`: X-checks are
//! measured after odd rounds and Z-checks after even rounds.

mod code;
mod convert;
mod noise;
mod syndrome;

pub use code::{validate_code, BitMatrix, CodeViolation, CssCode};
pub use convert::{
    ancilla_replacement, code_qubit_replacement, combine_round_errors, composed_flip_probability,
    convert_general_channel, convert_noise_model, convert_noise_model_with_stats, replacement_probability,
    ConversionStats, GeneralConversion, DEFAULT_TUPLE_CAP,
};
pub use noise::{
    Axis, FoliationNoiseModel, GeneralPureZChannel, NoiseChannel, PauliReplacement, PureZKraus, PureZTerm,
    QubitRole, SpacetimeLocation,
};
pub use syndrome::{cluster_stabilizer_outcomes, syndrome_string, SyndromeRecord};
