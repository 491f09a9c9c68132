//! Threshold arithmetic for a teleported code under `e^{iθZ}` noise that
//! combines coherently over `n` spacetime locations per round.

use alloc::format;

use crate::{math, Error, Result};

/// Inputs to [`evaluate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdInputs {
    /// Maximum neighbour count in the decoding graph.
    pub b: u32,
    /// Locations whose rotations combine into one Pauli error.
    pub n_locations: u32,
    /// A Pauli threshold taken from elsewhere; replaces the lower bound when
    /// converting to an angle.
    pub p_th_numeric: Option<f64>,
}

impl Default for ThresholdInputs {
    fn default() -> Self {
        ThresholdInputs { b: 6, n_locations: 5, p_th_numeric: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdReport {
    pub p_th_bound: f64,
    pub theta_bound: f64,
}

/// `p = sin²(n θ)`.
pub fn pauli_probability_from_angle(theta: f64, n_locations: u32) -> Result<f64> {
    if n_locations == 0 {
        return Err(Error::Domain("n_locations must be at least 1".into()));
    }
    let s = math::sin(n_locations as f64 * theta);
    Ok(s * s)
}

/// `p_th ≥ 1 / [2 (B − 1)]²`.
pub fn threshold_lower_bound(b: u32) -> Result<f64> {
    if b < 2 {
        return Err(Error::Domain(format!("B = {b} must be at least 2")));
    }
    let d = 2.0 * (b - 1) as f64;
    Ok(1.0 / (d * d))
}

/// `θ_th = arcsin(√p_th) / n`.
pub fn theta_threshold(p_th: f64, n_locations: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_th) {
        return Err(Error::Domain(format!("p_th = {p_th} outside [0, 1]")));
    }
    if n_locations == 0 {
        return Err(Error::Domain("n_locations must be at least 1".into()));
    }
    Ok(math::asin(math::sqrt(p_th)) / n_locations as f64)
}

pub fn evaluate(inputs: &ThresholdInputs) -> Result<ThresholdReport> {
    let p_th_bound = threshold_lower_bound(inputs.b)?;
    let p = inputs.p_th_numeric.unwrap_or(p_th_bound);
    Ok(ThresholdReport { p_th_bound, theta_bound: theta_threshold(p, inputs.n_locations)? })
}
