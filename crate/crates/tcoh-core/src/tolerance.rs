//! Centralized numeric tolerances.

/// Tolerances used across the crate. Every operation that takes a tolerance
/// has a variant accepting an explicit value; the defaults live here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Entrywise equality of matrices.
    pub equality: f64,
    /// Kraus completeness residue.
    pub completeness: f64,
    /// Imaginary residue of PTM entries.
    pub imaginary: f64,
    /// X- and Y-coherence allowed by the pure Z-coherence gate.
    pub purity: f64,
    /// Cross-syndrome coherence allowed in a post-error code state.
    pub eigenstate: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            equality: 1e-12,
            completeness: 1e-10,
            imaginary: 1e-12,
            purity: 1e-10,
            eigenstate: 1e-12,
        }
    }
}

impl Tolerances {
    /// Override a tolerance by name. Returns `false` for an unknown name.
    pub fn set(&mut self, name: &str, value: f64) -> bool {
        let slot = match name {
            "equality" => &mut self.equality,
            "completeness" => &mut self.completeness,
            "imaginary" => &mut self.imaginary,
            "purity" => &mut self.purity,
            "eigenstate" => &mut self.eigenstate,
            _ => return false,
        };
        *slot = value;
        true
    }
}
