//! Single-qubit Pauli labels, multiplied up to phase.

use core::fmt;

/// A single-qubit Pauli operator. Index order is (I, X, Y, Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Pauli {
        Pauli::ALL[i & 3]
    }

    /// Builds the Pauli with the given X and Z components.
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// (X component, Z component).
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    /// Product with the phase dropped.
    pub fn times(self, other: Pauli) -> Pauli {
        let (a, b) = self.bits();
        let (c, d) = other.bits();
        Pauli::from_bits(a ^ c, b ^ d)
    }

    pub fn commutes_with(self, other: Pauli) -> bool {
        let (a, b) = self.bits();
        let (c, d) = other.bits();
        !((a & d) ^ (b & c))
    }

    /// Image under conjugation by H, up to sign.
    pub fn hadamard_image(self) -> Pauli {
        let (x, z) = self.bits();
        Pauli::from_bits(z, x)
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        };
        f.write_str(s)
    }
}
