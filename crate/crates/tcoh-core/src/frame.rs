//! The eight Pauli frames `H^h · P` produced by one-bit teleportation.

use core::fmt;

use crate::ptm::{hadamard_ptm, pauli_ptm, Ptm};
use crate::Pauli;

/// The channel `𝓗^h ∘ 𝓟`: the Pauli acts first, then an optional Hadamard.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliFrame {
    pub hadamard: bool,
    pub pauli: Pauli,
}

impl PauliFrame {
    pub const IDENTITY: PauliFrame = PauliFrame { hadamard: false, pauli: Pauli::I };

    pub const fn new(hadamard: bool, pauli: Pauli) -> PauliFrame {
        PauliFrame { hadamard, pauli }
    }

    /// All eight frames, ordered I, X, Y, Z, H, HX, HY, HZ.
    pub fn all() -> [PauliFrame; 8] {
        let mut out = [PauliFrame::IDENTITY; 8];
        for (i, f) in out.iter_mut().enumerate() {
            *f = PauliFrame::from_index(i);
        }
        out
    }

    pub fn index(self) -> usize {
        (self.hadamard as usize) * 4 + self.pauli.index()
    }

    pub fn from_index(i: usize) -> PauliFrame {
        PauliFrame::new(i & 4 != 0, Pauli::from_index(i))
    }

    /// `outer ∘ inner` as frames (phases dropped).
    pub fn compose(outer: PauliFrame, inner: PauliFrame) -> PauliFrame {
        // H^a P H^b Q = H^{a+b} (H^b P H^b) Q
        let moved = if inner.hadamard { outer.pauli.hadamard_image() } else { outer.pauli };
        PauliFrame::new(outer.hadamard ^ inner.hadamard, moved.times(inner.pauli))
    }

    pub fn inverse(self) -> PauliFrame {
        // (H^h P)^{-1} = P H^h = H^h (H^h P H^h)
        let p = if self.hadamard { self.pauli.hadamard_image() } else { self.pauli };
        PauliFrame::new(self.hadamard, p)
    }

    /// One teleportation step with outcome `m`: `H Z^m ∘ self`.
    pub fn advance(self, m: bool) -> PauliFrame {
        let step = PauliFrame::new(true, if m { Pauli::Z } else { Pauli::I });
        PauliFrame::compose(step, self)
    }

    /// Signed-permutation PTM of the frame channel.
    pub fn ptm(self) -> Ptm {
        let p = pauli_ptm(self.pauli);
        if self.hadamard {
            hadamard_ptm() * p
        } else {
            p
        }
    }

    /// Applies the frame to the Bloch vector components (X, Y, Z).
    pub fn apply_to_vector(self, v: [f64; 3]) -> [f64; 3] {
        let m = self.ptm();
        let mut out = [0.0; 3];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|c| m.0[r + 1][c + 1] * v[c]).sum();
        }
        out
    }
}

impl fmt::Display for PauliFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.hadamard, self.pauli) {
            (false, p) => write!(f, "{p}"),
            (true, Pauli::I) => f.write_str("H"),
            (true, p) => write!(f, "H{p}"),
        }
    }
}
