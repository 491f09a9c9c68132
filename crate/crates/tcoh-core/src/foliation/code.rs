use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Binary matrix stored as rows.
pub type BitMatrix = Vec<Vec<bool>>;

/// A CSS code given by its check matrices and a logical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    pub n: usize,
    pub k: usize,
    pub x_checks: BitMatrix,
    pub z_checks: BitMatrix,
    pub logical_x: BitMatrix,
    pub logical_z: BitMatrix,
}

/// One failed well-formedness condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeViolation {
    /// An X-check and a Z-check overlap on an odd number of qubits.
    ChecksAnticommute { x_check: usize, z_check: usize },
    LogicalXAnticommutesWithZCheck { logical: usize, z_check: usize },
    LogicalZAnticommutesWithXCheck { logical: usize, x_check: usize },
    /// `X̄_a` and `Z̄_b` should anticommute exactly when `a = b`.
    LogicalPairing { logical_x: usize, logical_z: usize },
}

impl fmt::Display for CodeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeViolation::ChecksAnticommute { x_check, z_check } => {
                write!(f, "x_checks[{x_check}] and z_checks[{z_check}] overlap on an odd number of qubits")
            }
            CodeViolation::LogicalXAnticommutesWithZCheck { logical, z_check } => {
                write!(f, "logical_x[{logical}] anticommutes with z_checks[{z_check}]")
            }
            CodeViolation::LogicalZAnticommutesWithXCheck { logical, x_check } => {
                write!(f, "logical_z[{logical}] anticommutes with x_checks[{x_check}]")
            }
            CodeViolation::LogicalPairing { logical_x, logical_z } => {
                write!(f, "logical_x[{logical_x}] and logical_z[{logical_z}] have the wrong commutation")
            }
        }
    }
}

fn odd_overlap(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).filter(|(x, y)| **x && **y).count() % 2 == 1
}

fn bits(rows: &[&[u8]]) -> BitMatrix {
    rows.iter().map(|r| r.iter().map(|b| *b != 0).collect()).collect()
}

impl CssCode {
    /// Checks shapes only; use [`validate_code`] for commutation.
    pub fn new(
        n: usize,
        x_checks: BitMatrix,
        z_checks: BitMatrix,
        logical_x: BitMatrix,
        logical_z: BitMatrix,
    ) -> Result<CssCode> {
        if n == 0 {
            return Err(Error::Domain("a code needs at least one qubit".into()));
        }
        for (name, m) in [("x_checks", &x_checks), ("z_checks", &z_checks), ("logical_x", &logical_x), ("logical_z", &logical_z)] {
            if let Some((i, r)) = m.iter().enumerate().find(|(_, r)| r.len() != n) {
                return Err(Error::Dimension {
                    expected: format!("{name} rows of length {n}"),
                    found: format!("{name}[{i}] of length {}", r.len()),
                });
            }
        }
        if logical_x.len() != logical_z.len() {
            return Err(Error::Dimension {
                expected: format!("{} logical_z rows", logical_x.len()),
                found: format!("{}", logical_z.len()),
            });
        }
        let k = logical_x.len();
        Ok(CssCode { n, k, x_checks, z_checks, logical_x, logical_z })
    }

    /// The [[4,1,2]] code: X-check X1X2X3X4, Z-checks Z1Z2 and Z3Z4,
    /// logicals X1X2 and Z1Z3.
    pub fn four_qubit() -> CssCode {
        CssCode::new(
            4,
            bits(&[&[1, 1, 1, 1]]),
            bits(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]),
            bits(&[&[1, 1, 0, 0]]),
            bits(&[&[1, 0, 1, 0]]),
        )
        .expect("static code")
    }

    /// Bit-flip repetition code: Z-checks on neighbours, no X-checks.
    pub fn repetition(n: usize) -> Result<CssCode> {
        if n < 2 {
            return Err(Error::Domain(format!("repetition code needs n >= 2, got {n}")));
        }
        let z = (0..n - 1).map(|i| (0..n).map(|j| j == i || j == i + 1).collect()).collect();
        let mut lz = alloc::vec![false; n];
        lz[0] = true;
        CssCode::new(n, Vec::new(), z, alloc::vec![alloc::vec![true; n]], alloc::vec![lz])
    }

    pub fn num_x_checks(&self) -> usize {
        self.x_checks.len()
    }

    pub fn num_z_checks(&self) -> usize {
        self.z_checks.len()
    }

    /// Total qubit labels: code qubits plus one ancilla per check.
    pub fn num_locations(&self) -> usize {
        self.n + self.x_checks.len() + self.z_checks.len()
    }

    /// Checks measured after round `t`: X-checks for odd `t`, Z-checks for even `t`.
    pub fn checks_for_round(&self, t: usize) -> &BitMatrix {
        if t % 2 == 1 {
            &self.x_checks
        } else {
            &self.z_checks
        }
    }

    pub fn support(row: &[bool]) -> Vec<usize> {
        row.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i).collect()
    }
}

/// Lists every commutation condition the code violates.
pub fn validate_code(code: &CssCode) -> Vec<CodeViolation> {
    let mut out = Vec::new();
    for (i, x) in code.x_checks.iter().enumerate() {
        for (j, z) in code.z_checks.iter().enumerate() {
            if odd_overlap(x, z) {
                out.push(CodeViolation::ChecksAnticommute { x_check: i, z_check: j });
            }
        }
    }
    for (a, lx) in code.logical_x.iter().enumerate() {
        for (j, z) in code.z_checks.iter().enumerate() {
            if odd_overlap(lx, z) {
                out.push(CodeViolation::LogicalXAnticommutesWithZCheck { logical: a, z_check: j });
            }
        }
    }
    for (b, lz) in code.logical_z.iter().enumerate() {
        for (i, x) in code.x_checks.iter().enumerate() {
            if odd_overlap(lz, x) {
                out.push(CodeViolation::LogicalZAnticommutesWithXCheck { logical: b, x_check: i });
            }
        }
    }
    for (a, lx) in code.logical_x.iter().enumerate() {
        for (b, lz) in code.logical_z.iter().enumerate() {
            if odd_overlap(lx, lz) != (a == b) {
                out.push(CodeViolation::LogicalPairing { logical_x: a, logical_z: b });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_qubit_code_is_valid() {
        let c = CssCode::four_qubit();
        assert_eq!((c.n, c.k), (4, 1));
        assert!(validate_code(&c).is_empty());
    }

    #[test]
    fn non_orthogonal_checks_are_listed() {
        let mut c = CssCode::four_qubit();
        c.z_checks[0] = alloc::vec![true, false, false, false];
        let v = validate_code(&c);
        assert!(v.contains(&CodeViolation::ChecksAnticommute { x_check: 0, z_check: 0 }));
        assert!(v.contains(&CodeViolation::LogicalXAnticommutesWithZCheck { logical: 0, z_check: 0 }));
    }

    #[test]
    fn repetition_code_is_valid() {
        let c = CssCode::repetition(3).unwrap();
        assert!(c.x_checks.is_empty());
        assert!(validate_code(&c).is_empty());
    }

    #[test]
    fn shape_errors() {
        let r = CssCode::new(3, alloc::vec![alloc::vec![true, true]], Vec::new(), Vec::new(), Vec::new());
        assert!(matches!(r, Err(Error::Dimension { .. })));
    }
}
