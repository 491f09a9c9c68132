use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::ptm::Mat2;
use crate::{math, Error, Result};

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 12;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Dense `2^q × 2^q` operator, row-major. Qubit `k` is bit `k` of the index.
///
/// The simulator also evolves non-positive operators (logical Paulis times the
/// code projector) through the same linear maps, so positivity is not assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    q: usize,
    data: Vec<C64>,
}

pub(crate) fn parity(x: usize) -> bool {
    x.count_ones() % 2 == 1
}

impl DensityMatrix {
    pub fn zeros(q: usize) -> Result<DensityMatrix> {
        if q > MAX_QUBITS {
            return Err(Error::ResourceLimit { what: "simulated qubits".into(), requested: q as u64, cap: MAX_QUBITS as u64 });
        }
        Ok(DensityMatrix { q, data: alloc::vec![ZERO; 1 << (2 * q)] })
    }

    pub fn identity(q: usize) -> Result<DensityMatrix> {
        let mut m = DensityMatrix::zeros(q)?;
        let d = m.dim();
        for i in 0..d {
            m.data[i * d + i] = C64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// `|b⟩⟨b|` for a computational basis state.
    pub fn basis(q: usize, b: usize) -> Result<DensityMatrix> {
        let mut m = DensityMatrix::zeros(q)?;
        let d = m.dim();
        m.data[b * d + b] = C64::new(1.0, 0.0);
        Ok(m)
    }

    pub fn from_data(q: usize, data: Vec<C64>) -> Result<DensityMatrix> {
        if q > MAX_QUBITS || data.len() != 1 << (2 * q) {
            return Err(Error::Dimension { expected: format!("{} entries", 1u64 << (2 * q.min(31))), found: format!("{}", data.len()) });
        }
        Ok(DensityMatrix { q, data })
    }

    pub fn qubits(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        1 << self.q
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim() + j]
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&mut self, s: f64) {
        for z in &mut self.data {
            *z *= s;
        }
    }

    pub fn add_assign(&mut self, other: &DensityMatrix) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| math::cabs(*a - *b)).fold(0.0, f64::max)
    }

    pub fn hermiticity_residue(&self) -> f64 {
        let d = self.dim();
        let mut r: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                r = r.max(math::cabs(self.get(i, j) - self.get(j, i).conj()));
            }
        }
        r
    }

    /// `ρ ↦ U ρ U†` on qubit `k`.
    pub fn apply_1q(&mut self, k: usize, u: &Mat2) {
        let d = self.dim();
        let bit = 1 << k;
        let u = u.0;
        for i0 in (0..d).filter(|i| i & bit == 0) {
            let i1 = i0 | bit;
            for j in 0..d {
                let (a, b) = (self.data[i0 * d + j], self.data[i1 * d + j]);
                self.data[i0 * d + j] = u[0][0] * a + u[0][1] * b;
                self.data[i1 * d + j] = u[1][0] * a + u[1][1] * b;
            }
        }
        for i in 0..d {
            let row = &mut self.data[i * d..(i + 1) * d];
            for j0 in (0..d).filter(|j| j & bit == 0) {
                let j1 = j0 | bit;
                let (a, b) = (row[j0], row[j1]);
                row[j0] = a * u[0][0].conj() + b * u[0][1].conj();
                row[j1] = a * u[1][0].conj() + b * u[1][1].conj();
            }
        }
    }

    /// Channel `ρ ↦ Σ c K ρ K†` with every `K = αI + βZ` diagonal on qubit `k`;
    /// `table[a][b] = Σ c K(a) conj(K(b))`.
    pub fn apply_diagonal_channel(&mut self, k: usize, table: &[[C64; 2]; 2]) {
        let d = self.dim();
        for i in 0..d {
            let a = (i >> k) & 1;
            for j in 0..d {
                self.data[i * d + j] *= table[a][(j >> k) & 1];
            }
        }
    }

    /// Controlled-Z between qubits `a` and `b`.
    pub fn cz(&mut self, a: usize, b: usize) {
        let d = self.dim();
        let on = |i: usize| (i >> a) & (i >> b) & 1 == 1;
        for i in 0..d {
            for j in 0..d {
                if on(i) != on(j) {
                    self.data[i * d + j] = -self.data[i * d + j];
                }
            }
        }
    }

    /// `ρ ↦ P ρ P` for `P = X^x Z^z` (phases cancel).
    pub fn conjugate_pauli(&mut self, x: usize, z: usize) {
        let d = self.dim();
        let old = self.data.clone();
        for i in 0..d {
            for j in 0..d {
                let v = old[(i ^ x) * d + (j ^ x)];
                let flip = parity((i ^ x) & z) != parity((j ^ x) & z);
                self.data[i * d + j] = if flip { -v } else { v };
            }
        }
    }

    /// `ρ ↦ P ρ` for the Hermitian Pauli `i^{|x∧z|} X^x Z^z`.
    pub fn left_mul_pauli(&mut self, x: usize, z: usize) {
        self.left_mul_pauli_phased(x, z, hermitian_phase(x, z));
    }

    pub(crate) fn left_mul_pauli_phased(&mut self, x: usize, z: usize, ph: C64) {
        let d = self.dim();
        let old = self.data.clone();
        for i in 0..d {
            let src = i ^ x;
            let s = if parity(src & z) { -ph } else { ph };
            for j in 0..d {
                self.data[i * d + j] = s * old[src * d + j];
            }
        }
    }

    /// `Tr[P ρ]` for the Hermitian Pauli `i^{|x∧z|} X^x Z^z`.
    pub fn pauli_expectation(&self, x: usize, z: usize) -> C64 {
        self.pauli_expectation_phased(x, z, hermitian_phase(x, z))
    }

    pub(crate) fn pauli_expectation_phased(&self, x: usize, z: usize, ph: C64) -> C64 {
        let d = self.dim();
        (0..d)
            .map(|i| {
                // ⟨i|P|i^x⟩ = phase · (−1)^{z·(i^x)}
                let src = i ^ x;
                let s = if parity(src & z) { -ph } else { ph };
                s * self.data[src * d + i]
            })
            .sum()
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &DensityMatrix) -> DensityMatrix {
        let d = self.dim();
        let mut data = alloc::vec![ZERO; d * d];
        for i in 0..d {
            for l in 0..d {
                let a = self.data[i * d + l];
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    data[i * d + j] += a * other.data[l * d + j];
                }
            }
        }
        DensityMatrix { q: self.q, data }
    }

    pub fn adjoint(&self) -> DensityMatrix {
        let d = self.dim();
        let mut data = alloc::vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        DensityMatrix { q: self.q, data }
    }

    /// Tensor a fresh `|+⟩` onto a new highest qubit.
    pub fn push_plus(&self) -> Result<DensityMatrix> {
        let mut out = DensityMatrix::zeros(self.q + 1)?;
        let (d, d2) = (self.dim(), out.dim());
        for a in 0..2 {
            for b in 0..2 {
                for i in 0..d {
                    for j in 0..d {
                        out.data[(a * d + i) * d2 + b * d + j] = self.data[i * d + j] * 0.5;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Projects the highest qubit onto `X = (−1)^s` and discards it. The
    /// result is not renormalized.
    pub fn measure_top_x(&self, s: bool) -> DensityMatrix {
        let q = self.q - 1;
        let d = 1 << q;
        let d2 = self.dim();
        let mut data = alloc::vec![ZERO; d * d];
        for a in 0..2 {
            for b in 0..2 {
                let sign = if s && (a + b) % 2 == 1 { -0.5 } else { 0.5 };
                for i in 0..d {
                    for j in 0..d {
                        data[i * d + j] += self.data[(a * d + i) * d2 + b * d + j] * sign;
                    }
                }
            }
        }
        DensityMatrix { q, data }
    }
}

fn hermitian_phase(x: usize, z: usize) -> C64 {
    match (x & z).count_ones() % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// `table[a][b] = Σ c K(a) conj(K(b))` with `K(a) = α + (−1)^a β`.
pub(crate) fn diagonal_table(terms: &[crate::foliation::PureZTerm]) -> [[C64; 2]; 2] {
    let mut t = [[ZERO; 2]; 2];
    for term in terms {
        let k = [term.alpha + term.beta, term.alpha - term.beta];
        for a in 0..2 {
            for b in 0..2 {
                t[a][b] += k[a] * k[b].conj() * term.c;
            }
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Pauli;

    #[test]
    fn single_qubit_gates() {
        let mut r = DensityMatrix::basis(2, 0).unwrap();
        r.apply_1q(1, &Mat2::hadamard());
        assert!((r.get(2, 0).re - 0.5).abs() < 1e-15 && (r.get(2, 2).re - 0.5).abs() < 1e-15);
        assert!((r.pauli_expectation(2, 0).re - 1.0).abs() < 1e-15);
        assert!(r.pauli_expectation(0, 2).norm_sqr() < 1e-30);
        r.apply_1q(1, &Mat2::pauli(Pauli::Z));
        assert!((r.pauli_expectation(2, 0).re + 1.0).abs() < 1e-15);
        assert!(r.hermiticity_residue() < 1e-15);
    }

    #[test]
    fn pauli_helpers_agree() {
        // |+⟩|0⟩ after CZ is still a product state; the Y expectation of |+i⟩ is 1
        let mut r = DensityMatrix::basis(1, 0).unwrap();
        r.apply_1q(0, &Mat2::hadamard());
        r.apply_1q(0, &Mat2::new(C64::new(1.0, 0.0), ZERO, ZERO, C64::new(0.0, 1.0)));
        assert!((r.pauli_expectation(1, 1).re - 1.0).abs() < 1e-15);
        let mut l = r.clone();
        l.left_mul_pauli(1, 1);
        assert!((l.trace().re - 1.0).abs() < 1e-15);
        let mut c = r.clone();
        c.conjugate_pauli(1, 0);
        assert!((c.pauli_expectation(1, 1).re + 1.0).abs() < 1e-15);
    }

    #[test]
    fn plus_ancilla_and_measurement() {
        let r = DensityMatrix::basis(1, 1).unwrap();
        let mut big = r.push_plus().unwrap();
        assert_eq!(big.qubits(), 2);
        big.cz(0, 1);
        // control in |1⟩ turns the ancilla into |−⟩
        assert!(big.measure_top_x(false).trace().norm_sqr() < 1e-30);
        assert!((big.measure_top_x(true).trace().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn register_cap() {
        assert!(matches!(DensityMatrix::zeros(13), Err(Error::ResourceLimit { .. })));
    }
}
