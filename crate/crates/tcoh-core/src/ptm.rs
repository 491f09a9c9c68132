//! Single-qubit channel algebra in the Pauli-transfer-matrix picture.
//!
//! Rows and columns are indexed by (I, X, Y, Z) and
//! `[E]_{P,P'} = Tr[P E(P')] / 2`, so composition is plain matrix product
//! with the inner channel on the right.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::frame::PauliFrame;
use crate::math;
use crate::{Error, Pauli, Result, Tolerances};

/// A 2×2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Mat2 {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Mat2 {
        Mat2::pauli(Pauli::I)
    }

    pub fn zero() -> Mat2 {
        let z = C64::new(0.0, 0.0);
        Mat2::new(z, z, z, z)
    }

    pub fn pauli(p: Pauli) -> Mat2 {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match p {
            Pauli::I => Mat2::new(l, o, o, l),
            Pauli::X => Mat2::new(o, l, l, o),
            Pauli::Y => Mat2::new(o, -i, i, o),
            Pauli::Z => Mat2::new(l, o, o, -l),
        }
    }

    pub fn hadamard() -> Mat2 {
        let s = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        Mat2::new(s, s, s, -s)
    }

    /// Builds a matrix from nested rows, checking the shape.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Mat2> {
        if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
            let found = format!(
                "{} rows of lengths {:?}",
                rows.len(),
                rows.iter().map(|r| r.len()).collect::<Vec<_>>()
            );
            return Err(Error::Dimension { expected: "2x2".to_string(), found });
        }
        Ok(Mat2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1]))
    }

    pub fn adjoint(&self) -> Mat2 {
        let m = &self.0;
        Mat2::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        let m = &self.0;
        Mat2::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut d: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                d = d.max(math::cabs(self.0[r][c] - other.0[r][c]));
            }
        }
        d
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self.0;
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v += rhs.0[r][c];
            }
        }
        Mat2(out)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + rhs.scale(C64::new(-1.0, 0.0))
    }
}

/// A weighted list of Kraus operators acting as `ρ ↦ Σ w_k E_k ρ E_k†`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausSet {
    ops: Vec<Mat2>,
    weights: Vec<f64>,
}

impl KrausSet {
    /// A trace-preserving channel with unit weights. Completeness is checked at
    /// the default tolerance.
    pub fn new(ops: Vec<Mat2>) -> Result<KrausSet> {
        let weights = alloc::vec![1.0; ops.len()];
        KrausSet::weighted(ops, weights)
    }

    /// A trace-preserving channel with explicit nonnegative weights.
    pub fn weighted(ops: Vec<Mat2>, weights: Vec<f64>) -> Result<KrausSet> {
        let k = KrausSet::subnormalized(ops, weights)?;
        k.check_complete(Tolerances::default().completeness)?;
        Ok(k)
    }

    /// A possibly trace-decreasing map; completeness is not checked.
    pub fn subnormalized(ops: Vec<Mat2>, weights: Vec<f64>) -> Result<KrausSet> {
        if ops.len() != weights.len() {
            return Err(Error::Dimension {
                expected: format!("{} weights", ops.len()),
                found: format!("{} weights", weights.len()),
            });
        }
        if ops.is_empty() {
            return Err(Error::Domain("a Kraus set needs at least one operator".to_string()));
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
            return Err(Error::Domain(format!("Kraus weight {w} is not a nonnegative number")));
        }
        Ok(KrausSet { ops, weights })
    }

    pub fn unitary(u: Mat2) -> Result<KrausSet> {
        KrausSet::new(alloc::vec![u])
    }

    pub fn ops(&self) -> &[Mat2] {
        &self.ops
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Max entry of `Σ w E†E − I`.
    pub fn completeness_residue(&self) -> f64 {
        let mut acc = Mat2::zero();
        for (e, w) in self.ops.iter().zip(&self.weights) {
            acc = acc + (e.adjoint() * *e).scale(C64::new(*w, 0.0));
        }
        acc.max_abs_diff(&Mat2::identity())
    }

    pub fn check_complete(&self, tol: f64) -> Result<()> {
        let residue = self.completeness_residue();
        if residue > tol {
            return Err(Error::NumericConsistency {
                what: "Kraus completeness".to_string(),
                residue,
                tol,
            });
        }
        Ok(())
    }
}

/// A 4×4 real matrix in the Pauli basis. Used for channels and for the signed
/// combinations of channels that appear in the chain recursion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ptm(pub [[f64; 4]; 4]);

impl Ptm {
    pub fn identity() -> Ptm {
        Ptm::diag([1.0; 4])
    }

    pub fn zero() -> Ptm {
        Ptm([[0.0; 4]; 4])
    }

    pub fn diag(d: [f64; 4]) -> Ptm {
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            m[i][i] = d[i];
        }
        Ptm(m)
    }

    pub fn get(&self, row: Pauli, col: Pauli) -> f64 {
        self.0[row.index()][col.index()]
    }

    pub fn set(&mut self, row: Pauli, col: Pauli, v: f64) {
        self.0[row.index()][col.index()] = v;
    }

    pub fn diagonal(&self) -> [f64; 4] {
        [self.0[0][0], self.0[1][1], self.0[2][2], self.0[3][3]]
    }

    pub fn transpose(&self) -> Ptm {
        let mut m = [[0.0; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = self.0[c][r];
            }
        }
        Ptm(m)
    }

    pub fn scale(&self, s: f64) -> Ptm {
        let mut m = self.0;
        m.iter_mut().flatten().for_each(|v| *v *= s);
        Ptm(m)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |a, v| a.max(math::abs(*v)))
    }

    pub fn max_abs_diff(&self, other: &Ptm) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest off-diagonal magnitude.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut d: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                if r != c {
                    d = d.max(math::abs(self.0[r][c]));
                }
            }
        }
        d
    }

    pub fn is_pauli(&self, tol: f64) -> bool {
        self.max_off_diagonal() < tol
    }

    pub fn approx_eq(&self, other: &Ptm, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }
}

impl Mul for Ptm {
    type Output = Ptm;
    fn mul(self, rhs: Ptm) -> Ptm {
        let mut m = [[0.0; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                let mut s = 0.0;
                for k in 0..4 {
                    s += self.0[r][k] * rhs.0[k][c];
                }
                *v = s;
            }
        }
        Ptm(m)
    }
}

impl Add for Ptm {
    type Output = Ptm;
    fn add(self, rhs: Ptm) -> Ptm {
        let mut m = self.0;
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v += rhs.0[r][c];
            }
        }
        Ptm(m)
    }
}

impl Sub for Ptm {
    type Output = Ptm;
    fn sub(self, rhs: Ptm) -> Ptm {
        self + rhs.scale(-1.0)
    }
}

/// The PTM of a Kraus set, with the default imaginary-residue tolerance.
pub fn ptm_from_kraus(k: &KrausSet) -> Result<Ptm> {
    ptm_from_kraus_tol(k, Tolerances::default().imaginary)
}

pub fn ptm_from_kraus_tol(k: &KrausSet, imag_tol: f64) -> Result<Ptm> {
    let mut out = Ptm::zero();
    let mut worst_imag: f64 = 0.0;
    for p in Pauli::ALL {
        let pm = Mat2::pauli(p);
        for q in Pauli::ALL {
            let qm = Mat2::pauli(q);
            let mut acc = C64::new(0.0, 0.0);
            for (e, w) in k.ops.iter().zip(&k.weights) {
                acc += (pm * *e * qm * e.adjoint()).trace() * *w;
            }
            acc *= 0.5;
            worst_imag = worst_imag.max(math::abs(acc.im));
            out.set(p, q, acc.re);
        }
    }
    if worst_imag >= imag_tol {
        return Err(Error::NumericConsistency {
            what: "PTM imaginary part".to_string(),
            residue: worst_imag,
            tol: imag_tol,
        });
    }
    Ok(out)
}

/// `outer ∘ inner`: the inner channel acts first.
pub fn compose(outer: &Ptm, inner: &Ptm) -> Ptm {
    *outer * *inner
}

/// Projects onto the diagonal. Agrees with [`pauli_twirl_explicit`].
pub fn pauli_twirl(e: &Ptm) -> Ptm {
    Ptm::diag(e.diagonal())
}

/// `(1/4) Σ_P 𝒫 e 𝒫`, computed literally.
pub fn pauli_twirl_explicit(e: &Ptm) -> Ptm {
    let mut acc = Ptm::zero();
    for p in Pauli::ALL {
        let pp = pauli_ptm(p);
        acc = acc + pp * *e * pp;
    }
    acc.scale(0.25)
}

/// PTM of conjugation by a Pauli: `diag(±1)` with −1 where the Paulis anticommute.
pub fn pauli_ptm(p: Pauli) -> Ptm {
    let mut d = [1.0; 4];
    for q in Pauli::ALL {
        if !p.commutes_with(q) {
            d[q.index()] = -1.0;
        }
    }
    Ptm::diag(d)
}

/// PTM of conjugation by the Hadamard gate.
pub fn hadamard_ptm() -> Ptm {
    let mut m = Ptm::zero();
    m.set(Pauli::I, Pauli::I, 1.0);
    m.set(Pauli::X, Pauli::Z, 1.0);
    m.set(Pauli::Z, Pauli::X, 1.0);
    m.set(Pauli::Y, Pauli::Y, -1.0);
    m
}

/// The four coherence parts of a PTM, keyed by the Pauli that relates each
/// entry's row and column index.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherenceParts {
    pub part_i: Ptm,
    pub part_x: Ptm,
    pub part_y: Ptm,
    pub part_z: Ptm,
}

impl CoherenceParts {
    pub fn part(&self, p: Pauli) -> &Ptm {
        match p {
            Pauli::I => &self.part_i,
            Pauli::X => &self.part_x,
            Pauli::Y => &self.part_y,
            Pauli::Z => &self.part_z,
        }
    }

    pub fn sum(&self) -> Ptm {
        self.part_i + self.part_x + self.part_y + self.part_z
    }
}

pub fn coherence_decompose(e: &Ptm) -> CoherenceParts {
    let mut parts = [Ptm::zero(); 4];
    for r in Pauli::ALL {
        for c in Pauli::ALL {
            parts[r.times(c).index()].set(r, c, e.get(r, c));
        }
    }
    CoherenceParts { part_i: parts[0], part_x: parts[1], part_y: parts[2], part_z: parts[3] }
}

/// `f⁻¹ ∘ e ∘ f`.
pub fn conjugate(e: &Ptm, f: PauliFrame) -> Ptm {
    let fp = f.ptm();
    fp.transpose() * *e * fp
}

/// Average infidelity `1/2 − (e_XX + e_YY + e_ZZ)/6`.
pub fn average_infidelity(e: &Ptm) -> f64 {
    infidelity_from_diagonal(e.get(Pauli::X, Pauli::X), e.get(Pauli::Y, Pauli::Y), e.get(Pauli::Z, Pauli::Z))
}

pub fn infidelity_from_diagonal(xx: f64, yy: f64, zz: f64) -> f64 {
    0.5 - (xx + yy + zz) / 6.0
}

/// True when the only coherence couples Paulis differing by Z and `(Z,Z) = 1`.
pub fn is_pure_z_coherent(e: &Ptm, tol: f64) -> bool {
    let parts = coherence_decompose(e);
    parts.part_x.max_abs() < tol
        && parts.part_y.max_abs() < tol
        && math::abs(e.get(Pauli::Z, Pauli::Z) - 1.0) < tol
}

/// `e^{iθ n̂·σ} = cos θ I + i sin θ n̂·σ`. The axis need not be normalized.
pub fn rotation_unitary(axis: [f64; 3], theta: f64) -> Result<Mat2> {
    let norm = math::sqrt(axis.iter().map(|a| a * a).sum::<f64>());
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::Domain(format!("rotation axis {axis:?} has no direction")));
    }
    let v = [axis[0] / norm * theta, axis[1] / norm * theta, axis[2] / norm * theta];
    Ok(rotation_from_vector(v))
}

/// `e^{iθ·σ}` for an angle vector `θ` (radians).
pub fn rotation_from_vector(theta: [f64; 3]) -> Mat2 {
    let angle = math::sqrt(theta.iter().map(|a| a * a).sum::<f64>());
    let c = C64::new(math::cos(angle), 0.0);
    let mut u = Mat2::identity().scale(c);
    if angle > 0.0 {
        let s = math::sin(angle) / angle;
        for (k, p) in [Pauli::X, Pauli::Y, Pauli::Z].into_iter().enumerate() {
            u = u + Mat2::pauli(p).scale(C64::new(0.0, s * theta[k]));
        }
    }
    u
}

pub fn rotation_ptm(theta: [f64; 3]) -> Ptm {
    // A unitary built from cos/sin is complete to rounding.
    let k = KrausSet { ops: alloc::vec![rotation_from_vector(theta)], weights: alloc::vec![1.0] };
    ptm_from_kraus(&k).expect("rotation PTM is real")
}

/// PTM of `e^{iθZ}`.
pub fn rot_z_ptm(theta: f64) -> Ptm {
    rotation_ptm([0.0, 0.0, theta])
}

/// `ρ ↦ (1−px−py−pz)ρ + px XρX + py YρY + pz ZρZ`.
pub fn pauli_channel(px: f64, py: f64, pz: f64) -> Result<KrausSet> {
    let pi = 1.0 - px - py - pz;
    for (name, p) in [("px", px), ("py", py), ("pz", pz), ("1-px-py-pz", pi)] {
        if !(-1e-15..=1.0 + 1e-15).contains(&p) {
            return Err(Error::Domain(format!("Pauli probability {name} = {p} outside [0, 1]")));
        }
    }
    let ops = Pauli::ALL.into_iter().map(Mat2::pauli).collect();
    KrausSet::weighted(ops, alloc::vec![pi.max(0.0), px.max(0.0), py.max(0.0), pz.max(0.0)])
}

pub fn pauli_channel_ptm(px: f64, py: f64, pz: f64) -> Result<Ptm> {
    ptm_from_kraus(&pauli_channel(px, py, pz)?)
}

/// Amplitude damping towards |0⟩ with decay probability `gamma`.
pub fn amplitude_damping(gamma: f64) -> Result<KrausSet> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::Domain(format!("damping probability {gamma} outside [0, 1]")));
    }
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let k0 = Mat2::new(l, o, o, C64::new(math::sqrt(1.0 - gamma), 0.0));
    let k1 = Mat2::new(o, C64::new(math::sqrt(gamma), 0.0), o, o);
    KrausSet::new(alloc::vec![k0, k1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_4;

    const TOL: f64 = 1e-12;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Independent oracle: the Bloch-rotation matrix `R` with
    /// `U σ_j U† = Σ_i R_ij σ_i` for `U = e^{iθ n·σ}` is the rotation by `−2θ`
    /// about `n` (Rodrigues formula).
    fn rodrigues(theta: [f64; 3]) -> Ptm {
        let a = (theta.iter().map(|x| x * x).sum::<f64>()).sqrt();
        let n = if a > 0.0 { [theta[0] / a, theta[1] / a, theta[2] / a] } else { [0.0, 0.0, 1.0] };
        let phi = -2.0 * a;
        let (s, co) = (phi.sin(), phi.cos());
        let mut m = Ptm::identity();
        let k = [[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                let kk: f64 = (0..3).map(|l| k[i][l] * k[l][j]).sum();
                let id = if i == j { 1.0 } else { 0.0 };
                m.0[i + 1][j + 1] = id + s * k[i][j] + (1.0 - co) * kk;
            }
        }
        m
    }

    #[test]
    fn identity_kraus_gives_identity() {
        let k = KrausSet::new(alloc::vec![Mat2::identity()]).unwrap();
        assert!(ptm_from_kraus(&k).unwrap().approx_eq(&Ptm::identity(), TOL));
    }

    #[test]
    fn quarter_turn_z_rotation() {
        let e = rot_z_ptm(FRAC_PI_4);
        assert!((e.get(Pauli::X, Pauli::X)).abs() < TOL);
        assert!((e.get(Pauli::Y, Pauli::Y)).abs() < TOL);
        assert!((e.get(Pauli::Y, Pauli::X) + 1.0).abs() < TOL);
        assert!((e.get(Pauli::X, Pauli::Y) - 1.0).abs() < TOL);
        assert!((e.get(Pauli::I, Pauli::I) - 1.0).abs() < TOL);
        assert!((e.get(Pauli::Z, Pauli::Z) - 1.0).abs() < TOL);
    }

    #[test]
    fn rotation_matches_rodrigues_oracle() {
        for theta in [[0.3, -0.2, 0.7], [0.0, 0.0, 0.1], [1.1, 0.4, -0.9]] {
            assert!(rotation_ptm(theta).approx_eq(&rodrigues(theta), 1e-13));
        }
    }

    #[test]
    fn z_flip_channel() {
        let e = pauli_channel_ptm(0.0, 0.0, 0.1).unwrap();
        assert!(e.approx_eq(&Ptm::diag([1.0, 0.8, 0.8, 1.0]), TOL));
    }

    #[test]
    fn wrong_shape_is_a_dimension_error() {
        let rows = alloc::vec![alloc::vec![c(1.0, 0.0)], alloc::vec![c(0.0, 0.0), c(1.0, 0.0)]];
        assert!(matches!(Mat2::from_rows(&rows), Err(Error::Dimension { .. })));
    }

    #[test]
    fn incomplete_kraus_rejected_unless_subnormalized() {
        let half = Mat2::identity().scale(c(0.5, 0.0));
        assert!(KrausSet::new(alloc::vec![half]).is_err());
        let k = KrausSet::subnormalized(alloc::vec![half], alloc::vec![1.0]).unwrap();
        let e = ptm_from_kraus(&k).unwrap();
        assert!(e.approx_eq(&Ptm::identity().scale(0.25), TOL));
    }

    #[test]
    fn composition_examples() {
        let a = rotation_ptm([0.1, 0.2, 0.3]);
        assert!(compose(&Ptm::identity(), &a).approx_eq(&a, TOL));
        let z = pauli_ptm(Pauli::Z);
        assert!(compose(&z, &z).approx_eq(&Ptm::identity(), TOL));
        let zz = ptm_from_kraus(&KrausSet::unitary(Mat2::pauli(Pauli::Z)).unwrap()).unwrap();
        assert!(zz.approx_eq(&z, TOL));
        assert!(compose(&rot_z_ptm(0.3), &rot_z_ptm(0.45)).approx_eq(&rot_z_ptm(0.75), TOL));
    }

    #[test]
    fn twirl_examples() {
        let d = Ptm::diag([1.0, 0.3, -0.2, 0.5]);
        assert_eq!(pauli_twirl(&d), d);
        let t = 0.17;
        let tw = pauli_twirl(&rot_z_ptm(t));
        let c2 = (2.0 * t).cos();
        assert!(tw.approx_eq(&Ptm::diag([1.0, c2, c2, 1.0]), TOL));
        let p = t.sin().powi(2);
        assert!(tw.approx_eq(&pauli_channel_ptm(0.0, 0.0, p).unwrap(), TOL));
        let ad = ptm_from_kraus(&amplitude_damping(0.1).unwrap()).unwrap();
        let s = 0.9f64.sqrt();
        let want = Ptm::diag([1.0, s, s, 0.9]);
        assert!(pauli_twirl(&ad).approx_eq(&want, TOL));
        assert!(pauli_twirl_explicit(&ad).approx_eq(&want, 1e-14));
    }

    #[test]
    fn coherence_examples() {
        let p = coherence_decompose(&pauli_channel_ptm(0.1, 0.05, 0.2).unwrap());
        assert_eq!(p.part_x.max_abs() + p.part_y.max_abs() + p.part_z.max_abs(), 0.0);
        let p = coherence_decompose(&rot_z_ptm(0.2));
        assert!(p.part_z.max_abs() > 0.1);
        assert_eq!(p.part_x.max_abs() + p.part_y.max_abs(), 0.0);
    }

    #[test]
    fn conjugation_examples() {
        let e = rotation_ptm([0.3, 0.1, -0.2]);
        assert!(conjugate(&e, PauliFrame::IDENTITY).approx_eq(&e, TOL));
        let x = PauliFrame::new(false, Pauli::X);
        assert!(conjugate(&rot_z_ptm(0.21), x).approx_eq(&rot_z_ptm(-0.21), TOL));
        let h = PauliFrame::new(true, Pauli::I);
        let d = conjugate(&Ptm::diag([1.0, 0.2, 0.5, 0.7]), h);
        assert!(d.approx_eq(&Ptm::diag([1.0, 0.7, 0.5, 0.2]), TOL));
    }

    #[test]
    fn infidelity_examples() {
        assert_eq!(average_infidelity(&Ptm::identity()), 0.0);
        let p = 0.07;
        let e = pauli_channel_ptm(0.0, 0.0, p).unwrap();
        assert!((average_infidelity(&e) - 2.0 * p / 3.0).abs() < TOL);
        assert_eq!(average_infidelity(&Ptm::diag([1.0, 0.0, 0.0, 0.0])), 0.5);
    }

    #[test]
    fn purity_examples() {
        assert!(is_pure_z_coherent(&rot_z_ptm(0.3), 1e-10));
        assert!(!is_pure_z_coherent(&rotation_ptm([0.3, 0.0, 0.0]), 1e-10));
        assert!(is_pure_z_coherent(&pauli_channel_ptm(0.0, 0.0, 0.2).unwrap(), 1e-10));
        // A Z rotation followed by dephasing in X breaks (Z,Z) = 1.
        assert!(!is_pure_z_coherent(&pauli_channel_ptm(0.1, 0.0, 0.0).unwrap(), 1e-10));
    }
}
