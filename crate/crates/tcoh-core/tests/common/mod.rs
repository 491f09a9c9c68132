#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use tcoh_core::ptm::{amplitude_damping, compose, pauli_channel_ptm, ptm_from_kraus, rotation_ptm, KrausSet, Mat2};
use tcoh_core::{Complex64, Ptm};

/// Kraus set from a random 4×2 matrix made an isometry, split into two
/// 2×2 blocks. Covers weighted rank-2 channels of every kind.
pub fn isometry_channel(raw: [f64; 16]) -> Option<KrausSet> {
    let z = |i: usize| Complex64::new(raw[2 * i], raw[2 * i + 1]);
    let mut a: Vec<Complex64> = (0..4).map(z).collect();
    let mut b: Vec<Complex64> = (4..8).map(z).collect();
    let norm = |v: &[Complex64]| v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let na = norm(&a);
    if na < 1e-3 {
        return None;
    }
    a.iter_mut().for_each(|x| *x /= na);
    let dot: Complex64 = a.iter().zip(&b).map(|(x, y)| x.conj() * y).sum();
    b.iter_mut().zip(&a).for_each(|(y, x)| *y -= dot * x);
    let nb = norm(&b);
    if nb < 1e-3 {
        return None;
    }
    b.iter_mut().for_each(|y| *y /= nb);
    // rows 0,1 of [a b] are the first Kraus operator, rows 2,3 the second
    let k0 = Mat2::new(a[0], b[0], a[1], b[1]);
    let k1 = Mat2::new(a[2], b[2], a[3], b[3]);
    KrausSet::new(vec![k0, k1]).ok()
}

pub fn arb_kraus() -> impl Strategy<Value = KrausSet> {
    prop::array::uniform16(-1.0f64..1.0).prop_filter_map("degenerate isometry", isometry_channel)
}

pub fn arb_channel() -> impl Strategy<Value = Ptm> {
    arb_kraus().prop_map(|k| ptm_from_kraus(&k).unwrap())
}

/// Parameters of a weak channel: damping ∘ Pauli ∘ rotation.
#[derive(Clone, Copy, Debug)]
pub struct WeakParams {
    pub theta: [f64; 3],
    pub pauli: [f64; 3],
    pub damping: f64,
}

impl WeakParams {
    pub fn scaled(&self, s: f64) -> Ptm {
        let th = self.theta.map(|x| x * s);
        let p = self.pauli.map(|x| x * s);
        let ad = ptm_from_kraus(&amplitude_damping(self.damping * s).unwrap()).unwrap();
        compose(&ad, &compose(&pauli_channel_ptm(p[0], p[1], p[2]).unwrap(), &rotation_ptm(th)))
    }

    pub fn ptm(&self) -> Ptm {
        self.scaled(1.0)
    }

    pub fn random<R: Rng>(rng: &mut R, angle: f64, prob: f64) -> WeakParams {
        let mut u = |s: f64| rng.gen_range(-s..=s);
        let theta = [u(angle), u(angle), u(angle)];
        let pauli = [u(prob).abs(), u(prob).abs(), u(prob).abs()];
        let damping = u(prob).abs();
        WeakParams { theta, pauli, damping }
    }
}

pub fn arb_weak(angle: f64, prob: f64) -> impl Strategy<Value = WeakParams> {
    (
        prop::array::uniform3(-angle..=angle),
        prop::array::uniform3(0.0..=prob),
        0.0..=prob,
    )
        .prop_map(|(theta, pauli, damping)| WeakParams { theta, pauli, damping })
}

pub fn axis_312(theta: f64) -> [f64; 3] {
    let n = 14f64.sqrt();
    [3.0 / n * theta, 1.0 / n * theta, 2.0 / n * theta]
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
