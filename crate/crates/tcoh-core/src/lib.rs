//! Coherent single-qubit noise under repeated one-bit teleportation.
//!
//! The crate is `no_std` (with `alloc`) and covers:
//!
//! * [`ptm`]: Pauli-transfer-matrix algebra for single-qubit channels.
//! * [`chain`]: Pauli-frame bookkeeping and frame-averaged error channels of a
//!   teleportation chain, plus enumeration and Monte Carlo oracles.
//! * [`bounds`]: per-step and two-step factor intervals for the diagonal of the
//!   averaged channel, the linear-growth bound and a small-angle estimator.
//! * [`foliation`]: CSS codes, pure Z-coherent circuit noise on a foliated code
//!   and its exact conversion into per-location Pauli channels.
//! * [`densesim`]: a dense density-operator simulator for small foliated codes
//!   that checks the conversion group by group.
//! * [`threshold`]: closed-form threshold arithmetic.
//!
//! Enable the `std` feature for `std::error::Error` on [`Error`].
#![cfg_attr(all(not(feature = "std"), not(test)), no_std)]

extern crate alloc;

mod error;
mod math;

pub mod bounds;
pub mod chain;
pub mod densesim;
pub mod foliation;
pub mod frame;
pub mod pauli;
pub mod ptm;
pub mod threshold;
pub mod tolerance;

pub use error::{Error, Result};
pub use frame::PauliFrame;
pub use num_complex::Complex64;
pub use pauli::Pauli;
pub use ptm::{KrausSet, Mat2, Ptm};
pub use tolerance::Tolerances;
