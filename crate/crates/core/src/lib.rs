//! Exact arithmetic for the conformal compactification tower.
//!
//! Starting from the complex plane, each compactification step adjoins two
//! directions with signature `(+1, -1)` and produces a matrix representation
//! of the Clifford algebra `R_{m,m+1}` over the bicomplex numbers. On every
//! level the crate computes metric and spin tensors, verifies the Lorentz and
//! conformal commutation relations exactly, and applies rotors and
//! fractional-linear (Vahlen) maps to paravectors in floating point.

pub mod bicomplex;
pub mod demos;
pub mod error;
pub mod lie;
pub mod matrix;
pub mod moebius;
pub mod tensors;
pub mod tower;
pub mod verify;

pub use bicomplex::{int, null_units, rat, Bicomplex, BicomplexF, Rational};
pub use error::{Error, Result};
pub use lie::{ConformalGenerators, Failure, VerificationReport};
pub use matrix::{BicMatrix, BicMatrixF};
pub use tensors::{
    metric, spin_ops, spin_tensor, MetricTable, SpinTable, Unit, UnitWord, Vocabulary,
};
pub use tower::{AlgebraLevel, Paravector, ParavectorF};
