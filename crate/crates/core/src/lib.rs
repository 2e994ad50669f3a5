//! Exact symbolic calculus in two noncommuting quaternionic variables.
//!
//! Polynomials live in the free algebra over the quaternions generated by
//! `z` and `w` (plus increment letters `h1`, `h2` and central time symbols).
//! On top of that the crate provides slot-insertion derivatives, divergence
//! and rotor with their left-linearity tests, bidegree-full analysis, shear
//! and overshear vector fields with their decompositions, formal flow jets,
//! and Dieudonné determinants of 2x2 quaternionic matrices.

pub mod bidegree;
pub mod calc;
pub mod error;
pub mod expr;
pub mod flow;
pub mod jac;
pub mod linalg;
pub mod mat2;
pub mod ncalg;
pub mod quat;
pub mod sample;
pub mod vfield;

pub use error::{Error, Result};
pub use ncalg::{Letter, NCPoly, Unit, VectorField, Word};
pub use quat::{Quaternion, QuaternionF, Rational};
