//! Exact verification library for lifts of Maass cusp forms for Γ₀(2) to
//! automorphic forms on GL(2) over the discriminant-2 definite quaternion
//! algebra: Hurwitz-order arithmetic, the dual lattice S, lift coefficients,
//! Hecke operator actions, theta series, and Satake-parameter analysis, with
//! brute-force oracles at desk scale.

pub mod error;
pub mod exact;
pub mod hecke;
pub mod lattice;
pub mod lift;
pub mod quat;
pub mod report;
pub mod satake;
pub mod theta;
pub mod verify;

pub use exact::{AlgebraicReal, Rational, SymbolicValue, Var};
pub use quat::{Quat, QuatRat};
