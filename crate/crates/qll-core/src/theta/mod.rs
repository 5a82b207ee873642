//! Theta series machinery: harmonic eigenbases, exact theta coefficients,
//! numeric transformation checks, the formal Dirichlet identity, K-Bessel
//! evaluation, and numeric evaluation of the lifted form.

pub mod cyclotomic;
pub mod harmonic;
pub mod series;
pub mod dirichlet;
pub mod bessel;
pub mod evaluate;

pub use cyclotomic::Cyclotomic;
pub use harmonic::{harmonic_basis, HarmonicPolynomial};
