//! Exact arithmetic substrate: big rationals, real quadratic towers, and
//! polynomials in the Hecke indeterminates.

pub mod algebraic;
pub mod symbolic;

pub use algebraic::{parse_rational, rat, squarefree_decompose, AlgebraicReal, Rational};
pub use symbolic::{Monomial, SymbolicValue, Var};
